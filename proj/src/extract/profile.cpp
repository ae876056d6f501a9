#include "talentrank/extract/profile.hpp"

#include <array>

#include "talentrank/common/error.hpp"
#include "talentrank/common/text.hpp"

namespace talentrank::extract {

std::string employer_key(std::string_view employer) {
  static constexpr std::array<std::string_view, 5> kLegalSuffixes = {"inc", "llc", "gmbh", "ltd",
                                                                     "corp"};
  auto words = text::split_whitespace(text::normalize_key(employer));
  while (words.size() > 1) {
    bool stripped = false;
    for (auto suffix : kLegalSuffixes) {
      if (words.back() == suffix) {
        words.pop_back();
        stripped = true;
        break;
      }
    }
    if (!stripped) break;
  }
  return text::join(words, " ");
}

std::string candidate_id_for(std::string_view source_id) { return "c" + hex64(fnv1a64(source_id)); }

namespace {

std::string blocks_text(const BlockIndices& blocks) {
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(blocks[i]);
  }
  return out.empty() ? "-" : out;
}

std::string opt(const std::optional<std::string>& v) { return v ? *v : "-"; }

std::string field_line(std::string_view key, const std::optional<TextField>& f) {
  std::string line(key);
  line += '\t';
  line += f ? f->value + "\t" + blocks_text(f->source_blocks) : std::string("-\t-");
  return line + '\n';
}

void write_blocks(ByteWriter& w, const BlockIndices& b) {
  w.u64(b.size());
  for (auto i : b) w.u64(i);
}

BlockIndices read_blocks(ByteReader& r) {
  BlockIndices b(r.count(8));
  for (auto& i : b) i = r.u64();
  return b;
}

void write_date(ByteWriter& w, const Date& d) {
  w.i32(d.year);
  w.u8(static_cast<std::uint8_t>(d.month));
  w.u8(static_cast<std::uint8_t>(d.day));
}

Date read_date(ByteReader& r) {
  auto at = r.offset();
  Date d;
  d.year = r.i32();
  d.month = r.u8();
  d.day = r.u8();
  if (!is_valid(d)) throw IntegrityError("invalid date", at);
  return d;
}

void write_span(ByteWriter& w, const DateSpan& s) {
  write_date(w, s.start);
  w.boolean(s.end.has_value());
  if (s.end) write_date(w, *s.end);
  write_date(w, s.resolved_end);
}

DateSpan read_span(ByteReader& r) {
  DateSpan s;
  s.start = read_date(r);
  if (r.boolean()) s.end = read_date(r);
  s.resolved_end = read_date(r);
  return s;
}

void write_opt_str(ByteWriter& w, const std::optional<std::string>& s) {
  w.boolean(s.has_value());
  if (s) w.str(*s);
}

std::optional<std::string> read_opt_str(ByteReader& r) {
  if (!r.boolean()) return std::nullopt;
  return r.str();
}

void write_field(ByteWriter& w, const std::optional<TextField>& f) {
  w.boolean(f.has_value());
  if (f) {
    w.str(f->value);
    write_blocks(w, f->source_blocks);
  }
}

std::optional<TextField> read_field(ByteReader& r) {
  if (!r.boolean()) return std::nullopt;
  TextField f;
  f.value = r.str();
  f.source_blocks = read_blocks(r);
  return f;
}

template <typename Enum>
Enum read_enum(ByteReader& r, std::size_t count) {
  auto at = r.offset();
  auto v = r.u8();
  if (v >= count) throw IntegrityError("enum value out of range", at);
  return static_cast<Enum>(v);
}

}  // namespace

std::string to_profile_text(const CandidateProfile& p) {
  std::string out;
  out += "candidate_id\t" + p.candidate_id + '\n';
  out += "source\t" + p.source_document + '\n';
  out += "reference_date\t" + format_iso(p.reference_date) + '\n';
  out += field_line("name", p.name);
  out += field_line("email", p.email);
  out += field_line("phone", p.phone);
  out += field_line("location", p.location);
  for (const auto& e : p.educations) {
    out += "education\t" + (e.institution.empty() ? "-" : e.institution) + '\t' +
           (e.institution_key.empty() ? "-" : e.institution_key) + '\t' +
           std::string(to_string(e.degree)) + '\t' +
           (e.degree_text.empty() ? "-" : e.degree_text) + '\t' + opt(e.field_of_study) + '\t' +
           (e.span ? render(*e.span) : "-") + '\t' + blocks_text(e.source_blocks) + '\n';
  }
  for (const auto& w : p.works) {
    out += "work\t" + w.employer_raw + '\t' + w.employer_key + '\t' + opt(w.title) + '\t' +
           render(w.span) + '\t' + std::to_string(months(w.span)) + '\t' +
           blocks_text(w.source_blocks) + '\n';
  }
  for (const auto& s : p.skills) {
    out += "skill\t" + s.raw + '\t' + s.token + '\t' + blocks_text(s.source_blocks) + '\n';
  }
  for (const auto& w : p.warnings) out += "warning\t" + w + '\n';
  return out;
}

void write_profile(ByteWriter& w, const CandidateProfile& p) {
  w.str(p.candidate_id);
  write_field(w, p.name);
  write_field(w, p.email);
  write_field(w, p.phone);
  write_field(w, p.location);
  w.u64(p.educations.size());
  for (const auto& e : p.educations) {
    w.str(e.institution);
    w.str(e.institution_key);
    w.u8(static_cast<std::uint8_t>(e.degree));
    w.str(e.degree_text);
    write_opt_str(w, e.field_of_study);
    w.boolean(e.span.has_value());
    if (e.span) write_span(w, *e.span);
    write_blocks(w, e.source_blocks);
  }
  w.u64(p.works.size());
  for (const auto& x : p.works) {
    w.str(x.employer_raw);
    w.str(x.employer_key);
    write_opt_str(w, x.title);
    write_span(w, x.span);
    write_blocks(w, x.source_blocks);
  }
  w.u64(p.skills.size());
  for (const auto& s : p.skills) {
    w.str(s.raw);
    w.str(s.token);
    write_blocks(w, s.source_blocks);
  }
  w.str(p.source_document);
  write_date(w, p.reference_date);
  w.u64(p.warnings.size());
  for (const auto& s : p.warnings) w.str(s);
}

CandidateProfile read_profile(ByteReader& r) {
  CandidateProfile p;
  p.candidate_id = r.str();
  p.name = read_field(r);
  p.email = read_field(r);
  p.phone = read_field(r);
  p.location = read_field(r);
  p.educations.resize(r.count(16));
  for (auto& e : p.educations) {
    e.institution = r.str();
    e.institution_key = r.str();
    e.degree = read_enum<DegreeLevel>(r, kAllDegreeLevels.size());
    e.degree_text = r.str();
    e.field_of_study = read_opt_str(r);
    if (r.boolean()) e.span = read_span(r);
    e.source_blocks = read_blocks(r);
  }
  p.works.resize(r.count(16));
  for (auto& x : p.works) {
    x.employer_raw = r.str();
    x.employer_key = r.str();
    x.title = read_opt_str(r);
    x.span = read_span(r);
    x.source_blocks = read_blocks(r);
  }
  p.skills.resize(r.count(16));
  for (auto& s : p.skills) {
    s.raw = r.str();
    s.token = r.str();
    s.source_blocks = read_blocks(r);
  }
  p.source_document = r.str();
  p.reference_date = read_date(r);
  p.warnings.resize(r.count(8));
  for (auto& s : p.warnings) s = r.str();
  return p;
}

}  // namespace talentrank::extract
