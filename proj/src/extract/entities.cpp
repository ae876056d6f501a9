#include "talentrank/extract/entities.hpp"

#include <algorithm>
#include <set>

#include "talentrank/common/error.hpp"
#include "talentrank/common/text.hpp"
#include "talentrank/extract/dates.hpp"
#include "talentrank/extract/degree.hpp"
#include "talentrank/skillspace/skill_token.hpp"

namespace talentrank::extract {

using ingest::LayoutDocument;
using ingest::Segment;

namespace {

constexpr std::size_t kMaxNameWords = 5;
constexpr std::size_t kMaxHeaderWords = 10;
constexpr std::size_t kMaxSkillWords = 5;
// Degree forms this short ("ma", "ms") are ignored on lines that also name
// an institution, where they are more likely a state abbreviation.
constexpr std::size_t kShortDegreeForm = 3;

const std::vector<std::string_view>& bullet_prefixes() {
  static const std::vector<std::string_view> kPrefixes = {
      "-", "*", "\xE2\x80\xA2", "\xC2\xB7", "\xE2\x80\x93", "\xE2\x96\xAA", "\xE2\x97\x8F", ">"};
  return kPrefixes;
}

bool is_bullet_line(std::string_view line) {
  line = text::trim(line);
  for (auto p : bullet_prefixes()) {
    if (line.starts_with(p) && (line.size() == p.size() || text::is_space(line[p.size()]))) {
      return true;
    }
  }
  return false;
}

std::string strip_bullet(std::string_view line) {
  line = text::trim(line);
  for (auto p : bullet_prefixes()) {
    if (line.starts_with(p)) return std::string(text::trim(line.substr(p.size())));
  }
  return std::string(line);
}

std::string clean_part(std::string_view s) {
  auto is_edge = [](char c) {
    return text::is_space(c) || c == '|' || c == ',' || c == ';' || c == ':' || c == '-' ||
           c == '@' || c == '*';
  };
  while (!s.empty() && is_edge(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_edge(s.back())) s.remove_suffix(1);
  for (std::string_view dash : {"\xE2\x80\x93", "\xE2\x80\x94", "\xE2\x80\xA2"}) {
    while (s.starts_with(dash)) s = text::trim(s.substr(dash.size()));
    while (s.ends_with(dash)) s = text::trim(s.substr(0, s.size() - dash.size()));
  }
  return text::collapse_whitespace(s);
}

// Splits on the given separators (matched literally, case-insensitively for
// word separators), dropping empty parts.
std::vector<std::string> split_parts(std::string_view line,
                                     const std::vector<std::string_view>& separators) {
  std::vector<std::string> parts;
  auto lower = text::to_lower(line);
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < line.size()) {
    bool hit = false;
    for (auto sep : separators) {
      if (std::string_view(lower).substr(i).starts_with(sep)) {
        auto p = clean_part(line.substr(start, i - start));
        if (!p.empty()) parts.push_back(std::move(p));
        i += sep.size();
        start = i;
        hit = true;
        break;
      }
    }
    if (!hit) ++i;
  }
  auto p = clean_part(line.substr(start));
  if (!p.empty()) parts.push_back(std::move(p));
  return parts;
}

const std::vector<std::string_view> kFieldSeparators = {" | ", "|", " \xE2\x80\xA2 ",
                                                        " \xC2\xB7 ", ";"};
const std::vector<std::string_view> kHeaderSeparators = {
    " | ", "|", " \xE2\x80\x94 ", " \xE2\x80\x93 ", " - ", " @ ", " at ", ", "};

bool has_digit(std::string_view s) { return std::any_of(s.begin(), s.end(), text::is_digit); }

bool looks_like_name(std::string_view line, const Gazetteers& gaz) {
  auto words = text::split_whitespace(line);
  if (words.empty() || words.size() > kMaxNameWords) return false;
  if (has_digit(line) || line.find('@') != std::string_view::npos) return false;
  if (gaz.section_keyword(line) || gaz.find_location(line) || gaz.has_title_keyword(line)) {
    return false;
  }
  for (const auto& w : words) {
    if (!text::is_alpha(w.front()) && static_cast<unsigned char>(w.front()) < 0x80) return false;
  }
  return true;
}

std::vector<std::size_t> body_blocks(const Segment& segment) {
  std::vector<std::size_t> out;
  for (auto i : segment.block_indices) {
    if (!segment.headline_block || i != *segment.headline_block) out.push_back(i);
  }
  return out;
}

void extract_personal(const Segment& segment, const LayoutDocument& doc, const Gazetteers& gaz,
                      SegmentEntities& out) {
  auto stats = ingest::layout_stats(doc);
  std::optional<std::size_t> plain_name;
  std::optional<std::size_t> prominent_name;
  for (auto idx : segment.block_indices) {
    const auto& block = doc.blocks[idx];
    const auto& line = block.text;
    if (!out.email) {
      for (auto& w : text::split_whitespace(line)) {
        auto word = clean_part(w);
        while (!word.empty() && (word.front() == '<' || word.front() == '(')) word.erase(0, 1);
        while (!word.empty() && (word.back() == '>' || word.back() == ')' || word.back() == '.')) {
          word.pop_back();
        }
        if (text::looks_like_email(word)) {
          out.email = TextField{word, {idx}};
          break;
        }
      }
    }
    if (!out.phone) {
      auto runs = text::find_phone_runs(line);
      if (!runs.empty()) {
        auto [b, e] = runs.front();
        out.phone = TextField{std::string(text::trim(std::string_view(line).substr(b, e - b))), {idx}};
      }
    }
    if (!out.location) {
      for (const auto& part : split_parts(line, kFieldSeparators)) {
        if (part.find('@') != std::string::npos || !text::find_phone_runs(part).empty()) continue;
        if (gaz.find_location(part)) {
          out.location = TextField{part, {idx}};
          break;
        }
      }
    }
    if (looks_like_name(line, gaz)) {
      bool prominent = (segment.headline_block && idx == *segment.headline_block) || block.bold ||
                       block.font_size > stats.body_font_median;
      if (prominent && !prominent_name) prominent_name = idx;
      if (!plain_name) plain_name = idx;
    }
  }
  if (auto idx = prominent_name ? prominent_name : plain_name) {
    out.name = TextField{text::collapse_whitespace(doc.blocks[*idx].text), {*idx}};
  }
}

std::optional<std::string> field_of_study(std::string_view degree_text, const DegreeMatch& m) {
  auto tokens = text::split_whitespace(degree_text);
  std::vector<std::string> rest;
  for (std::size_t i = m.last_token + 1; i < tokens.size(); ++i) rest.push_back(tokens[i]);
  while (!rest.empty()) {
    auto w = text::to_lower(clean_part(rest.front()));
    if (w.empty() || w == "in" || w == "of") {
      rest.erase(rest.begin());
    } else {
      break;
    }
  }
  auto joined = text::join(rest, " ");
  auto cut = joined.find_first_of(",|(");
  if (cut != std::string::npos) joined.resize(cut);
  auto field = clean_part(joined);
  if (field.empty()) return std::nullopt;
  return field;
}

void extract_education(const Segment& segment, const LayoutDocument& doc, const Date& ref,
                       const Gazetteers& gaz, SegmentEntities& out) {
  EducationEntry cur;
  bool has_inst = false;
  bool has_degree = false;
  bool has_span = false;
  auto push = [&] {
    if (has_inst || has_degree) {
      std::sort(cur.source_blocks.begin(), cur.source_blocks.end());
      out.educations.push_back(std::move(cur));
    }
    cur = EducationEntry{};
    has_inst = has_degree = has_span = false;
  };

  for (auto idx : body_blocks(segment)) {
    const auto& line = doc.blocks[idx].text;
    auto date = find_date_expression(line, ref);
    std::string rest = date ? remove_date(line, *date) : line;
    rest = clean_part(strip_bullet(rest));

    bool inst = gaz.has_institute_keyword(rest);
    auto degree = match_degree(rest, gaz, inst ? kShortDegreeForm : 0);
    std::string inst_text;
    std::string degree_text;
    if (inst && degree) {
      for (const auto& part : split_parts(rest, kHeaderSeparators)) {
        if (inst_text.empty() && gaz.has_institute_keyword(part)) {
          inst_text = part;
        } else if (degree_text.empty() && match_degree(part, gaz, kShortDegreeForm)) {
          degree_text = part;
        }
      }
      if (inst_text.empty()) inst_text = rest;
      // Degree and institution run together without a separator.
      if (degree_text.empty()) degree_text = inst_text;
    } else if (inst) {
      inst_text = rest;
    } else if (degree) {
      degree_text = rest;
    }

    bool used = false;
    if (!inst_text.empty()) {
      if (has_inst) push();
      cur.institution = inst_text;
      cur.institution_key = text::normalize_key(inst_text);
      has_inst = true;
      used = true;
    }
    if (!degree_text.empty()) {
      if (has_degree) push();
      auto m = match_degree(degree_text, gaz, inst ? kShortDegreeForm : 0);
      cur.degree = m ? m->level : DegreeLevel::kOther;
      cur.degree_text = degree_text;
      if (m) cur.field_of_study = field_of_study(degree_text, *m);
      has_degree = true;
      used = true;
    }
    if (date) {
      if (has_span && !used) push();
      cur.span = date->span;
      has_span = true;
      used = true;
    }
    if (used || has_inst || has_degree || has_span) cur.source_blocks.push_back(idx);
  }
  push();
}

void extract_work_step(const Segment& step, const LayoutDocument& doc, const Date& ref,
                       const Gazetteers& gaz, SegmentEntities& out) {
  auto blocks = body_blocks(step);
  std::optional<DateMatch> span;
  for (auto idx : blocks) {
    if (auto m = find_date_range(doc.blocks[idx].text, ref)) {
      span = m;
      break;
    }
  }
  if (!span) {
    for (auto idx : blocks) {
      if (auto m = find_date_expression(doc.blocks[idx].text, ref)) {
        span = m;
        break;
      }
    }
  }

  std::optional<std::string> title;
  std::optional<std::string> employer;
  for (auto idx : blocks) {
    const auto& line = doc.blocks[idx].text;
    if (is_bullet_line(line)) continue;
    auto date = find_date_expression(line, ref);
    std::string rest = date ? remove_date(line, *date) : line;
    for (const auto& part : split_parts(rest, kHeaderSeparators)) {
      if (text::split_whitespace(part).size() > kMaxHeaderWords) continue;
      if (gaz.has_title_keyword(part)) {
        if (!title) title = part;
      } else if (!employer && !find_date_expression(part, ref)) {
        employer = part;
      }
    }
    if (title && employer) break;
  }

  if (!span || !employer || employer_key(*employer).empty()) {
    std::string what = !span ? "no date range" : "no employer";
    std::string first = blocks.empty() ? std::string("<empty>") : doc.blocks[blocks.front()].text;
    out.warnings.push_back("career step skipped (" + what + "): '" + first + "'");
    return;
  }
  WorkEntry w;
  w.employer_raw = *employer;
  w.employer_key = employer_key(*employer);
  w.title = title;
  w.span = span->span;
  w.source_blocks = blocks;
  out.works.push_back(std::move(w));
}

void extract_skills(const Segment& segment, const LayoutDocument& doc, SegmentEntities& out) {
  static const std::vector<std::string_view> kSkillSeparators = {
      ",", ";", "|", "\xE2\x80\xA2", "\xC2\xB7", " - ", "\xE2\x96\xAA", "\xE2\x97\x8F"};
  for (auto idx : body_blocks(segment)) {
    std::string line = strip_bullet(doc.blocks[idx].text);
    // "Programming: Java, Go" lists skills after a short category label.
    auto colon = line.find(':');
    if (colon != std::string::npos && colon <= 40) line = line.substr(colon + 1);
    for (const auto& piece : split_parts(line, kSkillSeparators)) {
      if (text::split_whitespace(piece).size() > kMaxSkillWords) continue;
      std::string token;
      try {
        token = skillspace::normalize_skill(piece);
      } catch (const Error&) {
        continue;
      }
      auto it = std::find_if(out.skills.begin(), out.skills.end(),
                             [&](const SkillMention& s) { return s.token == token; });
      if (it == out.skills.end()) {
        out.skills.push_back({piece, token, {idx}});
      } else if (it->source_blocks.back() != idx) {
        it->source_blocks.push_back(idx);
      }
    }
  }
}

}  // namespace

std::vector<Segment> split_career_steps(const Segment& segment, const LayoutDocument& doc,
                                        const Date& reference_date,
                                        const ingest::SegmentationParams& params,
                                        const Gazetteers& gazetteers) {
  auto blocks = body_blocks(segment);
  auto make_step = [&](std::vector<std::size_t> indices) {
    Segment s;
    s.label = SectionLabel::kWorkExperience;
    s.confidence = segment.confidence;
    s.block_indices = std::move(indices);
    return s;
  };
  if (blocks.empty()) return {segment};

  auto stats = ingest::layout_stats(doc, blocks);
  std::vector<bool> headline(blocks.size(), false);
  std::vector<std::size_t> anchors;
  for (std::size_t pos = 0; pos < blocks.size(); ++pos) {
    headline[pos] = ingest::is_headline(doc, blocks, pos, stats, params, gazetteers);
    if (find_date_range(doc.blocks[blocks[pos]].text, reference_date)) anchors.push_back(pos);
  }

  std::set<std::size_t> starts = {0};
  for (std::size_t pos = 1; pos < blocks.size(); ++pos) {
    if (headline[pos]) starts.insert(pos);
  }
  if (!anchors.empty()) {
    auto latest_headline_in = [&](std::size_t lo, std::size_t hi) -> std::optional<std::size_t> {
      for (std::size_t p = hi + 1; p-- > lo;) {
        if (headline[p]) return p;
      }
      return std::nullopt;
    };
    std::size_t first_start = latest_headline_in(0, anchors[0]).value_or(0);
    std::size_t lead = anchors[0] - first_start;
    for (std::size_t a = 1; a < anchors.size(); ++a) {
      std::size_t lo = anchors[a - 1] + 1;
      if (auto h = latest_headline_in(lo, anchors[a])) {
        starts.insert(*h);
        continue;
      }
      std::size_t start = anchors[a] >= lead ? anchors[a] - lead : 0;
      starts.insert(std::max(start, lo));
    }
  }

  std::vector<Segment> steps;
  std::vector<std::size_t> current;
  for (std::size_t pos = 0; pos < blocks.size(); ++pos) {
    if (pos > 0 && starts.count(pos)) {
      steps.push_back(make_step(std::move(current)));
      current.clear();
    }
    current.push_back(blocks[pos]);
  }
  steps.push_back(make_step(std::move(current)));
  if (segment.headline_block) {
    auto& first = steps.front().block_indices;
    first.insert(std::lower_bound(first.begin(), first.end(), *segment.headline_block),
                 *segment.headline_block);
    steps.front().headline_block = segment.headline_block;
  }
  return steps;
}

SegmentEntities extract_entities(const Segment& segment, const LayoutDocument& doc,
                                 const Date& reference_date, const Gazetteers& gazetteers,
                                 const ingest::SegmentationParams& params) {
  SegmentEntities out;
  out.label = segment.label.value_or(SectionLabel::kOther);
  switch (out.label) {
    case SectionLabel::kPersonal:
      extract_personal(segment, doc, gazetteers, out);
      break;
    case SectionLabel::kEducation:
      extract_education(segment, doc, reference_date, gazetteers, out);
      break;
    case SectionLabel::kWorkExperience:
      for (const auto& step : split_career_steps(segment, doc, reference_date, params, gazetteers)) {
        extract_work_step(step, doc, reference_date, gazetteers, out);
      }
      break;
    case SectionLabel::kSkills:
      extract_skills(segment, doc, out);
      break;
    case SectionLabel::kOther:
      break;
  }
  return out;
}

CandidateProfile build_profile(const LayoutDocument& doc, const std::vector<Segment>& classified,
                               const std::vector<SegmentEntities>& entities,
                               const Date& reference_date) {
  if (classified.size() != entities.size()) {
    throw Error(ErrorCode::kParameter, "build_profile: one entity set per segment required");
  }
  CandidateProfile p;
  p.candidate_id = candidate_id_for(doc.source_id);
  p.source_document = doc.source_id;
  p.reference_date = reference_date;

  auto take = [&](std::optional<TextField>& slot, const std::optional<TextField>& value,
                  std::string_view what) {
    if (!value) return;
    if (!slot) {
      slot = value;
    } else if (slot->value != value->value && what == "name") {
      p.warnings.push_back("multiple names: kept '" + slot->value + "', ignored '" +
                           value->value + "'");
    }
  };
  for (const auto& e : entities) {
    take(p.name, e.name, "name");
    take(p.email, e.email, "email");
    take(p.phone, e.phone, "phone");
    take(p.location, e.location, "location");
    p.educations.insert(p.educations.end(), e.educations.begin(), e.educations.end());
    p.works.insert(p.works.end(), e.works.begin(), e.works.end());
    for (const auto& s : e.skills) {
      auto it = std::find_if(p.skills.begin(), p.skills.end(),
                             [&](const SkillMention& m) { return m.token == s.token; });
      if (it == p.skills.end()) {
        p.skills.push_back(s);
      } else {
        std::set<std::size_t> merged(it->source_blocks.begin(), it->source_blocks.end());
        merged.insert(s.source_blocks.begin(), s.source_blocks.end());
        it->source_blocks.assign(merged.begin(), merged.end());
      }
    }
    p.warnings.insert(p.warnings.end(), e.warnings.begin(), e.warnings.end());
  }

  std::stable_sort(p.educations.begin(), p.educations.end(),
                   [](const EducationEntry& a, const EducationEntry& b) {
                     if (a.span.has_value() != b.span.has_value()) return a.span.has_value();
                     if (!a.span) return false;
                     return a.span->start > b.span->start;
                   });
  std::stable_sort(p.works.begin(), p.works.end(), [](const WorkEntry& a, const WorkEntry& b) {
    return a.span.start > b.span.start;
  });
  return p;
}

}  // namespace talentrank::extract
