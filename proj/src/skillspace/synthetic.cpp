#include "talentrank/skillspace/synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <json.hpp>

#include "talentrank/common/csv.hpp"
#include "talentrank/common/error.hpp"
#include "talentrank/common/random.hpp"
#include "talentrank/common/text.hpp"
#include "talentrank/extract/profile_json.hpp"
#include "talentrank/skillspace/skill_token.hpp"

namespace talentrank::skillspace {

using nlohmann::json;
using extract::CandidateProfile;

namespace {

template <typename T>
T required(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::kParse, std::string("templates: missing '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("templates: bad '") + key + "': " + e.what());
  }
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(rng.below(v.size()))];
}

std::size_t between(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.below(hi - lo + 1));
}

Date add_months(Date d, int m) {
  int total = d.year * 12 + (d.month - 1) + m;
  return {total / 12, total % 12 + 1, 1};
}

Date month_end(Date d) { return {d.year, d.month, days_in_month(d.year, d.month)}; }

extract::DateSpan closed_span(Date start, Date last_month) {
  extract::DateSpan s;
  s.start = {start.year, start.month, 1};
  s.end = month_end(last_month);
  s.resolved_end = *s.end;
  return s;
}

template <typename Item>
const Item& tiered(Rng& rng, const std::vector<Item>& items, int tier, double affinity) {
  if (rng.uniform() < affinity) {
    std::vector<const Item*> same;
    for (const auto& it : items) {
      if (it.tier == tier) same.push_back(&it);
    }
    if (!same.empty()) return *pick(rng, same);
  }
  return pick(rng, items);
}

DegreeLevel draw_degree(Rng& rng, const std::map<DegreeLevel, double>& weights) {
  double total = 0.0;
  for (const auto& [_, w] : weights) total += w;
  double u = rng.uniform() * total;
  for (const auto& [level, w] : weights) {
    if (u < w) return level;
    u -= w;
  }
  return weights.rbegin()->first;
}

}  // namespace

CorpusTemplates parse_corpus_templates(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("templates: ") + e.what());
  }
  CorpusTemplates t;
  for (const auto& g : required<json>(j, "skill_groups")) {
    CorpusTemplates::SkillGroup group;
    group.name = required<std::string>(g, "name");
    for (const auto& s : required<std::vector<std::string>>(g, "skills")) {
      group.skills.push_back(normalize_skill(s));
    }
    group.titles = required<std::vector<std::string>>(g, "titles");
    if (group.skills.empty() || group.titles.empty()) {
      throw Error(ErrorCode::kParse, "templates: group '" + group.name + "' needs skills and titles");
    }
    t.skill_groups.push_back(std::move(group));
  }
  for (const auto& u : required<json>(j, "universities")) {
    CorpusTemplates::University uni;
    uni.name = required<std::string>(u, "name");
    uni.tier = required<int>(u, "tier");
    if (u.contains("the")) uni.the = required<double>(u, "the");
    if (u.contains("qs")) uni.qs = required<double>(u, "qs");
    t.universities.push_back(std::move(uni));
  }
  for (const auto& e : required<json>(j, "employers")) {
    t.employers.push_back({required<std::string>(e, "name"), required<int>(e, "tier")});
  }
  auto degrees = required<json>(j, "degrees");
  auto degree_names = required<json>(j, "degree_names");
  for (const auto& [name, w] : degrees.items()) {
    auto level = parse_degree_level(name);
    if (!level) throw Error(ErrorCode::kParse, "templates: unknown degree '" + name + "'");
    if (!w.is_number()) throw Error(ErrorCode::kParse, "templates: degree weight must be a number");
    t.degree_weights[*level] = w.get<double>();
  }
  for (const auto& [name, forms] : degree_names.items()) {
    auto level = parse_degree_level(name);
    if (!level) throw Error(ErrorCode::kParse, "templates: unknown degree '" + name + "'");
    try {
      t.degree_names[*level] = forms.get<std::vector<std::string>>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse, std::string("templates: bad degree_names: ") + e.what());
    }
  }
  for (const auto& [level, _] : t.degree_weights) {
    if (t.degree_names[level].empty()) {
      throw Error(ErrorCode::kParse,
                  "templates: no names for degree " + std::string(to_string(level)));
    }
  }
  t.fields = required<std::vector<std::string>>(j, "fields");
  t.first_names = required<std::vector<std::string>>(j, "first_names");
  t.last_names = required<std::vector<std::string>>(j, "last_names");
  t.locations = required<std::vector<std::string>>(j, "locations");
  auto skills = required<std::vector<std::size_t>>(j, "skills_per_profile");
  auto jobs = required<std::vector<std::size_t>>(j, "jobs_per_profile");
  if (skills.size() != 2 || jobs.size() != 2 || skills[0] > skills[1] || jobs[0] > jobs[1] ||
      skills[0] == 0) {
    throw Error(ErrorCode::kParse, "templates: ranges must be [min, max]");
  }
  t.min_skills = skills[0];
  t.max_skills = skills[1];
  t.min_jobs = jobs[0];
  t.max_jobs = jobs[1];
  t.cross_group_probability = required<double>(j, "cross_group_probability");
  t.tier_affinity = required<double>(j, "tier_affinity");
  if (t.skill_groups.empty() || t.universities.empty() || t.employers.empty() ||
      t.degree_weights.empty() || t.fields.empty() || t.first_names.empty() ||
      t.last_names.empty() || t.locations.empty()) {
    throw Error(ErrorCode::kParse, "templates: every list must be non-empty");
  }
  return t;
}

std::vector<CandidateProfile> generate_corpus(const CorpusTemplates& t, std::size_t n,
                                              std::uint64_t seed, const Date& reference_date) {
  Rng rng(seed);
  int max_tier = 0;
  for (const auto& u : t.universities) max_tier = std::max(max_tier, u.tier);

  std::vector<CandidateProfile> corpus;
  corpus.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    CandidateProfile p;
    char source[32];
    std::snprintf(source, sizeof source, "syn-%05zu", i + 1);
    p.source_document = source;
    p.candidate_id = extract::candidate_id_for(source);
    p.reference_date = reference_date;
    p.name = extract::TextField{pick(rng, t.first_names) + " " + pick(rng, t.last_names), {}};
    p.email = extract::TextField{"candidate" + std::to_string(i + 1) + "@example.com", {}};
    char phone[32];
    std::snprintf(phone, sizeof phone, "+1 555 %03d %04d", static_cast<int>(rng.below(1000)),
                  static_cast<int>(rng.below(10000)));
    p.phone = extract::TextField{phone, {}};
    p.location = extract::TextField{pick(rng, t.locations), {}};

    int tier = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_tier) + 1));
    const auto& group = pick(rng, t.skill_groups);
    auto skills = group.skills;
    rng.shuffle(skills);
    skills.resize(std::min(skills.size(), between(rng, t.min_skills, t.max_skills)));
    if (t.skill_groups.size() > 1 && rng.uniform() < t.cross_group_probability) {
      const auto& other = pick(rng, t.skill_groups);
      auto extra = between(rng, 1, 2);
      for (std::size_t k = 0; k < extra; ++k) skills.push_back(pick(rng, other.skills));
    }
    for (const auto& s : skills) {
      if (std::none_of(p.skills.begin(), p.skills.end(),
                       [&](const extract::SkillMention& m) { return m.token == s; })) {
        p.skills.push_back({s, s, {}});
      }
    }

    auto level = draw_degree(rng, t.degree_weights);
    int grad_year = reference_date.year - 1 - static_cast<int>(rng.below(15));
    int years = level == DegreeLevel::kMaster ? 2 : level == DegreeLevel::kOther ? 2 : 4;
    auto add_education = [&](DegreeLevel lvl, int start_year, int end_year) {
      const auto& uni = tiered(rng, t.universities, tier, t.tier_affinity);
      extract::EducationEntry e;
      e.institution = uni.name;
      e.institution_key = text::normalize_key(uni.name);
      e.degree = lvl;
      e.degree_text = pick(rng, t.degree_names.at(lvl));
      if (lvl != DegreeLevel::kOther) {
        e.field_of_study = pick(rng, t.fields);
        e.degree_text += " in " + *e.field_of_study;
      }
      e.span = closed_span({start_year, 9, 1}, {end_year, 6, 1});
      p.educations.push_back(std::move(e));
    };
    add_education(level, grad_year - years, grad_year);
    if ((level == DegreeLevel::kMaster || level == DegreeLevel::kDoctoral) &&
        t.degree_weights.count(DegreeLevel::kBachelor) && rng.uniform() < 0.5) {
      add_education(DegreeLevel::kBachelor, grad_year - years - 3, grad_year - years);
    }

    Date cursor{grad_year, 7 + static_cast<int>(rng.below(4)), 1};
    std::size_t jobs = between(rng, t.min_jobs, t.max_jobs);
    for (std::size_t k = 0; k < jobs; ++k) {
      Date month_of_ref{reference_date.year, reference_date.month, 1};
      if (cursor > month_of_ref) break;
      const auto& employer = tiered(rng, t.employers, tier, t.tier_affinity);
      extract::WorkEntry w;
      w.employer_raw = employer.name;
      w.employer_key = extract::employer_key(employer.name);
      w.title = pick(rng, group.titles);
      int length = 6 + static_cast<int>(rng.below(48));
      Date last = add_months(cursor, length - 1);
      bool final_job = k + 1 == jobs;
      if (last >= month_of_ref || (final_job && rng.uniform() < 0.5)) {
        w.span.start = cursor;
        w.span.resolved_end = reference_date;
        p.works.push_back(std::move(w));
        break;
      }
      w.span = closed_span(cursor, last);
      p.works.push_back(std::move(w));
      cursor = add_months(last, 1 + static_cast<int>(rng.below(3)));
    }
    std::reverse(p.works.begin(), p.works.end());
    corpus.push_back(std::move(p));
  }
  return corpus;
}

RankingFiles ranking_files(const CorpusTemplates& t) {
  RankingFiles out;
  out.the_csv = "institution,score\n";
  out.qs_csv = "institution,score\n";
  for (const auto& u : t.universities) {
    if (u.the) out.the_csv += csv::escape(u.name) + "," + csv::format_double(*u.the) + "\n";
    if (u.qs) out.qs_csv += csv::escape(u.name) + "," + csv::format_double(*u.qs) + "\n";
  }
  return out;
}

PlantedCorpus planted_corpus(std::size_t groups, std::size_t group_size, std::size_t profiles,
                             std::size_t skills_per_profile, std::uint64_t seed) {
  if (groups == 0 || group_size == 0 || skills_per_profile == 0 ||
      skills_per_profile > group_size) {
    throw Error(ErrorCode::kParameter, "planted corpus: invalid group sizes");
  }
  PlantedCorpus out;
  std::vector<std::vector<std::string>> tokens(groups);
  for (std::size_t g = 0; g < groups; ++g) {
    for (std::size_t s = 0; s < group_size; ++s) {
      auto tok = "g" + std::to_string(g) + "-s" + std::to_string(s);
      tokens[g].push_back(tok);
      out.group_of[tok] = g;
    }
  }
  Rng rng(seed);
  for (std::size_t i = 0; i < profiles; ++i) {
    auto chosen = tokens[static_cast<std::size_t>(rng.below(groups))];
    rng.shuffle(chosen);
    chosen.resize(skills_per_profile);
    out.profiles.push_back(std::move(chosen));
  }
  return out;
}

ingest::LayoutDocument render_resume(const CandidateProfile& p) {
  ingest::LayoutDocument doc;
  doc.source_id = p.source_document;
  double y = 60.0;
  auto line = [&](std::string textline, double size, bool bold, double gap = 4.0) {
    ingest::LayoutBlock b;
    b.text = std::move(textline);
    b.x = 72.0;
    b.y = y;
    b.width = std::max(20.0, 0.5 * size * static_cast<double>(text::utf8_length(b.text)));
    b.height = size * 1.2;
    b.font_size = size;
    b.bold = bold;
    b.font_name = bold ? "Helvetica-Bold" : "Helvetica";
    y += b.height + gap;
    doc.blocks.push_back(std::move(b));
  };
  auto headline = [&](const char* title) {
    y += 10.0;
    line(title, 14.0, true, 6.0);
  };

  if (p.name) line(p.name->value, 20.0, true, 8.0);
  std::vector<std::string> contact;
  if (p.email) contact.push_back(p.email->value);
  if (p.phone) contact.push_back(p.phone->value);
  if (!contact.empty()) line(text::join(contact, " | "), 10.5, false);
  if (p.location) line(p.location->value, 10.5, false);

  if (!p.educations.empty()) {
    headline("EDUCATION");
    for (const auto& e : p.educations) {
      line(e.institution, 10.5, false, 2.0);
      line(e.degree_text, 10.5, false, 2.0);
      if (e.span) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%02d/%04d - %02d/%04d", e.span->start.month,
                      e.span->start.year, e.span->resolved_end.month, e.span->resolved_end.year);
        line(buf, 10.5, false, 8.0);
      }
    }
  }
  if (!p.works.empty()) {
    static constexpr const char* kMonths[] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                              "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
    headline("WORK EXPERIENCE");
    for (const auto& w : p.works) {
      line(w.employer_raw, 10.5, false, 2.0);
      if (w.title) line(*w.title, 10.5, false, 2.0);
      std::string when = std::string(kMonths[w.span.start.month - 1]) + " " +
                         std::to_string(w.span.start.year) + " - ";
      if (w.span.end) {
        when += std::string(kMonths[w.span.end->month - 1]) + " " + std::to_string(w.span.end->year);
      } else {
        when += "Present";
      }
      line(when, 10.5, false, 8.0);
    }
  }
  if (!p.skills.empty()) {
    headline("SKILLS");
    std::vector<std::string> row;
    for (std::size_t i = 0; i < p.skills.size(); ++i) {
      row.push_back(p.skills[i].raw);
      if (row.size() == 6 || i + 1 == p.skills.size()) {
        line(text::join(row, ", "), 10.5, false, 2.0);
        row.clear();
      }
    }
  }
  return doc;
}

std::string corpus_to_jsonl(const std::vector<CandidateProfile>& corpus) {
  std::string out;
  for (const auto& p : corpus) {
    out += extract::to_json(p).dump();
    out += '\n';
  }
  return out;
}

std::vector<CandidateProfile> corpus_from_jsonl(std::string_view text) {
  std::vector<CandidateProfile> out;
  std::size_t line_no = 0;
  for (const auto& line : text::split(text, '\n')) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      out.push_back(extract::profile_from_json(json::parse(line)));
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("corpus: ") + e.what(), line_no, 0);
    } catch (const Error& e) {
      throw ParseError(std::string("corpus: ") + e.what(), line_no, 0);
    }
  }
  return out;
}

std::vector<std::vector<std::string>> skill_sets(const std::vector<CandidateProfile>& corpus) {
  std::vector<std::vector<std::string>> out;
  out.reserve(corpus.size());
  for (const auto& p : corpus) {
    std::vector<std::string> tokens;
    for (const auto& s : p.skills) tokens.push_back(s.token);
    out.push_back(std::move(tokens));
  }
  return out;
}

}  // namespace talentrank::skillspace
