#include "talentrank/scoring/score.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "talentrank/common/csv.hpp"
#include "talentrank/common/error.hpp"
#include "talentrank/extract/dates.hpp"

namespace talentrank::scoring {

using extract::CandidateProfile;
using nlohmann::json;

std::optional<std::size_t> most_recent_education(const CandidateProfile& profile) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < profile.educations.size(); ++i) {
    if (!best) {
      best = i;
      continue;
    }
    const auto& cur = profile.educations[i].span;
    const auto& top = profile.educations[*best].span;
    if (cur && (!top || cur->start > top->start)) best = i;
  }
  return best;
}

EducationEvidence education_evidence(const CandidateProfile& profile,
                                     const UniversityRankingTable& table,
                                     const ScoringConfig& config) {
  EducationEvidence ev;
  ev.entry = most_recent_education(profile);
  if (!ev.entry) return ev;
  const auto& e = profile.educations[*ev.entry];
  ev.degree = e.degree;
  ev.degree_score = config.degree_score(e.degree);
  ev.institution = e.institution;
  ev.institution_key = e.institution_key;
  if (const auto* s = table.find(e.institution_key)) {
    ev.the = s->the;
    ev.qs = s->qs;
  }
  ev.university_score = university_score(e.institution_key, table);
  ev.score = std::min(config.category_cap, ev.degree_score + ev.university_score);
  return ev;
}

double education_score(const CandidateProfile& profile, const UniversityRankingTable& table,
                       const ScoringConfig& config) {
  return education_evidence(profile, table, config).score;
}

double years_between(const Date& end, const Date& reference) {
  auto days = static_cast<double>(to_days(reference) - to_days(end));
  return std::max(0.0, days / 365.25);
}

double recency_weight(const Date& end, const Date& reference, double half_life_years) {
  return std::pow(0.5, years_between(end, reference) / half_life_years);
}

int experience_months(const CandidateProfile& profile) {
  int total = 0;
  for (const auto& w : profile.works) total += extract::months(w.span);
  return total;
}

WorkEvidence work_evidence(const CandidateProfile& profile, const EmployerScoreTable& employers,
                           const ScoringConfig& config) {
  WorkEvidence ev;
  if (profile.works.empty()) return ev;
  double weight_sum = 0.0;
  double weighted = 0.0;
  for (const auto& w : profile.works) {
    EmploymentEvidence e;
    e.employer_key = w.employer_key;
    e.months = extract::months(w.span);
    e.years_since_end = years_between(w.span.resolved_end, profile.reference_date);
    e.weight = recency_weight(w.span.resolved_end, profile.reference_date,
                              config.recency_half_life_years);
    e.employer_known = employers.contains(w.employer_key);
    e.employer_score = employers.score(w.employer_key);
    ev.experience_points += e.months;
    weight_sum += e.weight;
    weighted += e.weight * e.employer_score;
    ev.employments.push_back(std::move(e));
  }
  ev.weighted_employer_average = weight_sum > 0.0 ? weighted / weight_sum : 0.0;
  ev.score = std::min(config.category_cap, ev.experience_points + ev.weighted_employer_average);
  return ev;
}

double work_score(const CandidateProfile& profile, const EmployerScoreTable& employers,
                  const ScoringConfig& config) {
  return work_evidence(profile, employers, config).score;
}

double match_score(double distance, const ScoringConfig& config) {
  return std::clamp(config.score_match - config.alpha * distance, 0.0, 100.0);
}

SkillEvidence skill_score(const std::vector<std::string>& candidate_skills,
                          const std::vector<std::string>& desired,
                          const skillspace::SkillEmbedding* emb, const ScoringConfig& config) {
  if (desired.empty()) throw Error(ErrorCode::kParameter, "desired skill list is empty");
  std::set<std::string> have(candidate_skills.begin(), candidate_skills.end());
  std::vector<std::size_t> in_vocab;
  if (emb) {
    for (const auto& s : have) {
      if (auto i = emb->vocabulary.index_of(s)) in_vocab.push_back(*i);
    }
    std::sort(in_vocab.begin(), in_vocab.end());
  }

  SkillEvidence ev;
  double sum = 0.0;
  for (const auto& d : desired) {
    SkillMatch m;
    m.desired = d;
    if (have.count(d)) {
      m.matched = d;
      m.distance = 0.0;
      m.exact = true;
    } else if (emb) {
      if (auto di = emb->vocabulary.index_of(d)) {
        for (auto ci : in_vocab) {
          double dist = skillspace::distance_by_index(*emb, *di, ci);
          // in_vocab ascends, so strict < keeps the lowest index on ties.
          if (!m.matched || dist < m.distance) {
            m.matched = emb->vocabulary.tokens[ci];
            m.distance = dist;
          }
        }
      }
    }
    m.score = match_score(m.distance, config);
    sum += m.score;
    ev.matches.push_back(std::move(m));
  }
  ev.score = sum / static_cast<double>(desired.size());
  return ev;
}

double overall_score(double education, double work, double skills, const CategoryWeights& w) {
  validate(w);
  return (w.education * education + w.work * work + w.skills * skills) /
         (w.education + w.work + w.skills);
}

ScoreCard score_candidate(const CandidateProfile& profile, const JobProfile& job,
                          const ScoringContext& ctx) {
  static const UniversityRankingTable kNoRankings;
  static const EmployerScoreTable kNoEmployers;
  ScoreCard card;
  card.candidate_id = profile.candidate_id;
  card.job_id = job.job_id;
  card.models_version = ctx.models_version;
  card.weights = job.weight_overrides.value_or(ctx.config.category_weights);
  card.education =
      education_evidence(profile, ctx.rankings ? *ctx.rankings : kNoRankings, ctx.config);
  card.work = work_evidence(profile, ctx.employers ? *ctx.employers : kNoEmployers, ctx.config);
  std::vector<std::string> tokens;
  tokens.reserve(profile.skills.size());
  for (const auto& s : profile.skills) tokens.push_back(s.token);
  card.skills = skill_score(tokens, job.desired_skills, ctx.embedding, ctx.config);
  card.education_score = card.education.score;
  card.work_score = card.work.score;
  card.skills_score = card.skills.score;
  card.overall_score =
      overall_score(card.education_score, card.work_score, card.skills_score, card.weights);
  return card;
}

std::vector<JobMatch> job_match_scores(const CandidateProfile& profile,
                                       const std::vector<JobProfile>& jobs,
                                       const ScoringContext& ctx) {
  std::vector<JobMatch> out;
  out.reserve(jobs.size());
  for (const auto& job : jobs) {
    out.push_back({job.job_id, job.name, score_candidate(profile, job, ctx).overall_score});
  }
  std::sort(out.begin(), out.end(), [](const JobMatch& a, const JobMatch& b) {
    if (a.overall_score != b.overall_score) return a.overall_score > b.overall_score;
    return a.job_id < b.job_id;
  });
  return out;
}

namespace {

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(); }

}  // namespace

json to_json(const ScoreCard& card) {
  json employments = json::array();
  for (const auto& e : card.work.employments) {
    employments.push_back({{"employer_key", e.employer_key},
                           {"months", e.months},
                           {"years_since_end", e.years_since_end},
                           {"weight", e.weight},
                           {"employer_score", e.employer_score},
                           {"employer_known", e.employer_known}});
  }
  json matches = json::array();
  for (const auto& m : card.skills.matches) {
    matches.push_back({{"desired", m.desired},
                       {"matched", m.matched ? json(*m.matched) : json()},
                       {"distance", m.distance},
                       {"score", m.score},
                       {"exact", m.exact}});
  }
  const auto& ed = card.education;
  return json{
      {"candidate_id", card.candidate_id},
      {"job_id", card.job_id},
      {"models_version", card.models_version},
      {"education_score", card.education_score},
      {"work_score", card.work_score},
      {"skills_score", card.skills_score},
      {"overall_score", card.overall_score},
      {"weights",
       {{"education", card.weights.education},
        {"work", card.weights.work},
        {"skills", card.weights.skills}}},
      {"education",
       {{"entry", ed.entry ? json(*ed.entry) : json()},
        {"degree", std::string(to_string(ed.degree))},
        {"degree_score", ed.degree_score},
        {"institution", ed.institution},
        {"institution_key", ed.institution_key},
        {"the", opt_json(ed.the)},
        {"qs", opt_json(ed.qs)},
        {"university_score", ed.university_score},
        {"score", ed.score}}},
      {"work",
       {{"employments", employments},
        {"experience_points", card.work.experience_points},
        {"weighted_employer_average", card.work.weighted_employer_average},
        {"score", card.work.score}}},
      {"skills", {{"matches", matches}, {"score", card.skills.score}}},
  };
}

std::string explain(const ScoreCard& card, const CandidateProfile& profile) {
  auto num = [](double v) { return csv::format_double(v); };
  std::string out;
  out += "candidate " + card.candidate_id;
  if (profile.name) out += " (" + profile.name->value + ")";
  out += "\njob " + card.job_id + "\n";
  out += "models " + (card.models_version.empty() ? std::string("-") : card.models_version) + "\n";
  out += "overall " + num(card.overall_score) + " = (" + num(card.weights.education) + "*" +
         num(card.education_score) + " + " + num(card.weights.work) + "*" + num(card.work_score) +
         " + " + num(card.weights.skills) + "*" + num(card.skills_score) + ") / " +
         num(card.weights.education + card.weights.work + card.weights.skills) + "\n";

  const auto& ed = card.education;
  out += "education " + num(card.education_score) + "\n";
  if (ed.entry) {
    out += "  degree " + std::string(to_string(ed.degree)) + " -> " + num(ed.degree_score) + "\n";
    out += "  university '" + ed.institution + "' THE " + (ed.the ? num(*ed.the) : "-") + " QS " +
           (ed.qs ? num(*ed.qs) : "-") + " -> " + num(ed.university_score) + "\n";
  } else {
    out += "  no education entries\n";
  }

  out += "work " + num(card.work_score) + "\n";
  for (const auto& e : card.work.employments) {
    out += "  employer '" + e.employer_key + "' months " + std::to_string(e.months) +
           " weight " + num(e.weight) + " employer_score " + num(e.employer_score) +
           (e.employer_known ? "" : " (unknown)") + "\n";
  }
  out += "  experience_points " + num(card.work.experience_points) +
         " weighted_employer_average " + num(card.work.weighted_employer_average) + "\n";

  out += "skills " + num(card.skills_score) + "\n";
  for (const auto& m : card.skills.matches) {
    out += "  " + m.desired + " -> " + (m.matched ? *m.matched : std::string("-")) +
           " distance " + num(m.distance) + " score " + num(m.score) +
           (m.exact ? " (exact)" : "") + "\n";
  }
  return out;
}

}  // namespace talentrank::scoring
