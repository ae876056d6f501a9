#pragma once

#include <optional>
#include <string>
#include <vector>

#include "talentrank/extract/profile.hpp"
#include "talentrank/scoring/config.hpp"
#include "talentrank/scoring/employers.hpp"
#include "talentrank/scoring/job.hpp"
#include "talentrank/scoring/rankings.hpp"
#include "talentrank/skillspace/embedding.hpp"

namespace talentrank::scoring {

// Index of the education entry with the latest span start; entries without
// a span rank last and ties keep profile order.
std::optional<std::size_t> most_recent_education(const extract::CandidateProfile& profile);

struct EducationEvidence {
  std::optional<std::size_t> entry;  // index into profile.educations
  DegreeLevel degree = DegreeLevel::kOther;
  double degree_score = 0.0;
  std::string institution;
  std::string institution_key;
  std::optional<double> the;
  std::optional<double> qs;
  double university_score = 0.0;
  double score = 0.0;

  bool operator==(const EducationEvidence&) const = default;
};

EducationEvidence education_evidence(const extract::CandidateProfile& profile,
                                     const UniversityRankingTable& table,
                                     const ScoringConfig& config);
double education_score(const extract::CandidateProfile& profile,
                       const UniversityRankingTable& table, const ScoringConfig& config);

struct EmploymentEvidence {
  std::string employer_key;
  int months = 0;
  double years_since_end = 0.0;
  double weight = 0.0;
  double employer_score = 0.0;
  bool employer_known = false;

  bool operator==(const EmploymentEvidence&) const = default;
};

struct WorkEvidence {
  std::vector<EmploymentEvidence> employments;  // profile order
  double experience_points = 0.0;
  double weighted_employer_average = 0.0;
  double score = 0.0;

  bool operator==(const WorkEvidence&) const = default;
};

// Fractional years of 365.25 days from end to reference, clamped at 0.
double years_between(const Date& end, const Date& reference);
double recency_weight(const Date& end, const Date& reference, double half_life_years);

WorkEvidence work_evidence(const extract::CandidateProfile& profile,
                           const EmployerScoreTable& employers, const ScoringConfig& config);
double work_score(const extract::CandidateProfile& profile, const EmployerScoreTable& employers,
                  const ScoringConfig& config);

// Total months over all work entries, overlaps counted twice.
int experience_months(const extract::CandidateProfile& profile);

struct SkillMatch {
  std::string desired;
  std::optional<std::string> matched;
  double distance = 1.0;
  double score = 0.0;
  bool exact = false;

  bool operator==(const SkillMatch&) const = default;
};

struct SkillEvidence {
  std::vector<SkillMatch> matches;  // desired order
  double score = 0.0;

  bool operator==(const SkillEvidence&) const = default;
};

// clamp(score_match - alpha * distance, 0, 100).
double match_score(double distance, const ScoringConfig& config);

// Exact token matches have distance 0. Otherwise the in-vocabulary
// candidate skill closest to the desired one wins (ties: lowest vocabulary
// index); distance 1 when the desired skill is out of vocabulary, no
// candidate skill is in vocabulary, or emb is null. Throws kParameter for an
// empty desired list.
SkillEvidence skill_score(const std::vector<std::string>& candidate_skills,
                          const std::vector<std::string>& desired,
                          const skillspace::SkillEmbedding* emb, const ScoringConfig& config);

// Weighted mean of the three category scores. Throws kParameter for
// non-positive weights.
double overall_score(double education, double work, double skills, const CategoryWeights& w);

// Everything scoring reads. Pointers may be null when a model is missing:
// no rankings or employer table scores as empty tables, no embedding leaves
// only exact skill matches.
struct ScoringContext {
  const skillspace::SkillEmbedding* embedding = nullptr;
  const UniversityRankingTable* rankings = nullptr;
  const EmployerScoreTable* employers = nullptr;
  ScoringConfig config;
  std::string models_version;
};

struct ScoreCard {
  std::string candidate_id;
  std::string job_id;
  std::string models_version;
  double education_score = 0.0;
  double work_score = 0.0;
  double skills_score = 0.0;
  double overall_score = 0.0;
  CategoryWeights weights;
  EducationEvidence education;
  WorkEvidence work;
  SkillEvidence skills;

  bool operator==(const ScoreCard&) const = default;
};

ScoreCard score_candidate(const extract::CandidateProfile& profile, const JobProfile& job,
                          const ScoringContext& ctx);

struct JobMatch {
  std::string job_id;
  std::string name;
  double overall_score = 0.0;

  bool operator==(const JobMatch&) const = default;
};

// Overall score against every job, highest first, ties by job_id.
std::vector<JobMatch> job_match_scores(const extract::CandidateProfile& profile,
                                       const std::vector<JobProfile>& jobs,
                                       const ScoringContext& ctx);

nlohmann::json to_json(const ScoreCard& card);

// Multi-line human-readable explanation used by the CLI `score` command.
std::string explain(const ScoreCard& card, const extract::CandidateProfile& profile);

}  // namespace talentrank::scoring
