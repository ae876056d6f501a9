#pragma once

#include <map>
#include <string>
#include <string_view>

#include "talentrank/common/labels.hpp"

namespace talentrank::scoring {

struct CategoryWeights {
  double education = 1.0;
  double work = 1.0;
  double skills = 2.0;

  bool operator==(const CategoryWeights&) const = default;
};

struct ScoringConfig {
  std::map<DegreeLevel, double> degree_scores = {{DegreeLevel::kBachelor, 20.0},
                                                 {DegreeLevel::kMaster, 35.0},
                                                 {DegreeLevel::kDoctoral, 50.0},
                                                 {DegreeLevel::kOther, 0.0}};
  CategoryWeights category_weights;
  double score_match = 100.0;
  double alpha = 100.0;
  double recency_half_life_years = 5.0;
  double category_cap = 100.0;

  double degree_score(DegreeLevel level) const;
  bool operator==(const ScoringConfig&) const = default;
};

// Throws kParameter when a weight is not positive, score_match is outside
// (0, 100], alpha is negative or the half-life is not positive.
void validate(const ScoringConfig& config);
void validate(const CategoryWeights& weights);

// "key = value" lines; '#' starts a comment. Keys:
//   degree_score.bachelor | .master | .doctoral | .other
//   weight.education | weight.work | weight.skills
//   score_match, alpha, recency_half_life_years, category_cap
// Absent keys keep their defaults. Unknown keys and non-numeric values are
// parse errors naming the line; the result is validated.
ScoringConfig parse_config(std::string_view text);
std::string to_config_text(const ScoringConfig& config);

}  // namespace talentrank::scoring
