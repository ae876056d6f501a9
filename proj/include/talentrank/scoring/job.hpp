#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "talentrank/common/binary.hpp"
#include "talentrank/common/labels.hpp"
#include "talentrank/scoring/config.hpp"

namespace talentrank::scoring {

struct JobProfile {
  std::string job_id;
  std::string name;
  std::vector<std::string> desired_skills;  // normalized, first occurrence kept
  std::optional<double> min_experience_years;
  std::optional<std::set<DegreeLevel>> required_degrees;
  std::optional<CategoryWeights> weight_overrides;

  bool operator==(const JobProfile&) const = default;
};

// Normalizes and deduplicates desired skills in place and checks the rest:
// id of [A-Za-z0-9_.-], at least one skill, min years >= 0, non-empty
// degree set, positive weights. Throws kParameter.
void normalize_job(JobProfile& job);

// Throws kParse for missing/mistyped fields and kParameter per normalize_job.
JobProfile job_from_json(const nlohmann::json& j);
nlohmann::json to_json(const JobProfile& job);

std::string serialize(const JobProfile& job);
JobProfile deserialize_job(std::string_view file_bytes);

}  // namespace talentrank::scoring
