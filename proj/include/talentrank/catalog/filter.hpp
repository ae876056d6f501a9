#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "talentrank/common/labels.hpp"
#include "talentrank/extract/profile.hpp"
#include "talentrank/scoring/job.hpp"

namespace talentrank::catalog {

// Desired skills drive scoring only; they never exclude anyone.
struct FilterSpec {
  std::optional<double> min_experience_years;
  std::optional<std::set<DegreeLevel>> required_degrees;
  std::vector<std::string> desired_skills;
};

// Throws kParameter for negative or non-finite years or an empty degree set.
void validate(const FilterSpec& spec);

// Experience is the sum of all employment months (overlaps counted twice)
// over 12; the degree is that of the most recent education entry, and a
// profile without education never satisfies a degree requirement.
bool passes(const extract::CandidateProfile& profile, const FilterSpec& spec);

// The job's own requirements, with its desired skills.
FilterSpec filter_for(const scoring::JobProfile& job);

// Overrides from flag or query text. min_years replaces the job's minimum
// ("0" disables it); degrees is a comma list of degree names or "any".
// Throws kParameter for malformed values.
void apply_overrides(FilterSpec& spec, const std::optional<std::string>& min_years,
                     const std::optional<std::string>& degrees);

// Ids of the passing profiles, ascending.
std::vector<std::string> filter_candidates(
    const std::vector<const extract::CandidateProfile*>& profiles, const FilterSpec& spec);

}  // namespace talentrank::catalog
