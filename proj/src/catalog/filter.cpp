#include "talentrank/catalog/filter.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "talentrank/common/error.hpp"
#include "talentrank/common/text.hpp"
#include "talentrank/scoring/score.hpp"

namespace talentrank::catalog {

void validate(const FilterSpec& spec) {
  if (spec.min_experience_years &&
      !(std::isfinite(*spec.min_experience_years) && *spec.min_experience_years >= 0.0)) {
    throw Error(ErrorCode::kParameter, "min_experience_years must be a number >= 0");
  }
  if (spec.required_degrees && spec.required_degrees->empty()) {
    throw Error(ErrorCode::kParameter, "required_degrees must not be empty");
  }
}

FilterSpec filter_for(const scoring::JobProfile& job) {
  FilterSpec spec;
  spec.min_experience_years = job.min_experience_years;
  spec.required_degrees = job.required_degrees;
  spec.desired_skills = job.desired_skills;
  return spec;
}

void apply_overrides(FilterSpec& spec, const std::optional<std::string>& min_years,
                     const std::optional<std::string>& degrees) {
  if (min_years && !text::trim(*min_years).empty()) {
    auto t = text::trim(*min_years);
    double v = 0.0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size() || !std::isfinite(v) || v < 0) {
      throw Error(ErrorCode::kParameter,
                  "min_years must be a number >= 0, got '" + *min_years + "'");
    }
    spec.min_experience_years = v > 0 ? std::optional<double>(v) : std::nullopt;
  }
  if (degrees && !text::trim(*degrees).empty()) {
    if (text::to_lower(text::trim(*degrees)) == "any") {
      spec.required_degrees.reset();
      return;
    }
    std::set<DegreeLevel> set;
    for (const auto& part : text::split(*degrees, ',')) {
      if (text::trim(part).empty()) continue;
      auto level = parse_degree_level(part);
      if (!level) throw Error(ErrorCode::kParameter, "unknown degree '" + part + "'");
      set.insert(*level);
    }
    if (set.empty()) throw Error(ErrorCode::kParameter, "degrees must name at least one degree");
    spec.required_degrees = std::move(set);
  }
}

bool passes(const extract::CandidateProfile& profile, const FilterSpec& spec) {
  if (spec.min_experience_years) {
    double years = static_cast<double>(scoring::experience_months(profile)) / 12.0;
    if (years < *spec.min_experience_years) return false;
  }
  if (spec.required_degrees) {
    auto idx = scoring::most_recent_education(profile);
    if (!idx || !spec.required_degrees->count(profile.educations[*idx].degree)) return false;
  }
  return true;
}

std::vector<std::string> filter_candidates(
    const std::vector<const extract::CandidateProfile*>& profiles, const FilterSpec& spec) {
  validate(spec);
  std::vector<std::string> out;
  for (const auto* p : profiles) {
    if (passes(*p, spec)) out.push_back(p->candidate_id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace talentrank::catalog
