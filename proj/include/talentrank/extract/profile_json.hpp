#pragma once

#include <json.hpp>

#include "talentrank/extract/profile.hpp"

namespace talentrank::extract {

// Wire form of profiles: dates as ISO strings, absent values as null.
nlohmann::json to_json(const DateSpan& span);
DateSpan date_span_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CandidateProfile& profile);
// Throws an Error coded kParse on missing or mistyped fields.
CandidateProfile profile_from_json(const nlohmann::json& j);

}  // namespace talentrank::extract
