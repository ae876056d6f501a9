#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace talentrank {

enum class SectionLabel { kPersonal = 0, kEducation, kWorkExperience, kSkills, kOther };

inline constexpr std::size_t kSectionLabelCount = 5;
inline constexpr std::array<SectionLabel, kSectionLabelCount> kAllSectionLabels = {
    SectionLabel::kPersonal, SectionLabel::kEducation, SectionLabel::kWorkExperience,
    SectionLabel::kSkills, SectionLabel::kOther};

std::string_view to_string(SectionLabel label);
std::optional<SectionLabel> parse_section_label(std::string_view name);

enum class DegreeLevel { kBachelor = 0, kMaster, kDoctoral, kOther };

inline constexpr std::array<DegreeLevel, 4> kAllDegreeLevels = {
    DegreeLevel::kBachelor, DegreeLevel::kMaster, DegreeLevel::kDoctoral, DegreeLevel::kOther};

std::string_view to_string(DegreeLevel level);
// Accepts the canonical names, case-insensitively.
std::optional<DegreeLevel> parse_degree_level(std::string_view name);

}  // namespace talentrank
