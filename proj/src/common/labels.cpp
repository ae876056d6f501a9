#include "talentrank/common/labels.hpp"

#include "talentrank/common/text.hpp"

namespace talentrank {

std::string_view to_string(SectionLabel label) {
  switch (label) {
    case SectionLabel::kPersonal: return "Personal";
    case SectionLabel::kEducation: return "Education";
    case SectionLabel::kWorkExperience: return "WorkExperience";
    case SectionLabel::kSkills: return "Skills";
    case SectionLabel::kOther: return "Other";
  }
  return "Other";
}

std::optional<SectionLabel> parse_section_label(std::string_view name) {
  auto lower = text::to_lower(text::trim(name));
  for (auto label : kAllSectionLabels) {
    if (text::to_lower(to_string(label)) == lower) return label;
  }
  return std::nullopt;
}

std::string_view to_string(DegreeLevel level) {
  switch (level) {
    case DegreeLevel::kBachelor: return "Bachelor";
    case DegreeLevel::kMaster: return "Master";
    case DegreeLevel::kDoctoral: return "Doctoral";
    case DegreeLevel::kOther: return "Other";
  }
  return "Other";
}

std::optional<DegreeLevel> parse_degree_level(std::string_view name) {
  auto lower = text::to_lower(text::trim(name));
  for (auto level : kAllDegreeLevels) {
    if (text::to_lower(to_string(level)) == lower) return level;
  }
  return std::nullopt;
}

}  // namespace talentrank
