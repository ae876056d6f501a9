#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "talentrank/common/labels.hpp"

namespace talentrank {

// Curated term lists for rule-based segmentation and entity recognition.
// Every entry is stored in normalize_key() form. Immutable after loading.
struct Gazetteers {
  std::vector<std::pair<std::string, SectionLabel>> section_keywords;
  std::vector<std::pair<std::string, DegreeLevel>> degree_forms;
  std::vector<std::string> institute_keywords;
  std::vector<std::string> title_keywords;
  std::vector<std::string> locations;

  // Lists compiled into the library from data/gazetteers/.
  static const Gazetteers& builtin();
  // Reads sections.txt, degrees.txt, institutes.txt, titles.txt and
  // locations.txt from a directory.
  static Gazetteers load(const std::filesystem::path& dir);
  static Gazetteers parse(std::string_view sections, std::string_view degrees,
                          std::string_view institutes, std::string_view titles,
                          std::string_view locations);

  // Exact match of normalize_key(text) against the section keyword list.
  std::optional<SectionLabel> section_keyword(std::string_view text) const;
  bool has_institute_keyword(std::string_view line) const;
  bool has_title_keyword(std::string_view line) const;
  // First location phrase found as a whole-word sequence in the line.
  std::optional<std::string> find_location(std::string_view line) const;
};

namespace gazetteer_data {
extern const char* const kSections;
extern const char* const kDegrees;
extern const char* const kInstitutes;
extern const char* const kTitles;
extern const char* const kLocations;
}  // namespace gazetteer_data

}  // namespace talentrank
