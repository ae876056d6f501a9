#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace talentrank::scoring {

struct UniversityScores {
  std::optional<double> the;
  std::optional<double> qs;

  bool operator==(const UniversityScores&) const = default;
};

// Keyed by normalize_key(institution name).
struct UniversityRankingTable {
  std::map<std::string, UniversityScores> entries;
  std::vector<std::string> warnings;

  const UniversityScores* find(std::string_view key) const;
  bool operator==(const UniversityRankingTable&) const = default;
};

// Joins two "institution,score" tables (header row required, scores in
// [0, 100]). Duplicates within one source keep the higher score and add a
// warning. Malformed rows throw ParseError naming the source and line.
UniversityRankingTable import_university_rankings(std::string_view the_csv,
                                                  std::string_view qs_csv);

// (THE or 0 + QS or 0) / 2; 0 for institutions missing from the table.
double university_score(std::string_view key, const UniversityRankingTable& table);

std::string serialize(const UniversityRankingTable& table);
UniversityRankingTable deserialize_rankings(std::string_view file_bytes);

}  // namespace talentrank::scoring
