#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "talentrank/extract/profile.hpp"
#include "talentrank/scoring/config.hpp"
#include "talentrank/scoring/rankings.hpp"

namespace talentrank::scoring {

struct EmployerStats {
  double score = 0.0;  // mean education score of grouped profiles
  std::uint64_t profiles = 0;

  bool operator==(const EmployerStats&) const = default;
};

struct EmployerScoreTable {
  std::map<std::string, EmployerStats> entries;  // keyed by employer_key
  std::string corpus_hash;

  // 0 for employers absent from the table.
  double score(std::string_view key) const;
  bool contains(std::string_view key) const;
  bool operator==(const EmployerScoreTable&) const = default;
};

// FNV-1a over the serialized profiles, as 16 hex digits.
std::string corpus_hash(const std::vector<extract::CandidateProfile>& corpus);

// Groups profiles by the employer of their most recent work entry (latest
// start, first in profile order on ties) and averages their education
// scores. Throws kParameter for an empty corpus.
EmployerScoreTable build_employer_scores(const std::vector<extract::CandidateProfile>& corpus,
                                         const UniversityRankingTable& rankings,
                                         const ScoringConfig& config);

std::string serialize(const EmployerScoreTable& table);
// When expected_corpus_hash is non-empty and differs from the stored hash a
// message is appended to warnings; the table still loads.
EmployerScoreTable deserialize_employer_scores(std::string_view file_bytes,
                                               std::string_view expected_corpus_hash = {},
                                               std::vector<std::string>* warnings = nullptr);

}  // namespace talentrank::scoring
