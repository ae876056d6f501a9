#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "talentrank/common/binary.hpp"

namespace talentrank::skillspace {

// Skill tokens in ascending byte order; index = position.
struct SkillVocabulary {
  std::vector<std::string> tokens;
  std::vector<std::uint64_t> frequencies;  // number of profiles listing the skill

  std::size_t size() const { return tokens.size(); }
  std::optional<std::size_t> index_of(std::string_view token) const;
  bool contains(std::string_view token) const { return index_of(token).has_value(); }

  bool operator==(const SkillVocabulary&) const = default;
};

// Upper triangle (i <= j) of the symmetric profile-level co-occurrence
// counts. The diagonal holds per-skill profile frequencies.
struct CooccurrenceMatrix {
  std::size_t dimension = 0;
  std::uint64_t total_profiles = 0;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> counts;

  std::uint64_t at(std::size_t i, std::size_t j) const;

  bool operator==(const CooccurrenceMatrix&) const = default;
};

struct Cooccurrence {
  SkillVocabulary vocabulary;
  CooccurrenceMatrix matrix;
};

inline constexpr std::uint64_t kDefaultMinCount = 2;

// Each inner list is one profile's skill tokens; duplicates within a profile
// count once. Skills listed by fewer than min_count profiles are dropped.
// Throws an Error coded kTraining for an empty corpus or vocabulary.
Cooccurrence build_cooccurrence(const std::vector<std::vector<std::string>>& corpus,
                                std::uint64_t min_count = kDefaultMinCount);

void write_vocabulary(ByteWriter& w, const SkillVocabulary& vocab);
SkillVocabulary read_vocabulary(ByteReader& r);

}  // namespace talentrank::skillspace
