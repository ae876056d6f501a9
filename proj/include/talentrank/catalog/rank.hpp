#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "talentrank/scoring/score.hpp"
#include "talentrank/skillspace/cooccurrence.hpp"

namespace talentrank::catalog {

enum class SortKind { kOverall, kEducation, kWork, kSkills, kPerSkill, kScoreChart };

struct SortMode {
  SortKind kind = SortKind::kOverall;
  std::string skill;  // kPerSkill only

  bool operator==(const SortMode&) const = default;
};

// "overall", "education", "work", "skills", "scorechart" or
// "skill:<token>". Throws kParameter otherwise.
SortMode parse_sort_mode(std::string_view text);
std::string to_string(const SortMode& mode);

struct TopDecileFlags {
  bool education = false;
  bool work = false;
  bool skills = false;
  bool overall = false;
  std::vector<bool> per_skill;  // one per desired skill, job order

  bool operator==(const TopDecileFlags&) const = default;
};

struct RankedEntry {
  scoring::ScoreCard card;
  TopDecileFlags flags;
};

struct RankedList {
  SortMode mode;
  std::vector<std::string> desired_skills;
  std::vector<RankedEntry> entries;
};

// ceil(n / 10).
std::size_t top_decile_count(std::size_t n);

// Orders score cards by the mode's column, highest first. ScoreChart sorts by
// skills, then work. Every mode breaks remaining ties by candidate id.
// Each column flags exactly top_decile_count(n) entries, chosen by the same
// column-then-id order. Throws kParameter for a per-skill mode naming a skill
// that is not desired.
RankedList rank_cards(std::vector<scoring::ScoreCard> cards,
                      const std::vector<std::string>& desired_skills, const SortMode& mode);

// Scores each profile against the job, then rank_cards.
RankedList rank_candidates(const std::vector<const extract::CandidateProfile*>& profiles,
                           const scoring::JobProfile& job, const scoring::ScoringContext& ctx,
                           const SortMode& mode);

struct Suggestion {
  std::string token;
  std::uint64_t frequency = 0;
};

// Vocabulary tokens starting with the lowercased, whitespace-collapsed
// prefix, by corpus frequency then token. Throws kParameter for k == 0.
std::vector<Suggestion> autocomplete_skills(std::string_view prefix,
                                            const skillspace::SkillVocabulary& vocab,
                                            std::size_t k);

}  // namespace talentrank::catalog
