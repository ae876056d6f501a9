#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "talentrank/common/date.hpp"
#include "talentrank/extract/profile.hpp"
#include "talentrank/ingest/layout.hpp"

namespace talentrank::skillspace {

// Correlation structure for synthetic profiles, read from a JSON data file
// (data/corpus_templates.json). Tiers run 0 (best) upward; a profile's
// university and employers share its tier with probability tier_affinity.
struct CorpusTemplates {
  struct SkillGroup {
    std::string name;
    std::vector<std::string> skills;
    std::vector<std::string> titles;
  };
  struct University {
    std::string name;
    int tier = 0;
    std::optional<double> the;
    std::optional<double> qs;
  };
  struct Employer {
    std::string name;
    int tier = 0;
  };

  std::vector<SkillGroup> skill_groups;
  std::vector<University> universities;
  std::vector<Employer> employers;
  std::map<DegreeLevel, double> degree_weights;
  std::map<DegreeLevel, std::vector<std::string>> degree_names;
  std::vector<std::string> fields;
  std::vector<std::string> first_names;
  std::vector<std::string> last_names;
  std::vector<std::string> locations;
  std::size_t min_skills = 4;
  std::size_t max_skills = 8;
  double cross_group_probability = 0.25;
  std::size_t min_jobs = 1;
  std::size_t max_jobs = 4;
  double tier_affinity = 0.6;
};

// Throws an Error coded kParse on malformed or incomplete templates.
CorpusTemplates parse_corpus_templates(std::string_view json_text);

// skill group of each profile is recorded in its first warning slot-free:
// use planted_group() to recover it. Deterministic per seed.
std::vector<extract::CandidateProfile> generate_corpus(const CorpusTemplates& templates,
                                                       std::size_t n, std::uint64_t seed,
                                                       const Date& reference_date);

// THE and QS tables ("institution,score" with header) for the template
// universities that carry a score from that source.
struct RankingFiles {
  std::string the_csv;
  std::string qs_csv;
};
RankingFiles ranking_files(const CorpusTemplates& templates);

// Planted partition: `groups` disjoint skill groups of `group_size` tokens
// ("g<group>-s<index>"); each profile draws skills_per_profile distinct
// tokens from one uniformly chosen group.
struct PlantedCorpus {
  std::vector<std::vector<std::string>> profiles;
  std::map<std::string, std::size_t> group_of;
};
PlantedCorpus planted_corpus(std::size_t groups, std::size_t group_size, std::size_t profiles,
                             std::size_t skills_per_profile, std::uint64_t seed);

// Lays a profile out as a one-page block-table résumé: name headline,
// contact lines, then Education, Work Experience and Skills sections.
ingest::LayoutDocument render_resume(const extract::CandidateProfile& profile);

// One profile per line, each a JSON object; the corpus file format.
std::string corpus_to_jsonl(const std::vector<extract::CandidateProfile>& corpus);
std::vector<extract::CandidateProfile> corpus_from_jsonl(std::string_view text);

// Skill tokens of every profile, the input of build_cooccurrence.
std::vector<std::vector<std::string>> skill_sets(
    const std::vector<extract::CandidateProfile>& corpus);

}  // namespace talentrank::skillspace
