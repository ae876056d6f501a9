#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "talentrank/extract/profile.hpp"
#include "talentrank/ingest/layout.hpp"
#include "talentrank/ingest/section_classifier.hpp"
#include "talentrank/scoring/score.hpp"
#include "talentrank/skillspace/skill_map.hpp"

namespace talentrank::catalog {

struct CandidateRecord {
  extract::CandidateProfile profile;
  ingest::LayoutDocument document;
  bool bookmarked = false;

  bool operator==(const CandidateRecord&) const = default;
};

std::string serialize(const CandidateRecord& record);
CandidateRecord deserialize_candidate(std::string_view file_bytes);

// Store directory layout:
//   candidates/<candidate_id>.cand   profile, layout document, bookmark
//   jobs/<job_id>.job                job profiles and templates
//   models/sections.model            section classifier
//   models/skills.emb                skill embedding
//   models/skills.map                2-D skill map with clusters
//   models/rankings.tab              university rankings (import-rankings)
//   models/employers.tab             employer scores
//   models/scoring.conf              optional scoring config text
namespace files {
inline constexpr const char* kCandidates = "candidates";
inline constexpr const char* kJobs = "jobs";
inline constexpr const char* kModels = "models";
inline constexpr const char* kSections = "sections.model";
inline constexpr const char* kEmbedding = "skills.emb";
inline constexpr const char* kMap = "skills.map";
inline constexpr const char* kRankings = "rankings.tab";
inline constexpr const char* kEmployers = "employers.tab";
inline constexpr const char* kConfig = "scoring.conf";
}  // namespace files

// Any member may be null when the artifact has not been produced yet.
struct ModelSet {
  std::shared_ptr<const ingest::SectionClassifierModel> sections;
  std::shared_ptr<const skillspace::SkillEmbedding> embedding;
  std::shared_ptr<const skillspace::SkillMap2D> map;
  std::shared_ptr<const scoring::UniversityRankingTable> rankings;
  std::shared_ptr<const scoring::EmployerScoreTable> employers;
  scoring::ScoringConfig config;
  // Hash over every model file and the effective config.
  std::string version;
  std::vector<std::string> warnings;
};

// Reads models/ under a store root. A config_file, when given, replaces
// models/scoring.conf.
ModelSet load_models(const std::filesystem::path& root,
                     const std::optional<std::filesystem::path>& config_file = std::nullopt);

// Immutable, version-consistent view handed to readers.
struct Snapshot {
  std::uint64_t generation = 0;
  std::map<std::string, std::shared_ptr<const CandidateRecord>> candidates;
  std::map<std::string, scoring::JobProfile> jobs;
  std::shared_ptr<const ModelSet> models;

  const CandidateRecord* candidate(const std::string& id) const;
  const scoring::JobProfile* job(const std::string& id) const;
  std::vector<const extract::CandidateProfile*> profiles() const;  // id order
  std::vector<scoring::JobProfile> job_list() const;               // id order
  scoring::ScoringContext scoring_context() const;
};

// File-backed store. Readers take snapshot() and never see partial updates;
// mutations serialize on an internal writer lock, persist, then publish a
// new snapshot.
class CandidateStore {
 public:
  // Creates missing directories. Every file is validated before the store is
  // returned; a corrupt or future-version file throws and nothing is loaded.
  static std::unique_ptr<CandidateStore> open(
      const std::filesystem::path& root,
      std::optional<std::filesystem::path> config_file = std::nullopt);

  const std::filesystem::path& root() const { return root_; }
  std::shared_ptr<const Snapshot> snapshot() const;

  // kConflict when the candidate id exists.
  void add_candidate(CandidateRecord record);
  // kNotFound for unknown ids.
  void set_bookmark(const std::string& candidate_id, bool bookmarked);

  // kConflict on duplicate create, kNotFound on update/delete of unknown ids.
  void create_job(scoring::JobProfile job);
  void update_job(scoring::JobProfile job);
  void delete_job(const std::string& job_id);

  // Re-reads models/ and publishes them.
  void reload_models();

  // Score cards cached per (candidate, job content, models version).
  scoring::ScoreCard score(const Snapshot& snapshot, const extract::CandidateProfile& profile,
                           const scoring::JobProfile& job) const;

 private:
  CandidateStore(std::filesystem::path root, std::optional<std::filesystem::path> config_file)
      : root_(std::move(root)), config_file_(std::move(config_file)) {}

  void publish(std::shared_ptr<Snapshot> next);
  std::shared_ptr<Snapshot> copy_current() const;

  std::filesystem::path root_;
  std::optional<std::filesystem::path> config_file_;
  std::mutex writer_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const Snapshot> current_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::string, scoring::ScoreCard> cache_;
};

}  // namespace talentrank::catalog
