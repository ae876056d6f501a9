#include "talentrank/catalog/store.hpp"

#include <algorithm>

#include "talentrank/common/binary.hpp"
#include "talentrank/common/error.hpp"

namespace talentrank::catalog {

namespace fs = std::filesystem;

std::string serialize(const CandidateRecord& record) {
  ByteWriter w;
  extract::write_profile(w, record.profile);
  ingest::write_document(w, record.document);
  w.boolean(record.bookmarked);
  return seal(ArtifactKind::kCandidate, w.bytes());
}

CandidateRecord deserialize_candidate(std::string_view file_bytes) {
  auto payload = unseal(ArtifactKind::kCandidate, file_bytes);
  ByteReader r(payload, kPayloadOffset);
  CandidateRecord rec;
  rec.profile = extract::read_profile(r);
  rec.document = ingest::read_document(r);
  rec.bookmarked = r.boolean();
  r.expect_end();
  return rec;
}

namespace {

template <typename T, typename Load>
std::shared_ptr<const T> load_optional(const fs::path& path, Load load, ByteWriter& digest) {
  digest.str(path.filename().string());
  if (!fs::exists(path)) {
    digest.boolean(false);
    return nullptr;
  }
  auto bytes = read_file(path);
  digest.boolean(true);
  digest.u64(fnv1a64(bytes));
  try {
    return std::make_shared<const T>(load(bytes));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::vector<fs::path> files_with_extension(const fs::path& dir, const std::string& ext) {
  std::vector<fs::path> out;
  if (!fs::exists(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ext) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string job_fingerprint(const scoring::JobProfile& job) {
  return hex64(fnv1a64(serialize(job)));
}

}  // namespace

ModelSet load_models(const fs::path& root, const std::optional<fs::path>& config_file) {
  ModelSet m;
  auto dir = root / files::kModels;
  ByteWriter digest;
  m.sections = load_optional<ingest::SectionClassifierModel>(
      dir / files::kSections, [](const std::string& b) { return ingest::deserialize_section_model(b); },
      digest);
  m.embedding = load_optional<skillspace::SkillEmbedding>(
      dir / files::kEmbedding, [](const std::string& b) { return skillspace::deserialize_embedding(b); },
      digest);
  m.map = load_optional<skillspace::SkillMap2D>(
      dir / files::kMap, [](const std::string& b) { return skillspace::deserialize_skill_map(b); },
      digest);
  m.rankings = load_optional<scoring::UniversityRankingTable>(
      dir / files::kRankings, [](const std::string& b) { return scoring::deserialize_rankings(b); },
      digest);
  m.employers = load_optional<scoring::EmployerScoreTable>(
      dir / files::kEmployers,
      [&](const std::string& b) {
        std::string expected = m.embedding ? m.embedding->corpus_hash : std::string();
        return scoring::deserialize_employer_scores(b, expected, &m.warnings);
      },
      digest);
  auto conf = config_file ? *config_file : dir / files::kConfig;
  if (config_file || fs::exists(conf)) m.config = scoring::parse_config(read_file(conf));
  digest.str(scoring::to_config_text(m.config));
  m.version = hex64(fnv1a64(digest.bytes()));
  return m;
}

const CandidateRecord* Snapshot::candidate(const std::string& id) const {
  auto it = candidates.find(id);
  return it == candidates.end() ? nullptr : it->second.get();
}

const scoring::JobProfile* Snapshot::job(const std::string& id) const {
  auto it = jobs.find(id);
  return it == jobs.end() ? nullptr : &it->second;
}

std::vector<const extract::CandidateProfile*> Snapshot::profiles() const {
  std::vector<const extract::CandidateProfile*> out;
  out.reserve(candidates.size());
  for (const auto& [_, rec] : candidates) out.push_back(&rec->profile);
  return out;
}

std::vector<scoring::JobProfile> Snapshot::job_list() const {
  std::vector<scoring::JobProfile> out;
  for (const auto& [_, job] : jobs) out.push_back(job);
  return out;
}

scoring::ScoringContext Snapshot::scoring_context() const {
  scoring::ScoringContext ctx;
  if (!models) return ctx;
  ctx.embedding = models->embedding.get();
  ctx.rankings = models->rankings.get();
  ctx.employers = models->employers.get();
  ctx.config = models->config;
  ctx.models_version = models->version;
  return ctx;
}

std::unique_ptr<CandidateStore> CandidateStore::open(const fs::path& root,
                                                     std::optional<fs::path> config_file) {
  std::unique_ptr<CandidateStore> store(new CandidateStore(root, std::move(config_file)));
  try {
    fs::create_directories(root / files::kCandidates);
    fs::create_directories(root / files::kJobs);
    fs::create_directories(root / files::kModels);
  } catch (const fs::filesystem_error& e) {
    throw Error(ErrorCode::kIo, "cannot create store at '" + root.string() + "': " + e.what());
  }
  auto snap = std::make_shared<Snapshot>();
  for (const auto& path : files_with_extension(root / files::kCandidates, ".cand")) {
    try {
      auto rec = std::make_shared<const CandidateRecord>(deserialize_candidate(read_file(path)));
      auto id = rec->profile.candidate_id;
      snap->candidates.emplace(std::move(id), std::move(rec));
    } catch (const Error& e) {
      throw Error(e.code(), path.string() + ": " + e.what());
    }
  }
  for (const auto& path : files_with_extension(root / files::kJobs, ".job")) {
    try {
      auto job = scoring::deserialize_job(read_file(path));
      auto id = job.job_id;
      snap->jobs.emplace(std::move(id), std::move(job));
    } catch (const Error& e) {
      throw Error(e.code(), path.string() + ": " + e.what());
    }
  }
  snap->models = std::make_shared<const ModelSet>(load_models(root, store->config_file_));
  store->current_ = std::move(snap);
  return store;
}

std::shared_ptr<const Snapshot> CandidateStore::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return current_;
}

std::shared_ptr<Snapshot> CandidateStore::copy_current() const {
  auto next = std::make_shared<Snapshot>(*snapshot());
  ++next->generation;
  return next;
}

void CandidateStore::publish(std::shared_ptr<Snapshot> next) {
  std::lock_guard lock(snapshot_mutex_);
  current_ = std::move(next);
}

void CandidateStore::add_candidate(CandidateRecord record) {
  std::lock_guard lock(writer_);
  auto next = copy_current();
  const auto id = record.profile.candidate_id;
  if (next->candidates.count(id)) {
    throw Error(ErrorCode::kConflict, "candidate '" + id + "' (source '" +
                                          record.profile.source_document + "') already stored");
  }
  write_file_atomic(root_ / files::kCandidates / (id + ".cand"), serialize(record));
  next->candidates.emplace(id, std::make_shared<const CandidateRecord>(std::move(record)));
  publish(std::move(next));
}

void CandidateStore::set_bookmark(const std::string& candidate_id, bool bookmarked) {
  std::lock_guard lock(writer_);
  auto next = copy_current();
  auto it = next->candidates.find(candidate_id);
  if (it == next->candidates.end()) {
    throw Error(ErrorCode::kNotFound, "unknown candidate '" + candidate_id + "'");
  }
  auto rec = *it->second;
  rec.bookmarked = bookmarked;
  write_file_atomic(root_ / files::kCandidates / (candidate_id + ".cand"), serialize(rec));
  it->second = std::make_shared<const CandidateRecord>(std::move(rec));
  publish(std::move(next));
}

void CandidateStore::create_job(scoring::JobProfile job) {
  scoring::normalize_job(job);
  std::lock_guard lock(writer_);
  auto next = copy_current();
  if (next->jobs.count(job.job_id)) {
    throw Error(ErrorCode::kConflict, "job '" + job.job_id + "' already exists");
  }
  write_file_atomic(root_ / files::kJobs / (job.job_id + ".job"), serialize(job));
  auto id = job.job_id;
  next->jobs.emplace(std::move(id), std::move(job));
  publish(std::move(next));
}

void CandidateStore::update_job(scoring::JobProfile job) {
  scoring::normalize_job(job);
  std::lock_guard lock(writer_);
  auto next = copy_current();
  auto it = next->jobs.find(job.job_id);
  if (it == next->jobs.end()) throw Error(ErrorCode::kNotFound, "unknown job '" + job.job_id + "'");
  write_file_atomic(root_ / files::kJobs / (job.job_id + ".job"), serialize(job));
  it->second = std::move(job);
  publish(std::move(next));
}

void CandidateStore::delete_job(const std::string& job_id) {
  std::lock_guard lock(writer_);
  auto next = copy_current();
  if (!next->jobs.erase(job_id)) throw Error(ErrorCode::kNotFound, "unknown job '" + job_id + "'");
  fs::remove(root_ / files::kJobs / (job_id + ".job"));
  publish(std::move(next));
}

void CandidateStore::reload_models() {
  std::lock_guard lock(writer_);
  auto models = std::make_shared<const ModelSet>(load_models(root_, config_file_));
  auto next = copy_current();
  next->models = std::move(models);
  publish(std::move(next));
}

scoring::ScoreCard CandidateStore::score(const Snapshot& snapshot,
                                         const extract::CandidateProfile& profile,
                                         const scoring::JobProfile& job) const {
  auto ctx = snapshot.scoring_context();
  auto key = profile.candidate_id + '\n' + job_fingerprint(job) + '\n' + ctx.models_version;
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  auto card = scoring::score_candidate(profile, job, ctx);
  std::lock_guard lock(cache_mutex_);
  cache_.emplace(key, card);
  return card;
}

}  // namespace talentrank::catalog
