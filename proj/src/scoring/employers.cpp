#include "talentrank/scoring/employers.hpp"

#include <cmath>

#include "talentrank/common/error.hpp"
#include "talentrank/scoring/score.hpp"

namespace talentrank::scoring {

double EmployerScoreTable::score(std::string_view key) const {
  auto it = entries.find(std::string(key));
  return it == entries.end() ? 0.0 : it->second.score;
}

bool EmployerScoreTable::contains(std::string_view key) const {
  return entries.count(std::string(key)) > 0;
}

std::string corpus_hash(const std::vector<extract::CandidateProfile>& corpus) {
  ByteWriter w;
  w.u64(corpus.size());
  for (const auto& p : corpus) extract::write_profile(w, p);
  return hex64(fnv1a64(w.bytes()));
}

EmployerScoreTable build_employer_scores(const std::vector<extract::CandidateProfile>& corpus,
                                         const UniversityRankingTable& rankings,
                                         const ScoringConfig& config) {
  if (corpus.empty()) throw Error(ErrorCode::kParameter, "employer scores need a non-empty corpus");
  std::map<std::string, std::pair<double, std::uint64_t>> sums;
  for (const auto& p : corpus) {
    if (p.works.empty()) continue;
    const auto* recent = &p.works.front();
    for (const auto& w : p.works) {
      if (w.span.start > recent->span.start) recent = &w;
    }
    if (recent->employer_key.empty()) continue;
    auto& [sum, count] = sums[recent->employer_key];
    sum += education_score(p, rankings, config);
    ++count;
  }
  EmployerScoreTable table;
  table.corpus_hash = corpus_hash(corpus);
  for (const auto& [key, sc] : sums) {
    table.entries[key] = {sc.first / static_cast<double>(sc.second), sc.second};
  }
  return table;
}

std::string serialize(const EmployerScoreTable& table) {
  ByteWriter w;
  w.str(table.corpus_hash);
  w.u64(table.entries.size());
  for (const auto& [key, s] : table.entries) {
    w.str(key);
    w.f64(s.score);
    w.u64(s.profiles);
  }
  return seal(ArtifactKind::kEmployerScores, w.bytes());
}

EmployerScoreTable deserialize_employer_scores(std::string_view file_bytes,
                                               std::string_view expected_corpus_hash,
                                               std::vector<std::string>* warnings) {
  auto payload = unseal(ArtifactKind::kEmployerScores, file_bytes);
  ByteReader r(payload, kPayloadOffset);
  EmployerScoreTable table;
  table.corpus_hash = r.str();
  auto n = r.count(24);
  for (std::uint64_t i = 0; i < n; ++i) {
    auto at = r.offset();
    auto key = r.str();
    EmployerStats s;
    s.score = r.f64();
    s.profiles = r.u64();
    if (!(s.score >= 0.0 && s.score <= 100.0) || s.profiles == 0) {
      throw IntegrityError("employer entry out of range", at);
    }
    if (!table.entries.emplace(std::move(key), s).second) {
      throw IntegrityError("duplicate employer key", at);
    }
  }
  r.expect_end();
  if (!expected_corpus_hash.empty() && expected_corpus_hash != table.corpus_hash && warnings) {
    warnings->push_back("employer scores were built from corpus " + table.corpus_hash +
                        ", current corpus is " + std::string(expected_corpus_hash));
  }
  return table;
}

}  // namespace talentrank::scoring
