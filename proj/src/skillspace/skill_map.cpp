#include "talentrank/skillspace/skill_map.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "talentrank/common/csv.hpp"
#include "talentrank/common/error.hpp"
#include "talentrank/skillspace/dbscan.hpp"

namespace talentrank::skillspace {

std::size_t SkillMap2D::cluster_count() const {
  std::set<int> ids;
  for (int c : clusters) {
    if (c != kNoise) ids.insert(c);
  }
  return ids.size();
}

double default_perplexity(std::size_t n) {
  double cap = static_cast<double>(n > 1 ? n - 1 : 0) / 3.0 - 1.0;
  return std::max(1.0, std::min(30.0, cap));
}

SkillMap2D build_skill_map(const SkillEmbedding& emb, const MapParams& params) {
  SkillMap2D map;
  map.tokens = emb.vocabulary.tokens;
  map.perplexity = params.perplexity.value_or(default_perplexity(emb.size()));
  map.iterations = params.iterations;
  map.seed = params.seed;
  map.min_pts = params.min_pts;

  TsneParams tp;
  tp.perplexity = map.perplexity;
  tp.iterations = params.iterations;
  tp.seed = params.seed;
  map.coords = tsne(emb.vectors, emb.size(), emb.dimension, tp).coords;
  map.eps = params.eps.value_or(suggest_eps(map.coords, params.min_pts, params.eps_quantile));
  map.clusters = cluster_map(map.coords, map.eps, params.min_pts);
  return map;
}

std::string export_map_csv(const SkillMap2D& map) {
  std::string out = "token,x,y,cluster_id\n";
  for (std::size_t i = 0; i < map.tokens.size(); ++i) {
    out += csv::escape(map.tokens[i]);
    out += ',';
    out += csv::format_double(map.coords[i * 2]);
    out += ',';
    out += csv::format_double(map.coords[i * 2 + 1]);
    out += ',';
    out += std::to_string(map.clusters[i]);
    out += '\n';
  }
  return out;
}

std::string serialize(const SkillMap2D& map) {
  ByteWriter w;
  w.f64(map.perplexity);
  w.u64(map.iterations);
  w.u64(map.seed);
  w.f64(map.eps);
  w.u64(map.min_pts);
  w.u64(map.tokens.size());
  for (std::size_t i = 0; i < map.tokens.size(); ++i) {
    w.str(map.tokens[i]);
    w.f64(map.coords[i * 2]);
    w.f64(map.coords[i * 2 + 1]);
    w.i32(map.clusters[i]);
  }
  return seal(ArtifactKind::kSkillMap, w.bytes());
}

SkillMap2D deserialize_skill_map(std::string_view file_bytes) {
  auto payload = unseal(ArtifactKind::kSkillMap, file_bytes);
  ByteReader r(payload, kPayloadOffset);
  SkillMap2D map;
  map.perplexity = r.f64();
  map.iterations = r.u64();
  map.seed = r.u64();
  map.eps = r.f64();
  map.min_pts = r.u64();
  auto n = r.count(28);
  for (std::uint64_t i = 0; i < n; ++i) {
    map.tokens.push_back(r.str());
    auto at = r.offset();
    double x = r.f64();
    double y = r.f64();
    if (!std::isfinite(x) || !std::isfinite(y)) throw IntegrityError("non-finite coordinate", at);
    map.coords.push_back(x);
    map.coords.push_back(y);
    map.clusters.push_back(r.i32());
  }
  r.expect_end();
  return map;
}

}  // namespace talentrank::skillspace
