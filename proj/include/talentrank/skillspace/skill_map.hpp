#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "talentrank/skillspace/embedding.hpp"
#include "talentrank/skillspace/tsne.hpp"

namespace talentrank::skillspace {

struct SkillMap2D {
  std::vector<std::string> tokens;
  std::vector<double> coords;  // |tokens| x 2
  std::vector<int> clusters;   // kNoise or 0..k-1
  double perplexity = 0.0;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  double eps = 0.0;
  std::size_t min_pts = 0;

  std::size_t cluster_count() const;
  bool operator==(const SkillMap2D&) const = default;
};

struct MapParams {
  // Unset: min(30, (|V| - 1) / 3 - 1), at least 1.
  std::optional<double> perplexity;
  std::size_t iterations = 1000;
  std::uint64_t seed = 0;
  // Unset: suggest_eps(coords, min_pts, eps_quantile).
  std::optional<double> eps;
  std::size_t min_pts = 3;
  double eps_quantile = 0.5;
};

double default_perplexity(std::size_t n);

SkillMap2D build_skill_map(const SkillEmbedding& emb, const MapParams& params);

// Header "token,x,y,cluster_id", one row per skill in vocabulary order.
std::string export_map_csv(const SkillMap2D& map);

std::string serialize(const SkillMap2D& map);
SkillMap2D deserialize_skill_map(std::string_view file_bytes);

}  // namespace talentrank::skillspace
