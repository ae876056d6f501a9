#pragma once

#include <cstddef>
#include <vector>

namespace talentrank::skillspace {

inline constexpr int kNoise = -1;

// Density clustering of 2-D points (n x 2, row-major). A point is core when
// at least min_pts points, itself included, lie within eps (inclusive).
// Clusters are numbered 0..k-1 in order of their first core point; border
// points join the first cluster that reaches them; the rest is kNoise.
// Throws kParameter for eps <= 0, min_pts < 1 or non-finite coordinates.
std::vector<int> cluster_map(const std::vector<double>& coords, double eps, std::size_t min_pts);

// Eps heuristic: the given quantile of every point's distance to its
// min_pts-th nearest neighbour (itself counted).
double suggest_eps(const std::vector<double>& coords, std::size_t min_pts, double quantile = 0.5);

}  // namespace talentrank::skillspace
