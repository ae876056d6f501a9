#include "talentrank/skillspace/dbscan.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "talentrank/common/error.hpp"

namespace talentrank::skillspace {

namespace {

double dist(const std::vector<double>& c, std::size_t a, std::size_t b) {
  return std::hypot(c[a * 2] - c[b * 2], c[a * 2 + 1] - c[b * 2 + 1]);
}

std::vector<std::size_t> region(const std::vector<double>& c, std::size_t n, std::size_t i,
                                double eps) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < n; ++j) {
    if (dist(c, i, j) <= eps) out.push_back(j);
  }
  return out;
}

}  // namespace

std::vector<int> cluster_map(const std::vector<double>& coords, double eps, std::size_t min_pts) {
  if (!(eps > 0.0)) throw Error(ErrorCode::kParameter, "eps must be positive");
  if (min_pts < 1) throw Error(ErrorCode::kParameter, "min_pts must be at least 1");
  if (coords.size() % 2 != 0) throw Error(ErrorCode::kParameter, "coordinates must be pairs");
  for (double v : coords) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kParameter, "non-finite coordinate");
  }
  const std::size_t n = coords.size() / 2;
  std::vector<int> label(n, kNoise);
  std::vector<bool> visited(n, false);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (visited[i]) continue;
    visited[i] = true;
    auto seeds = region(coords, n, i, eps);
    if (seeds.size() < min_pts) continue;
    int id = next++;
    label[i] = id;
    std::deque<std::size_t> queue(seeds.begin(), seeds.end());
    while (!queue.empty()) {
      auto j = queue.front();
      queue.pop_front();
      if (label[j] == kNoise) label[j] = id;
      if (visited[j]) continue;
      visited[j] = true;
      auto nb = region(coords, n, j, eps);
      if (nb.size() >= min_pts) queue.insert(queue.end(), nb.begin(), nb.end());
    }
  }
  return label;
}

double suggest_eps(const std::vector<double>& coords, std::size_t min_pts, double quantile) {
  const std::size_t n = coords.size() / 2;
  if (n == 0 || min_pts == 0) throw Error(ErrorCode::kParameter, "no points for eps estimate");
  std::size_t k = std::min(min_pts, n) - 1;
  std::vector<double> kth;
  kth.reserve(n);
  std::vector<double> row(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) row[j] = dist(coords, i, j);
    std::nth_element(row.begin(), row.begin() + static_cast<long>(k), row.end());
    kth.push_back(row[k]);
  }
  std::sort(kth.begin(), kth.end());
  auto pos = static_cast<std::size_t>(std::clamp(quantile, 0.0, 1.0) * static_cast<double>(n - 1));
  return std::max(kth[pos], 1e-9);
}

}  // namespace talentrank::skillspace
