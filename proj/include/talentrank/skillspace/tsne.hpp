#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace talentrank::skillspace {

struct TsneParams {
  double perplexity = 30.0;
  std::size_t iterations = 1000;
  std::uint64_t seed = 0;
  double learning_rate = 200.0;
  double early_exaggeration = 12.0;
  std::size_t exaggeration_iterations = 250;
  // Perplexity calibration: |H - log(perplexity)| tolerance and step cap.
  double entropy_tolerance = 1e-5;
  std::size_t max_search_steps = 50;
};

struct Projection {
  std::vector<double> coords;  // n x 2, row-major
  // (iteration, KL(P || Q)) every 50 iterations and after the last one,
  // always against the unexaggerated P.
  std::vector<std::pair<std::size_t, double>> kl_history;
};

// Exact t-SNE of n points in dim dimensions (row-major). Gaussian input
// affinities with per-point bandwidth found by bisection, symmetrized;
// Student-t output affinities; momentum gradient descent with per-parameter
// gains. Throws kParameter unless n >= 4 and 0 < perplexity < (n - 1) / 3.
Projection tsne(const std::vector<double>& points, std::size_t n, std::size_t dim,
                const TsneParams& params);

// Conditional affinities p_{j|i} for one row of squared distances (entry i
// ignored). Exposed for tests; returns the achieved entropy in nats.
double calibrate_row(const std::vector<double>& sq_dist, std::size_t i, double perplexity,
                     double tolerance, std::size_t max_steps, std::vector<double>& row_out);

}  // namespace talentrank::skillspace
