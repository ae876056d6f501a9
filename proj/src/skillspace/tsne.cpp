#include "talentrank/skillspace/tsne.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "talentrank/common/error.hpp"
#include "talentrank/common/random.hpp"

namespace talentrank::skillspace {

double calibrate_row(const std::vector<double>& sq_dist, std::size_t i, double perplexity,
                     double tolerance, std::size_t max_steps, std::vector<double>& row_out) {
  const std::size_t n = sq_dist.size();
  const double target = std::log(perplexity);
  row_out.assign(n, 0.0);
  double beta = 1.0;
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  double entropy = 0.0;
  for (std::size_t step = 0; step < max_steps; ++step) {
    // Shift by the smallest distance so exp() cannot underflow to all zeros.
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) dmin = std::min(dmin, sq_dist[j]);
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row_out[j] = j == i ? 0.0 : std::exp(-beta * (sq_dist[j] - dmin));
      sum += row_out[j];
    }
    double weighted = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row_out[j] /= sum;
      weighted += row_out[j] * (sq_dist[j] - dmin);
    }
    entropy = std::log(sum) + beta * weighted;
    double diff = entropy - target;
    if (std::abs(diff) < tolerance) break;
    if (diff > 0) {
      lo = beta;
      beta = std::isinf(hi) ? beta * 2.0 : (beta + hi) / 2.0;
    } else {
      hi = beta;
      beta = (beta + lo) / 2.0;
    }
  }
  return entropy;
}

Projection tsne(const std::vector<double>& points, std::size_t n, std::size_t dim,
                const TsneParams& params) {
  if (n < 4) throw Error(ErrorCode::kParameter, "t-SNE needs at least 4 points");
  if (!(params.perplexity > 0.0) ||
      !(params.perplexity < static_cast<double>(n - 1) / 3.0)) {
    throw Error(ErrorCode::kParameter,
                "perplexity must lie in (0, (n-1)/3) for n = " + std::to_string(n));
  }
  if (params.iterations == 0) throw Error(ErrorCode::kParameter, "iterations must be positive");
  if (points.size() != n * dim) throw Error(ErrorCode::kParameter, "point matrix size mismatch");

  std::vector<double> sq(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        double d = points[i * dim + k] - points[j * dim + k];
        s += d * d;
      }
      sq[i * n + j] = sq[j * n + i] = s;
    }
  }

  std::vector<double> p(n * n, 0.0);
  std::vector<double> dist_row(n), prob_row;
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(sq.begin() + static_cast<long>(i * n), sq.begin() + static_cast<long>((i + 1) * n),
              dist_row.begin());
    calibrate_row(dist_row, i, params.perplexity, params.entropy_tolerance,
                  params.max_search_steps, prob_row);
    std::copy(prob_row.begin(), prob_row.end(), p.begin() + static_cast<long>(i * n));
  }
  const double norm = 2.0 * static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = std::max((p[i * n + j] + p[j * n + i]) / norm, 1e-12);
      p[i * n + j] = p[j * n + i] = v;
    }
    p[i * n + i] = 0.0;
  }

  Rng rng(params.seed);
  std::vector<double> y(n * 2);
  for (auto& v : y) v = rng.normal() * 1e-4;
  std::vector<double> update(n * 2, 0.0), gains(n * 2, 1.0), grad(n * 2), num(n * n);

  Projection out;
  auto kl = [&](double qsum) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        double q = std::max(num[i * n + j] / qsum, 1e-12);
        total += p[i * n + j] * std::log(p[i * n + j] / q);
      }
    }
    return total;
  };
  auto affinities = [&] {
    double qsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      num[i * n + i] = 0.0;
      for (std::size_t j = i + 1; j < n; ++j) {
        double dx = y[i * 2] - y[j * 2];
        double dy = y[i * 2 + 1] - y[j * 2 + 1];
        double v = 1.0 / (1.0 + dx * dx + dy * dy);
        num[i * n + j] = num[j * n + i] = v;
        qsum += 2.0 * v;
      }
    }
    return qsum;
  };

  for (std::size_t it = 0; it < params.iterations; ++it) {
    bool exaggerate = it < params.exaggeration_iterations;
    double exag = exaggerate ? params.early_exaggeration : 1.0;
    double momentum = exaggerate ? 0.5 : 0.8;
    double qsum = affinities();
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        double mult = (exag * p[i * n + j] - num[i * n + j] / qsum) * num[i * n + j];
        grad[i * 2] += 4.0 * mult * (y[i * 2] - y[j * 2]);
        grad[i * 2 + 1] += 4.0 * mult * (y[i * 2 + 1] - y[j * 2 + 1]);
      }
    }
    for (std::size_t k = 0; k < y.size(); ++k) {
      bool same_sign = (grad[k] > 0) == (update[k] > 0);
      gains[k] = same_sign ? std::max(gains[k] * 0.8, 0.01) : gains[k] + 0.2;
      update[k] = momentum * update[k] - params.learning_rate * gains[k] * grad[k];
      y[k] += update[k];
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      mx += y[i * 2];
      my += y[i * 2 + 1];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i * 2] -= mx;
      y[i * 2 + 1] -= my;
    }
    std::size_t done = it + 1;
    if (done % 50 == 0 || done == params.iterations) {
      out.kl_history.emplace_back(done, kl(affinities()));
    }
  }
  out.coords = std::move(y);
  return out;
}

}  // namespace talentrank::skillspace
