#include "talentrank/skillspace/embedding.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "talentrank/common/error.hpp"

namespace talentrank::skillspace {

SymmetricMatrix ppmi(const CooccurrenceMatrix& matrix) {
  SymmetricMatrix out;
  out.n = matrix.dimension;
  out.values.assign(out.n * out.n, 0.0);
  double total = static_cast<double>(matrix.total_profiles);
  for (const auto& [ij, c] : matrix.counts) {
    auto [i, j] = ij;
    double ci = static_cast<double>(matrix.at(i, i));
    double cj = static_cast<double>(matrix.at(j, j));
    if (c == 0 || ci == 0 || cj == 0) continue;
    double pmi = std::log(static_cast<double>(c) * total / (ci * cj));
    double v = std::max(0.0, pmi);
    out.values[i * out.n + j] = v;
    out.values[j * out.n + i] = v;
  }
  return out;
}

Eigenpairs truncated_eigen(const SymmetricMatrix& m, std::size_t d) {
  if (d == 0 || d > m.n) {
    throw Error(ErrorCode::kParameter, "dimension " + std::to_string(d) +
                                           " outside 1.." + std::to_string(m.n));
  }
  auto n = static_cast<Eigen::Index>(m.n);
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      a(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kTraining, "eigendecomposition did not converge");
  }
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return std::abs(values(x)) > std::abs(values(y));
  });

  Eigenpairs out;
  out.n = m.n;
  out.d = d;
  out.values.resize(d);
  out.vectors.assign(m.n * d, 0.0);
  for (std::size_t k = 0; k < d; ++k) {
    auto col = order[k];
    out.values[k] = values(col);
    Eigen::Index pivot = 0;
    for (Eigen::Index i = 1; i < n; ++i) {
      if (std::abs(vectors(i, col)) > std::abs(vectors(pivot, col))) pivot = i;
    }
    double sign = vectors(pivot, col) < 0 ? -1.0 : 1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      out.vectors[static_cast<std::size_t>(i) * d + k] = sign * vectors(i, col);
    }
  }
  return out;
}

SkillEmbedding train_embedding(const Cooccurrence& cooc, std::size_t d, std::uint64_t seed,
                               std::string corpus_hash) {
  const auto n = cooc.vocabulary.size();
  if (n == 0) throw Error(ErrorCode::kTraining, "cannot embed an empty vocabulary");
  if (d == 0 || d > n) {
    throw Error(ErrorCode::kParameter, "embedding dimension " + std::to_string(d) +
                                           " exceeds vocabulary size " + std::to_string(n));
  }
  auto pairs = truncated_eigen(ppmi(cooc.matrix), d);

  SkillEmbedding emb;
  emb.vocabulary = cooc.vocabulary;
  emb.dimension = d;
  emb.seed = seed;
  emb.corpus_hash = std::move(corpus_hash);
  emb.vectors.assign(n * d, 0.0);
  for (std::size_t k = 0; k < d; ++k) {
    double scale = std::sqrt(std::abs(pairs.values[k]));
    for (std::size_t i = 0; i < n; ++i) emb.vectors[i * d + k] = pairs.vectors[i * d + k] * scale;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double* row = emb.vectors.data() + i * d;
    double norm = std::sqrt(std::inner_product(row, row + d, row, 0.0));
    if (norm < 1e-12) {
      std::fill(row, row + d, 1.0 / std::sqrt(static_cast<double>(d)));
      continue;
    }
    for (std::size_t k = 0; k < d; ++k) row[k] /= norm;
  }
  return emb;
}

namespace {

std::size_t require_index(const SkillEmbedding& emb, std::string_view token) {
  auto i = emb.vocabulary.index_of(token);
  if (!i) {
    throw Error(ErrorCode::kOutOfVocabulary, "skill '" + std::string(token) + "' not in vocabulary");
  }
  return *i;
}

}  // namespace

double distance_by_index(const SkillEmbedding& emb, std::size_t a, std::size_t b) {
  if (a == b) return 0.0;
  const double* x = emb.row(a);
  const double* y = emb.row(b);
  double cos = 0.0;
  for (std::size_t k = 0; k < emb.dimension; ++k) cos += x[k] * y[k];
  return std::clamp(1.0 - cos, 0.0, 1.0);
}

double distance(const SkillEmbedding& emb, std::string_view a, std::string_view b) {
  return distance_by_index(emb, require_index(emb, a), require_index(emb, b));
}

std::vector<Neighbor> nearest(const SkillEmbedding& emb, std::string_view token, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::kParameter, "k must be at least 1");
  auto s = require_index(emb, token);
  std::vector<Neighbor> all;
  all.reserve(emb.size());
  for (std::size_t i = 0; i < emb.size(); ++i) {
    if (i == s) continue;
    double dist = distance_by_index(emb, s, i);
    all.push_back({emb.vocabulary.tokens[i], i, dist, (1.0 - dist) * 100.0});
  }
  auto take = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<long>(take), all.end(),
                    [](const Neighbor& x, const Neighbor& y) {
                      if (x.distance != y.distance) return x.distance < y.distance;
                      return x.index < y.index;
                    });
  all.resize(take);
  return all;
}

std::string serialize(const SkillEmbedding& emb) {
  ByteWriter w;
  w.str(emb.method);
  w.u64(emb.seed);
  w.str(emb.corpus_hash);
  write_vocabulary(w, emb.vocabulary);
  w.u64(emb.dimension);
  w.u64(emb.vectors.size());
  for (double v : emb.vectors) w.f64(v);
  return seal(ArtifactKind::kSkillEmbedding, w.bytes());
}

SkillEmbedding deserialize_embedding(std::string_view file_bytes) {
  auto payload = unseal(ArtifactKind::kSkillEmbedding, file_bytes);
  ByteReader r(payload, kPayloadOffset);
  SkillEmbedding emb;
  emb.method = r.str();
  emb.seed = r.u64();
  emb.corpus_hash = r.str();
  emb.vocabulary = read_vocabulary(r);
  emb.dimension = r.u64();
  auto at = r.offset();
  auto count = r.count(8);
  if (count != emb.vocabulary.size() * emb.dimension) {
    throw IntegrityError("embedding matrix size does not match vocabulary and dimension", at);
  }
  emb.vectors.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) emb.vectors.push_back(r.f64());
  r.expect_end();
  return emb;
}

}  // namespace talentrank::skillspace
