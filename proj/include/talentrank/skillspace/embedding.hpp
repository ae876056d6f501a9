#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "talentrank/skillspace/cooccurrence.hpp"

namespace talentrank::skillspace {

inline constexpr std::size_t kDefaultDimension = 100;
inline constexpr std::string_view kEmbeddingMethod = "ppmi-eigen/1";

// Dense symmetric matrix, row-major.
struct SymmetricMatrix {
  std::size_t n = 0;
  std::vector<double> values;

  double operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

// PPMI(i,j) = max(0, log(c_ij * N / (c_i * c_j))) with N the profile count
// and c_i the diagonal frequency. Zero counts give 0.
SymmetricMatrix ppmi(const CooccurrenceMatrix& matrix);

// Leading d eigenpairs of a symmetric matrix by absolute eigenvalue
// (ties: lower original index first). Each eigenvector's largest-magnitude
// entry is made positive so results do not depend on solver sign choices.
struct Eigenpairs {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<double> values;   // d
  std::vector<double> vectors;  // n x d, row-major; column k pairs with values[k]
};
Eigenpairs truncated_eigen(const SymmetricMatrix& m, std::size_t d);

struct SkillEmbedding {
  SkillVocabulary vocabulary;
  std::size_t dimension = 0;
  std::vector<double> vectors;  // |V| x dimension, row-major, unit rows
  std::uint64_t seed = 0;
  std::string method{kEmbeddingMethod};
  std::string corpus_hash;

  std::size_t size() const { return vocabulary.size(); }
  const double* row(std::size_t i) const { return vectors.data() + i * dimension; }

  bool operator==(const SkillEmbedding&) const = default;
};

// Rows are U_k * sqrt(|lambda_k|) over the truncated eigenpairs of the PPMI
// matrix, scaled to unit length. A row with no PPMI mass (a skill present in
// every profile) becomes the uniform direction. The seed is recorded only;
// the factorization is closed-form. Throws kParameter when d is 0 or > |V|.
SkillEmbedding train_embedding(const Cooccurrence& cooc, std::size_t d, std::uint64_t seed,
                               std::string corpus_hash = {});

// clamp(1 - cos, 0, 1); 0 for identical tokens. Throws kOutOfVocabulary.
double distance(const SkillEmbedding& emb, std::string_view a, std::string_view b);
double distance_by_index(const SkillEmbedding& emb, std::size_t a, std::size_t b);

struct Neighbor {
  std::string token;
  std::size_t index = 0;
  double distance = 0.0;
  double similarity = 0.0;  // (1 - distance) * 100
};

// The k closest other skills, ties by vocabulary index. k is capped at |V|-1.
std::vector<Neighbor> nearest(const SkillEmbedding& emb, std::string_view token, std::size_t k);

std::string serialize(const SkillEmbedding& emb);
SkillEmbedding deserialize_embedding(std::string_view file_bytes);

}  // namespace talentrank::skillspace
