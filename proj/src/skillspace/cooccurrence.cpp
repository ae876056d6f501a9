#include "talentrank/skillspace/cooccurrence.hpp"

#include <algorithm>
#include <set>

#include "talentrank/common/error.hpp"

namespace talentrank::skillspace {

std::optional<std::size_t> SkillVocabulary::index_of(std::string_view token) const {
  auto it = std::lower_bound(tokens.begin(), tokens.end(), token);
  if (it == tokens.end() || *it != token) return std::nullopt;
  return static_cast<std::size_t>(it - tokens.begin());
}

std::uint64_t CooccurrenceMatrix::at(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  auto it = counts.find({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
  return it == counts.end() ? 0 : it->second;
}

Cooccurrence build_cooccurrence(const std::vector<std::vector<std::string>>& corpus,
                                std::uint64_t min_count) {
  if (corpus.empty()) throw Error(ErrorCode::kTraining, "skill corpus is empty");

  std::vector<std::set<std::string>> profiles;
  profiles.reserve(corpus.size());
  std::map<std::string, std::uint64_t> freq;
  for (const auto& skills : corpus) {
    std::set<std::string> unique(skills.begin(), skills.end());
    for (const auto& s : unique) ++freq[s];
    profiles.push_back(std::move(unique));
  }

  Cooccurrence out;
  for (const auto& [token, n] : freq) {
    if (n >= min_count) {
      out.vocabulary.tokens.push_back(token);
      out.vocabulary.frequencies.push_back(n);
    }
  }
  if (out.vocabulary.tokens.empty()) {
    throw Error(ErrorCode::kTraining,
                "skill vocabulary is empty (min_count " + std::to_string(min_count) + ")");
  }

  auto& m = out.matrix;
  m.dimension = out.vocabulary.size();
  m.total_profiles = corpus.size();
  std::vector<std::uint32_t> ids;
  for (const auto& skills : profiles) {
    ids.clear();
    for (const auto& s : skills) {
      if (auto i = out.vocabulary.index_of(s)) ids.push_back(static_cast<std::uint32_t>(*i));
    }
    // std::set iteration order matches vocabulary order, so ids ascend.
    for (std::size_t a = 0; a < ids.size(); ++a) {
      for (std::size_t b = a; b < ids.size(); ++b) ++m.counts[{ids[a], ids[b]}];
    }
  }
  return out;
}

void write_vocabulary(ByteWriter& w, const SkillVocabulary& vocab) {
  w.u64(vocab.tokens.size());
  for (std::size_t i = 0; i < vocab.tokens.size(); ++i) {
    w.str(vocab.tokens[i]);
    w.u64(vocab.frequencies[i]);
  }
}

SkillVocabulary read_vocabulary(ByteReader& r) {
  SkillVocabulary v;
  auto at = r.offset();
  auto n = r.count(16);
  for (std::uint64_t i = 0; i < n; ++i) {
    v.tokens.push_back(r.str());
    v.frequencies.push_back(r.u64());
  }
  if (!std::is_sorted(v.tokens.begin(), v.tokens.end()) ||
      std::adjacent_find(v.tokens.begin(), v.tokens.end()) != v.tokens.end()) {
    throw IntegrityError("skill vocabulary not strictly sorted", at);
  }
  return v;
}

}  // namespace talentrank::skillspace
