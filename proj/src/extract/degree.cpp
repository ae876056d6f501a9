#include "talentrank/extract/degree.hpp"

#include <limits>
#include <string>
#include <vector>

#include "talentrank/common/text.hpp"

namespace talentrank::extract {

namespace {

constexpr std::size_t kMaxEdits = 2;
constexpr std::size_t kMinFuzzyLength = 5;

struct Word {
  std::string text;
  std::size_t token;  // index of the whitespace token it came from
};

// Same word sequence as split_whitespace(normalize_key(s)), remembering
// which original token each word belongs to.
std::vector<Word> normalized_words(std::string_view s) {
  std::vector<Word> words;
  auto tokens = text::split_whitespace(s);
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    for (auto& w : text::split_whitespace(text::normalize_key(tokens[t]))) {
      words.push_back({std::move(w), t});
    }
  }
  return words;
}

std::string window_text(const std::vector<Word>& words, std::size_t i, std::size_t n) {
  std::string out;
  for (std::size_t k = 0; k < n; ++k) {
    if (k) out.push_back(' ');
    out += words[i + k].text;
  }
  return out;
}

}  // namespace

std::optional<DegreeMatch> match_degree(std::string_view raw, const Gazetteers& gazetteers,
                                        std::size_t min_form_length) {
  auto words = normalized_words(raw);
  if (words.empty()) return std::nullopt;

  std::optional<DegreeMatch> best;
  std::size_t best_pos = std::numeric_limits<std::size_t>::max();
  std::size_t best_len = 0;
  for (const auto& [form, level] : gazetteers.degree_forms) {
    if (form.size() < min_form_length) continue;
    auto n = text::split_whitespace(form).size();
    if (n > words.size()) continue;
    for (std::size_t i = 0; i + n <= words.size(); ++i) {
      if (window_text(words, i, n) != form) continue;
      if (i < best_pos || (i == best_pos && form.size() > best_len)) {
        best_pos = i;
        best_len = form.size();
        best = DegreeMatch{level, words[i].token, words[i + n - 1].token, false};
      }
      break;
    }
  }
  if (best) return best;

  std::size_t best_dist = kMaxEdits + 1;
  for (const auto& [form, level] : gazetteers.degree_forms) {
    if (form.size() < kMinFuzzyLength) continue;
    auto n = text::split_whitespace(form).size();
    if (n > words.size()) continue;
    for (std::size_t i = 0; i + n <= words.size(); ++i) {
      auto d = text::edit_distance(window_text(words, i, n), form);
      if (d < best_dist) {
        best_dist = d;
        best = DegreeMatch{level, words[i].token, words[i + n - 1].token, true};
      }
    }
  }
  return best;
}

DegreeLevel normalize_degree(std::string_view text, const Gazetteers& gazetteers) {
  auto m = match_degree(text, gazetteers);
  return m ? m->level : DegreeLevel::kOther;
}

}  // namespace talentrank::extract
