#include "talentrank/skillspace/skill_token.hpp"

#include "talentrank/common/error.hpp"
#include "talentrank/common/text.hpp"

namespace talentrank::skillspace {

namespace {

// Common bullet and dash glyphs (UTF-8) stripped like ASCII punctuation.
constexpr std::string_view kStripSequences[] = {"\xE2\x80\xA2", "\xC2\xB7", "\xE2\x80\x93",
                                                "\xE2\x80\x94", "\xE2\x96\xAA", "\xE2\x97\x8F"};

bool strippable_ascii(char c) { return text::is_ascii_punct(c) && c != '+' && c != '#'; }

}  // namespace

std::string normalize_skill(std::string_view input) {
  auto s = text::collapse_whitespace(text::to_lower(input));
  std::string_view v = s;
  bool changed = true;
  while (changed && !v.empty()) {
    changed = false;
    for (auto seq : kStripSequences) {
      if (v.starts_with(seq)) {
        v.remove_prefix(seq.size());
        changed = true;
      }
      if (v.ends_with(seq)) {
        v.remove_suffix(seq.size());
        changed = true;
      }
    }
    if (!v.empty() && text::is_space(v.front())) {
      v.remove_prefix(1);
      changed = true;
    }
    if (!v.empty() && text::is_space(v.back())) {
      v.remove_suffix(1);
      changed = true;
    }
    if (!v.empty() && strippable_ascii(v.front())) {
      bool dotted_name = v.front() == '.' && v.size() > 1 && text::is_alnum(v[1]);
      if (!dotted_name) {
        v.remove_prefix(1);
        changed = true;
      }
    }
    if (!v.empty() && strippable_ascii(v.back())) {
      v.remove_suffix(1);
      changed = true;
    }
  }
  if (v.empty()) {
    throw Error(ErrorCode::kNormalization,
                "skill '" + std::string(input) + "' is empty after normalization");
  }
  return std::string(v);
}

}  // namespace talentrank::skillspace
