#include "talentrank/common/text.hpp"

#include <algorithm>
#include <cstdint>

namespace talentrank::text {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_ascii_punct(char c) {
  auto u = static_cast<unsigned char>(c);
  return (u >= 33 && u <= 47) || (u >= 58 && u <= 64) || (u >= 91 && u <= 96) ||
         (u >= 123 && u <= 126);
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

bool is_alnum(char c) { return is_digit(c) || is_alpha(c); }

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending = false;
  for (char c : trim(s)) {
    if (is_space(c)) {
      pending = true;
      continue;
    }
    if (pending && !out.empty()) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char delimiter) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(delimiter, start);
    if (pos == std::string_view::npos) {
      parts.emplace_back(s.substr(start));
      return parts;
    }
    parts.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string> split_whitespace(std::string_view s) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) parts.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return parts;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

std::string normalize_key(std::string_view s) {
  std::string buf;
  buf.reserve(s.size());
  for (char c : s) {
    if (c == '.' || c == '\'') continue;
    if (is_ascii_punct(c)) {
      buf.push_back(' ');
    } else if (c >= 'A' && c <= 'Z') {
      buf.push_back(static_cast<char>(c - 'A' + 'a'));
    } else {
      buf.push_back(c);
    }
  }
  return collapse_whitespace(buf);
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

bool is_valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    auto c = static_cast<unsigned char>(s[i]);
    std::size_t n = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      n = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      n = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      n = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    for (std::size_t k = 1; k <= n; ++k) {
      if (i + k >= s.size()) return false;
      auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong encodings and surrogates.
    if ((n == 1 && cp < 0x80) || (n == 2 && cp < 0x800) || (n == 3 && cp < 0x10000) ||
        (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
      return false;
    }
    i += n + 1;
  }
  return true;
}

std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  for (char c : s) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

bool looks_like_email(std::string_view w) {
  auto at = w.find('@');
  if (at == std::string_view::npos || at == 0) return false;
  auto dot = w.find('.', at);
  return dot != std::string_view::npos && dot > at + 1 && dot + 1 < w.size();
}

namespace {

bool is_phone_separator(char c) {
  return c == ' ' || c == '+' || c == '(' || c == ')' || c == '-' || c == '.' || c == '/';
}

bool is_year_group(std::string_view g) {
  return g.size() == 4 && ((g[0] == '1' && g[1] == '9') || (g[0] == '2' && g[1] == '0'));
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> find_phone_runs(std::string_view s) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  std::size_t i = 0;
  while (i < s.size()) {
    bool opener = (s[i] == '+' || s[i] == '(') && i + 1 < s.size() && is_digit(s[i + 1]);
    if (!is_digit(s[i]) && !opener) {
      ++i;
      continue;
    }
    if (i > 0 && is_alnum(s[i - 1])) {
      while (i < s.size() && is_alnum(s[i])) ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && (is_digit(s[j]) || is_phone_separator(s[j]))) ++j;
    std::size_t end = j;
    while (end > i && !is_digit(s[end - 1]) && s[end - 1] != ')') --end;
    // A run glued to letters ("v2.0.1a") is not a phone number.
    bool glued = j < s.size() && is_alpha(s[j]) && end == j;
    std::size_t digits = 0;
    bool year_like = false;
    std::string group;
    for (std::size_t k = i; k <= end; ++k) {
      if (k < end && is_digit(s[k])) {
        group.push_back(s[k]);
        ++digits;
      } else {
        if (is_year_group(group)) year_like = true;
        group.clear();
      }
    }
    if (!glued && digits >= 7 && (!year_like || s[i] == '+' || s[i] == '(')) {
      runs.emplace_back(i, end);
    }
    i = j > i ? j : i + 1;
  }
  return runs;
}

std::vector<std::string> feature_tokens(std::string_view s) {
  std::string masked;
  masked.reserve(s.size());
  std::size_t pos = 0;
  for (auto [b, e] : find_phone_runs(s)) {
    masked.append(s.substr(pos, b - pos));
    masked.append(" \x01 ");
    pos = e;
  }
  masked.append(s.substr(pos));

  std::vector<std::string> out;
  for (const auto& raw : split_whitespace(masked)) {
    if (raw == "\x01") {
      out.emplace_back("<phone>");
      continue;
    }
    if (looks_like_email(raw)) {
      out.emplace_back("<email>");
      continue;
    }
    std::string word;
    auto flush = [&] {
      if (word.empty()) return;
      bool numeric = std::all_of(word.begin(), word.end(), is_digit);
      if (numeric) {
        out.emplace_back(is_year_group(word) ? "<year>" : "<num>");
      } else {
        out.push_back(word);
      }
      word.clear();
    };
    for (char c : raw) {
      if (is_alnum(c) || c == '+' || c == '#' || static_cast<unsigned char>(c) >= 0x80) {
        word.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
      } else {
        flush();
      }
    }
    flush();
  }
  return out;
}

bool contains_phrase(const std::vector<std::string>& haystack,
                     const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) !=
         haystack.end();
}

}  // namespace talentrank::text
