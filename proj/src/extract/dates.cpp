#include "talentrank/extract/dates.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <system_error>
#include <vector>

#include "talentrank/common/error.hpp"
#include "talentrank/common/text.hpp"

namespace talentrank::extract {

namespace {

// Either a calendar interval or an open end ("Present").
struct Atom {
  bool open = false;
  Date first;
  Date last;
};

constexpr int kMinYear = 1900;
constexpr int kMaxYear = 2100;

Date month_start(int year, int month) { return {year, month, 1}; }
Date month_end(int year, int month) { return {year, month, days_in_month(year, month)}; }

std::optional<int> month_from_word(std::string_view w) {
  static constexpr std::array<std::string_view, 12> kFull = {
      "january", "february", "march",     "april",   "may",      "june",
      "july",    "august",   "september", "october", "november", "december"};
  for (int m = 0; m < 12; ++m) {
    auto full = kFull[static_cast<std::size_t>(m)];
    if (w == full) return m + 1;
    if (w.size() == 3 && full.substr(0, 3) == w) return m + 1;
  }
  if (w == "sept") return 9;
  return std::nullopt;
}

// Season table, northern hemisphere; winter runs into the next year.
std::optional<Atom> season_atom(std::string_view w, int year) {
  if (w == "spring") return Atom{false, month_start(year, 3), month_end(year, 5)};
  if (w == "summer") return Atom{false, month_start(year, 6), month_end(year, 8)};
  if (w == "fall" || w == "autumn") return Atom{false, month_start(year, 9), month_end(year, 11)};
  if (w == "winter") return Atom{false, month_start(year, 12), month_end(year + 1, 2)};
  return std::nullopt;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!text::is_digit(c)) return false;
  }
  return true;
}

int to_int(std::string_view s) {
  int v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

bool valid_year(int y) { return y >= kMinYear && y <= kMaxYear; }

std::string_view strip_edges(std::string_view s) {
  auto is_edge = [](char c) {
    return text::is_space(c) || c == '.' || c == ',' || c == ';' || c == ':' || c == '(' ||
           c == ')' || c == '[' || c == ']' || c == '|' || c == '"' || c == '\'';
  };
  while (!s.empty() && is_edge(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_edge(s.back())) s.remove_suffix(1);
  return s;
}

// Splits "a<sep>b[<sep>c]" where sep is a single character from seps,
// with optional spaces around ','.
std::vector<std::string_view> numeric_groups(std::string_view s, char& sep_out) {
  std::vector<std::string_view> groups;
  sep_out = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = i;
    while (j < s.size() && text::is_digit(s[j])) ++j;
    if (j == i) return {};
    groups.push_back(s.substr(i, j - i));
    if (j == s.size()) break;
    std::size_t k = j;
    while (k < s.size() && s[k] == ' ') ++k;
    if (k >= s.size()) return {};
    char sep = s[k];
    if (sep != ',' && sep != '.' && sep != '/' && sep != '-') return {};
    if (k != j && sep != ',') return {};
    if (sep_out != 0 && sep_out != sep) return {};
    sep_out = sep;
    ++k;
    while (k < s.size() && s[k] == ' ' && sep == ',') ++k;
    i = k;
    if (i >= s.size()) return {};
  }
  return groups;
}

std::optional<Atom> parse_atom(std::string_view raw) {
  auto lower = text::to_lower(strip_edges(raw));
  std::string_view s = lower;
  if (s.empty()) return std::nullopt;

  if (s == "present" || s == "now" || s == "current" || s == "today" || s == "ongoing" ||
      s == "date") {
    return Atom{true, {}, {}};
  }

  // Word + year: month names and seasons.
  if (text::is_alpha(s.front())) {
    std::size_t i = 0;
    while (i < s.size() && text::is_alpha(s[i])) ++i;
    auto word = s.substr(0, i);
    auto rest = s.substr(i);
    while (!rest.empty() && (rest.front() == '.' || rest.front() == ',' || rest.front() == ' ')) {
      rest.remove_prefix(1);
    }
    if (rest.size() != 4 || !all_digits(rest)) return std::nullopt;
    int year = to_int(rest);
    if (!valid_year(year)) return std::nullopt;
    if (auto m = month_from_word(word)) {
      return Atom{false, month_start(year, *m), month_end(year, *m)};
    }
    return season_atom(word, year);
  }

  char sep = 0;
  auto groups = numeric_groups(s, sep);
  if (groups.size() == 1) {
    if (groups[0].size() != 4) return std::nullopt;
    int year = to_int(groups[0]);
    if (!valid_year(year)) return std::nullopt;
    return Atom{false, {year, 1, 1}, {year, 12, 31}};
  }
  if (groups.size() == 2) {
    bool a4 = groups[0].size() == 4;
    bool b4 = groups[1].size() == 4;
    if (a4 == b4) return std::nullopt;  // two years, or no year at all
    auto year_s = a4 ? groups[0] : groups[1];
    auto month_s = a4 ? groups[1] : groups[0];
    if (month_s.size() > 2) return std::nullopt;
    int year = to_int(year_s);
    int month = to_int(month_s);
    if (!valid_year(year) || month < 1 || month > 12) return std::nullopt;
    return Atom{false, month_start(year, month), month_end(year, month)};
  }
  if (groups.size() == 3) {
    Date d;
    if (sep == '/' && groups[2].size() == 4 && groups[0].size() <= 2 && groups[1].size() <= 2) {
      d = {to_int(groups[2]), to_int(groups[0]), to_int(groups[1])};
    } else if (sep == '-' && groups[0].size() == 4 && groups[1].size() <= 2 &&
               groups[2].size() <= 2) {
      d = {to_int(groups[0]), to_int(groups[1]), to_int(groups[2])};
    } else {
      return std::nullopt;
    }
    if (!valid_year(d.year) || !is_valid(d)) return std::nullopt;
    return Atom{false, d, d};
  }
  return std::nullopt;
}

struct Separator {
  std::size_t pos;
  std::size_t len;
};

std::vector<Separator> range_separators(std::string_view s) {
  std::vector<Separator> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '-') {
      out.push_back({i, 1});
    } else if (s.compare(i, 3, "\xE2\x80\x93") == 0 || s.compare(i, 3, "\xE2\x80\x94") == 0) {
      out.push_back({i, 3});
      i += 2;
    } else if (text::is_space(s[i])) {
      for (std::string_view word : {"to", "until", "till"}) {
        std::size_t end = i + 1 + word.size();
        if (end < s.size() && text::is_space(s[end]) &&
            text::to_lower(s.substr(i + 1, word.size())) == word) {
          out.push_back({i, word.size() + 2});
        }
      }
    }
  }
  return out;
}

std::optional<DateSpan> try_normalize(std::string_view input, const Date& ref, bool ranges_only) {
  auto s = text::trim(input);
  auto lower = text::to_lower(s);
  bool since = false;
  for (std::string_view prefix : {"since ", "from "}) {
    if (lower.rfind(prefix, 0) == 0) {
      since = prefix == "since ";
      s = text::trim(s.substr(prefix.size()));
      break;
    }
  }
  if (s.empty()) return std::nullopt;

  auto make = [&](const Atom& left, const Atom& right) -> std::optional<DateSpan> {
    DateSpan span;
    span.start = left.first;
    if (right.open) {
      span.resolved_end = ref;
    } else {
      span.end = right.last;
      span.resolved_end = right.last;
    }
    if (span.start > span.resolved_end) return std::nullopt;
    return span;
  };

  if (auto whole = parse_atom(s)) {
    if (whole->open) return std::nullopt;
    if (since) return make(*whole, Atom{true, {}, {}});
    if (ranges_only) return std::nullopt;
    return make(*whole, *whole);
  }
  if (since) return std::nullopt;
  for (const auto& sep : range_separators(s)) {
    auto left = parse_atom(s.substr(0, sep.pos));
    if (!left || left->open) continue;
    auto right = parse_atom(s.substr(sep.pos + sep.len));
    if (!right) continue;
    return make(*left, *right);
  }
  return std::nullopt;
}

bool is_delimiter(char c) {
  return c == '|' || c == '(' || c == ')' || c == '[' || c == ']' || c == ';';
}

// Whitespace tokens with pipes, brackets and semicolons split out as tokens
// of their own, so "2015)|Berlin" never reads as one word.
std::vector<std::string> date_tokens(std::string_view line) {
  std::vector<std::string> tokens;
  for (auto& t : text::split_whitespace(line)) {
    std::string cur;
    for (char c : t) {
      if (is_delimiter(c)) {
        if (!cur.empty()) tokens.push_back(std::move(cur));
        cur.clear();
        tokens.emplace_back(1, c);
      } else {
        cur.push_back(c);
      }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
  }
  return tokens;
}

bool is_delimiter_token(const std::string& t) { return t.size() == 1 && is_delimiter(t[0]); }

std::optional<DateMatch> search(std::string_view line, const Date& ref, bool ranges_only) {
  constexpr std::size_t kMaxTokens = 8;
  auto tokens = date_tokens(line);
  for (std::size_t len = std::min(kMaxTokens, tokens.size()); len >= 1; --len) {
    for (std::size_t i = 0; i + len <= tokens.size(); ++i) {
      auto first = tokens.begin() + static_cast<long>(i);
      auto last = first + static_cast<long>(len);
      if (std::any_of(first, last, is_delimiter_token)) continue;
      auto candidate = text::join(std::vector<std::string>(first, last), " ");
      if (auto span = try_normalize(candidate, ref, ranges_only)) {
        return DateMatch{candidate, *span, i, i + len - 1};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

DateSpan normalize_date_expression(std::string_view text, const Date& reference_date) {
  if (auto span = try_normalize(text, reference_date, false)) return *span;
  throw NormalizationError(std::string(text));
}

int months(const DateSpan& span) {
  return (span.resolved_end.year - span.start.year) * 12 +
         (span.resolved_end.month - span.start.month) + 1;
}

std::string render(const DateSpan& span) {
  return format_us(span.start) + " - " + (span.end ? format_us(*span.end) : std::string("Present"));
}

std::optional<DateMatch> find_date_expression(std::string_view line, const Date& reference_date) {
  return search(line, reference_date, false);
}

std::optional<DateMatch> find_date_range(std::string_view line, const Date& reference_date) {
  return search(line, reference_date, true);
}

std::string remove_date(std::string_view line, const DateMatch& match) {
  auto tokens = date_tokens(line);
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i >= match.first_token && i <= match.last_token) continue;
    // Brackets left empty by the removal go too.
    bool closes = tokens[i] == ")" || tokens[i] == "]";
    if (closes && !kept.empty() && (kept.back() == "(" || kept.back() == "[")) {
      kept.pop_back();
      continue;
    }
    kept.push_back(tokens[i]);
  }
  return text::join(kept, " ");
}

}  // namespace talentrank::extract
