#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Byte-level text helpers. Case folding and punctuation classes are ASCII
// only; multi-byte UTF-8 sequences pass through untouched.
namespace talentrank::text {

bool is_space(char c);
bool is_ascii_punct(char c);
bool is_digit(char c);
bool is_alpha(char c);
bool is_alnum(char c);

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);
std::string collapse_whitespace(std::string_view s);

std::vector<std::string> split(std::string_view s, char delimiter);
std::vector<std::string> split_whitespace(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Lowercase, drop '.' and apostrophes, turn every other ASCII punctuation
// character into a space, then collapse whitespace. Idempotent.
std::string normalize_key(std::string_view s);

std::size_t edit_distance(std::string_view a, std::string_view b);

bool is_valid_utf8(std::string_view s);
std::size_t utf8_length(std::string_view s);

bool looks_like_email(std::string_view word);

// [begin, end) byte ranges of phone-like digit runs: at least 7 digits joined
// by spaces, '+', '(', ')', '-', '.' or '/'. Runs holding a year-like 4-digit
// group (date ranges) only qualify when they open with '+' or '('.
std::vector<std::pair<std::size_t, std::size_t>> find_phone_runs(std::string_view s);

// Lowercased word tokens for feature extraction: runs of alphanumerics plus
// '+' and '#'. E-mail addresses, phone runs, years and other numbers collapse
// to the placeholder tokens "<email>", "<phone>", "<year>" and "<num>".
std::vector<std::string> feature_tokens(std::string_view s);

bool contains_phrase(const std::vector<std::string>& haystack,
                     const std::vector<std::string>& needle);

}  // namespace talentrank::text
