#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace talentrank::csv {

// RFC 4180 style: fields separated by ',', optionally double-quoted with ""
// escapes. Returns false on an unterminated quote or stray quote character.
bool parse_line(std::string_view line, std::vector<std::string>& fields);

std::string escape(std::string_view field);

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

}  // namespace talentrank::csv
