#pragma once

#include <string>
#include <string_view>

namespace talentrank::skillspace {

// Canonical skill token: lowercase, trimmed, inner whitespace collapsed and
// surrounding punctuation stripped. '+' and '#' are kept anywhere ("c++",
// "c#") and a leading '.' directly before a letter or digit survives
// (".net"). Throws an Error coded kNormalization when nothing is left.
std::string normalize_skill(std::string_view text);

}  // namespace talentrank::skillspace
