#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "talentrank/common/gazetteer.hpp"
#include "talentrank/common/labels.hpp"

namespace talentrank::extract {

struct DegreeMatch {
  DegreeLevel level = DegreeLevel::kOther;
  // Whitespace-token range of the input the matched form covers (inclusive).
  std::size_t first_token = 0;
  std::size_t last_token = 0;
  bool fuzzy = false;
};

// The text is lowercased and punctuation-stripped, then every gazetteer form
// is compared against each window of as many words: exact hits first
// (earliest, then longest), otherwise the closest form within edit distance 2
// among forms of at least 5 characters.
// Forms shorter than min_form_length are ignored ("ma" next to a state name).
std::optional<DegreeMatch> match_degree(std::string_view text,
                                        const Gazetteers& gazetteers = Gazetteers::builtin(),
                                        std::size_t min_form_length = 0);

// Bachelor/Master/Doctoral per match_degree; Other when nothing matches.
DegreeLevel normalize_degree(std::string_view text,
                             const Gazetteers& gazetteers = Gazetteers::builtin());

}  // namespace talentrank::extract
