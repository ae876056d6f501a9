#include "talentrank/common/gazetteer.hpp"

#include "talentrank/common/binary.hpp"
#include "talentrank/common/error.hpp"
#include "talentrank/common/text.hpp"

namespace talentrank {

namespace {

// Non-comment, non-blank lines; line numbers are 1-based.
template <typename Fn>
void for_each_entry(std::string_view content, std::string_view file, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t offset = 0;
  for (const auto& raw : text::split(content, '\n')) {
    ++line_no;
    auto line = text::trim(raw);
    if (!line.empty() && line.front() != '#') fn(line, line_no, offset, file);
    offset += raw.size() + 1;
  }
}

std::vector<std::string> parse_list(std::string_view content, std::string_view file) {
  std::vector<std::string> out;
  for_each_entry(content, file, [&](std::string_view line, auto, auto, auto) {
    auto key = text::normalize_key(line);
    if (!key.empty()) out.push_back(key);
  });
  return out;
}

template <typename Label, typename ParseFn>
std::vector<std::pair<std::string, Label>> parse_labeled(std::string_view content,
                                                         std::string_view file, ParseFn parse) {
  std::vector<std::pair<std::string, Label>> out;
  for_each_entry(content, file,
                 [&](std::string_view line, std::size_t line_no, std::size_t offset,
                     std::string_view name) {
                   auto tab = line.find('\t');
                   if (tab == std::string_view::npos) {
                     throw ParseError(std::string(name) + ":" + std::to_string(line_no) +
                                          ": expected '<phrase>\\t<label>'",
                                      line_no, offset);
                   }
                   auto label = parse(line.substr(tab + 1));
                   if (!label) {
                     throw ParseError(std::string(name) + ":" + std::to_string(line_no) +
                                          ": unknown label '" +
                                          std::string(text::trim(line.substr(tab + 1))) + "'",
                                      line_no, offset);
                   }
                   out.emplace_back(text::normalize_key(line.substr(0, tab)), *label);
                 });
  return out;
}

bool has_word_phrase(const std::vector<std::string>& words, std::string_view phrase) {
  return text::contains_phrase(words, text::split_whitespace(phrase));
}

}  // namespace

Gazetteers Gazetteers::parse(std::string_view sections, std::string_view degrees,
                             std::string_view institutes, std::string_view titles,
                             std::string_view locations) {
  Gazetteers g;
  g.section_keywords = parse_labeled<SectionLabel>(sections, "sections.txt", parse_section_label);
  g.degree_forms = parse_labeled<DegreeLevel>(degrees, "degrees.txt", parse_degree_level);
  g.institute_keywords = parse_list(institutes, "institutes.txt");
  g.title_keywords = parse_list(titles, "titles.txt");
  g.locations = parse_list(locations, "locations.txt");
  return g;
}

const Gazetteers& Gazetteers::builtin() {
  static const Gazetteers instance =
      parse(gazetteer_data::kSections, gazetteer_data::kDegrees, gazetteer_data::kInstitutes,
            gazetteer_data::kTitles, gazetteer_data::kLocations);
  return instance;
}

Gazetteers Gazetteers::load(const std::filesystem::path& dir) {
  return parse(read_file(dir / "sections.txt"), read_file(dir / "degrees.txt"),
               read_file(dir / "institutes.txt"), read_file(dir / "titles.txt"),
               read_file(dir / "locations.txt"));
}

std::optional<SectionLabel> Gazetteers::section_keyword(std::string_view text) const {
  auto key = text::normalize_key(text);
  for (const auto& [phrase, label] : section_keywords) {
    if (phrase == key) return label;
  }
  return std::nullopt;
}

bool Gazetteers::has_institute_keyword(std::string_view line) const {
  auto words = text::split_whitespace(text::normalize_key(line));
  for (const auto& kw : institute_keywords) {
    if (has_word_phrase(words, kw)) return true;
  }
  return false;
}

bool Gazetteers::has_title_keyword(std::string_view line) const {
  auto words = text::split_whitespace(text::normalize_key(line));
  for (const auto& kw : title_keywords) {
    if (has_word_phrase(words, kw)) return true;
  }
  return false;
}

std::optional<std::string> Gazetteers::find_location(std::string_view line) const {
  auto words = text::split_whitespace(text::normalize_key(line));
  for (const auto& loc : locations) {
    if (has_word_phrase(words, loc)) return loc;
  }
  return std::nullopt;
}

}  // namespace talentrank
