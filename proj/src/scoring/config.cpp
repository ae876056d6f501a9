#include "talentrank/scoring/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>

#include "talentrank/common/csv.hpp"
#include "talentrank/common/error.hpp"
#include "talentrank/common/text.hpp"

namespace talentrank::scoring {

double ScoringConfig::degree_score(DegreeLevel level) const {
  auto it = degree_scores.find(level);
  return it == degree_scores.end() ? 0.0 : it->second;
}

void validate(const CategoryWeights& w) {
  if (!(w.education > 0.0) || !(w.work > 0.0) || !(w.skills > 0.0)) {
    throw Error(ErrorCode::kParameter, "category weights must be positive");
  }
}

void validate(const ScoringConfig& c) {
  validate(c.category_weights);
  if (!(c.score_match > 0.0 && c.score_match <= 100.0)) {
    throw Error(ErrorCode::kParameter, "score_match must lie in (0, 100]");
  }
  if (!(c.alpha >= 0.0)) throw Error(ErrorCode::kParameter, "alpha must be non-negative");
  if (!(c.recency_half_life_years > 0.0)) {
    throw Error(ErrorCode::kParameter, "recency_half_life_years must be positive");
  }
  if (!(c.category_cap > 0.0 && c.category_cap <= 100.0)) {
    throw Error(ErrorCode::kParameter, "category_cap must lie in (0, 100]");
  }
  for (const auto& [level, v] : c.degree_scores) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::kParameter, "degree scores must be finite and non-negative");
    }
  }
}

namespace {

std::map<std::string, std::function<double&(ScoringConfig&)>> fields() {
  return {
      {"degree_score.bachelor", [](ScoringConfig& c) -> double& { return c.degree_scores[DegreeLevel::kBachelor]; }},
      {"degree_score.master", [](ScoringConfig& c) -> double& { return c.degree_scores[DegreeLevel::kMaster]; }},
      {"degree_score.doctoral", [](ScoringConfig& c) -> double& { return c.degree_scores[DegreeLevel::kDoctoral]; }},
      {"degree_score.other", [](ScoringConfig& c) -> double& { return c.degree_scores[DegreeLevel::kOther]; }},
      {"weight.education", [](ScoringConfig& c) -> double& { return c.category_weights.education; }},
      {"weight.work", [](ScoringConfig& c) -> double& { return c.category_weights.work; }},
      {"weight.skills", [](ScoringConfig& c) -> double& { return c.category_weights.skills; }},
      {"score_match", [](ScoringConfig& c) -> double& { return c.score_match; }},
      {"alpha", [](ScoringConfig& c) -> double& { return c.alpha; }},
      {"recency_half_life_years", [](ScoringConfig& c) -> double& { return c.recency_half_life_years; }},
      {"category_cap", [](ScoringConfig& c) -> double& { return c.category_cap; }},
  };
}

}  // namespace

ScoringConfig parse_config(std::string_view input) {
  ScoringConfig c;
  auto table = fields();
  std::size_t line_no = 0;
  for (const auto& raw : text::split(input, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = text::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("config: expected 'key = value'", line_no, 0);
    auto key = std::string(text::trim(line.substr(0, eq)));
    auto value = text::trim(line.substr(eq + 1));
    auto it = table.find(key);
    if (it == table.end()) throw ParseError("config: unknown key '" + key + "'", line_no, 0);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(v)) {
      throw ParseError("config: '" + key + "' needs a number", line_no, 0);
    }
    it->second(c) = v;
  }
  validate(c);
  return c;
}

std::string to_config_text(const ScoringConfig& config) {
  auto copy = config;
  std::string out;
  for (auto& [key, ref] : fields()) out += key + " = " + csv::format_double(ref(copy)) + "\n";
  return out;
}

}  // namespace talentrank::scoring
