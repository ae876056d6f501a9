#include "talentrank/catalog/rank.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "talentrank/common/error.hpp"
#include "talentrank/common/text.hpp"

namespace talentrank::catalog {

using scoring::ScoreCard;

SortMode parse_sort_mode(std::string_view text) {
  auto t = text::to_lower(text::trim(text));
  if (t.empty() || t == "overall") return {SortKind::kOverall, {}};
  if (t == "education") return {SortKind::kEducation, {}};
  if (t == "work") return {SortKind::kWork, {}};
  if (t == "skills") return {SortKind::kSkills, {}};
  if (t == "scorechart" || t == "score_chart" || t == "score-chart") return {SortKind::kScoreChart, {}};
  if (t.rfind("skill:", 0) == 0 && t.size() > 6) return {SortKind::kPerSkill, t.substr(6)};
  throw Error(ErrorCode::kParameter, "unknown sort mode '" + std::string(text) + "'");
}

std::string to_string(const SortMode& mode) {
  switch (mode.kind) {
    case SortKind::kOverall: return "overall";
    case SortKind::kEducation: return "education";
    case SortKind::kWork: return "work";
    case SortKind::kSkills: return "skills";
    case SortKind::kScoreChart: return "scorechart";
    case SortKind::kPerSkill: return "skill:" + mode.skill;
  }
  return "overall";
}

std::size_t top_decile_count(std::size_t n) { return (n + 9) / 10; }

namespace {

using Column = std::function<double(const ScoreCard&)>;

// Descending by column, then candidate id ascending.
bool column_before(const Column& col, const ScoreCard& a, const ScoreCard& b) {
  double x = col(a);
  double y = col(b);
  if (x != y) return x > y;
  return a.candidate_id < b.candidate_id;
}

std::vector<bool> top_flags(const std::vector<ScoreCard>& cards, const Column& col) {
  std::vector<std::size_t> order(cards.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return column_before(col, cards[a], cards[b]);
  });
  std::vector<bool> flags(cards.size(), false);
  for (std::size_t i = 0; i < top_decile_count(cards.size()) && i < order.size(); ++i) {
    flags[order[i]] = true;
  }
  return flags;
}

Column skill_column(std::size_t i) {
  return [i](const ScoreCard& c) { return c.skills.matches[i].score; };
}

}  // namespace

RankedList rank_cards(std::vector<ScoreCard> cards, const std::vector<std::string>& desired_skills,
                      const SortMode& mode) {
  for (const auto& c : cards) {
    if (c.skills.matches.size() != desired_skills.size()) {
      throw Error(ErrorCode::kParameter, "score card does not match the desired skill list");
    }
  }
  const Column education = [](const ScoreCard& c) { return c.education_score; };
  const Column work = [](const ScoreCard& c) { return c.work_score; };
  const Column skills = [](const ScoreCard& c) { return c.skills_score; };
  const Column overall = [](const ScoreCard& c) { return c.overall_score; };

  std::function<bool(const ScoreCard&, const ScoreCard&)> before;
  switch (mode.kind) {
    case SortKind::kOverall:
      before = [&](const ScoreCard& a, const ScoreCard& b) { return column_before(overall, a, b); };
      break;
    case SortKind::kEducation:
      before = [&](const ScoreCard& a, const ScoreCard& b) { return column_before(education, a, b); };
      break;
    case SortKind::kWork:
      before = [&](const ScoreCard& a, const ScoreCard& b) { return column_before(work, a, b); };
      break;
    case SortKind::kSkills:
      before = [&](const ScoreCard& a, const ScoreCard& b) { return column_before(skills, a, b); };
      break;
    case SortKind::kScoreChart:
      before = [](const ScoreCard& a, const ScoreCard& b) {
        if (a.skills_score != b.skills_score) return a.skills_score > b.skills_score;
        if (a.work_score != b.work_score) return a.work_score > b.work_score;
        return a.candidate_id < b.candidate_id;
      };
      break;
    case SortKind::kPerSkill: {
      auto it = std::find(desired_skills.begin(), desired_skills.end(), mode.skill);
      if (it == desired_skills.end()) {
        throw Error(ErrorCode::kParameter, "sort skill '" + mode.skill + "' is not a desired skill");
      }
      auto col = skill_column(static_cast<std::size_t>(it - desired_skills.begin()));
      before = [col](const ScoreCard& a, const ScoreCard& b) { return column_before(col, a, b); };
      break;
    }
  }
  std::sort(cards.begin(), cards.end(), before);

  RankedList out;
  out.mode = mode;
  out.desired_skills = desired_skills;
  auto fe = top_flags(cards, education);
  auto fw = top_flags(cards, work);
  auto fs = top_flags(cards, skills);
  auto fo = top_flags(cards, overall);
  std::vector<std::vector<bool>> fk;
  for (std::size_t i = 0; i < desired_skills.size(); ++i) fk.push_back(top_flags(cards, skill_column(i)));
  out.entries.reserve(cards.size());
  for (std::size_t i = 0; i < cards.size(); ++i) {
    RankedEntry e;
    e.flags.education = fe[i];
    e.flags.work = fw[i];
    e.flags.skills = fs[i];
    e.flags.overall = fo[i];
    for (const auto& f : fk) e.flags.per_skill.push_back(f[i]);
    e.card = std::move(cards[i]);
    out.entries.push_back(std::move(e));
  }
  return out;
}

RankedList rank_candidates(const std::vector<const extract::CandidateProfile*>& profiles,
                           const scoring::JobProfile& job, const scoring::ScoringContext& ctx,
                           const SortMode& mode) {
  std::vector<ScoreCard> cards;
  cards.reserve(profiles.size());
  for (const auto* p : profiles) cards.push_back(scoring::score_candidate(*p, job, ctx));
  return rank_cards(std::move(cards), job.desired_skills, mode);
}

std::vector<Suggestion> autocomplete_skills(std::string_view prefix,
                                            const skillspace::SkillVocabulary& vocab,
                                            std::size_t k) {
  if (k == 0) throw Error(ErrorCode::kParameter, "k must be at least 1");
  auto p = text::to_lower(text::collapse_whitespace(prefix));
  std::vector<Suggestion> out;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    if (vocab.tokens[i].rfind(p, 0) == 0) out.push_back({vocab.tokens[i], vocab.frequencies[i]});
  }
  std::sort(out.begin(), out.end(), [](const Suggestion& a, const Suggestion& b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    return a.token < b.token;
  });
  if (out.size() > k) out.resize(k);
  return out;
}

}  // namespace talentrank::catalog
