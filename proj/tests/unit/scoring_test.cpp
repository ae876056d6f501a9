#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "talentrank/common/error.hpp"
#include "talentrank/common/text.hpp"
#include "talentrank/extract/dates.hpp"
#include "talentrank/scoring/config.hpp"
#include "talentrank/scoring/employers.hpp"
#include "talentrank/scoring/job.hpp"
#include "talentrank/scoring/rankings.hpp"
#include "talentrank/scoring/score.hpp"
#include "talentrank/skillspace/synthetic.hpp"

#include "oracles.hpp"

namespace talentrank::scoring {
namespace {

using extract::CandidateProfile;
using extract::EducationEntry;
using extract::WorkEntry;

constexpr Date kReference{2019, 3, 15};

EducationEntry education(DegreeLevel level, std::string institution, int start_year) {
  EducationEntry e;
  e.degree = level;
  e.institution = institution;
  e.institution_key = text::normalize_key(institution);
  e.span = extract::normalize_date_expression(std::to_string(start_year) + " - " +
                                                  std::to_string(start_year + 2),
                                              kReference);
  return e;
}

WorkEntry work(std::string employer, Date start, std::optional<Date> end) {
  WorkEntry w;
  w.employer_raw = employer;
  w.employer_key = extract::employer_key(employer);
  w.span.start = start;
  w.span.end = end;
  w.span.resolved_end = end.value_or(kReference);
  return w;
}

UniversityRankingTable table() {
  return import_university_rankings("institution,score\nMid University,40\nTop University,90\n",
                                    "institution,score\nMid University,50\nTop University,80\n");
}

TEST(Education, GoldenCases) {
  ScoringConfig cfg;
  auto t = table();
  CandidateProfile p;
  p.educations = {education(DegreeLevel::kBachelor, "Unranked College", 2010)};
  EXPECT_EQ(education_score(p, t, cfg), 20.0);
  p.educations = {education(DegreeLevel::kMaster, "Mid University", 2010)};
  EXPECT_EQ(education_score(p, t, cfg), 80.0);
  p.educations = {education(DegreeLevel::kDoctoral, "Top University", 2010)};
  EXPECT_EQ(education_score(p, t, cfg), 100.0);
  p.educations.clear();
  EXPECT_EQ(education_score(p, t, cfg), 0.0);
}

TEST(Education, MostRecentEntryCounts) {
  ScoringConfig cfg;
  CandidateProfile p;
  p.educations = {education(DegreeLevel::kBachelor, "Mid University", 2005),
                  education(DegreeLevel::kMaster, "Unranked College", 2012)};
  EXPECT_EQ(most_recent_education(p), 1u);
  auto ev = education_evidence(p, table(), cfg);
  EXPECT_EQ(ev.degree, DegreeLevel::kMaster);
  EXPECT_EQ(ev.score, 35.0);
  EXPECT_FALSE(ev.the);
  p.educations[1].span.reset();
  EXPECT_EQ(most_recent_education(p), 0u);
}

TEST(Work, GoldenCases) {
  ScoringConfig cfg;
  EmployerScoreTable employers;
  employers.entries["acme"] = {50.0, 3};
  CandidateProfile p;
  p.works = {work("Acme Inc", {2017, 4, 1}, std::nullopt)};  // Apr 2017 - Mar 2019
  ASSERT_EQ(extract::months(p.works[0].span), 24);
  EXPECT_EQ(work_score(p, employers, cfg), 74.0);

  p.works = {work("Acme Inc", {2009, 4, 1}, std::nullopt)};
  EXPECT_EQ(extract::months(p.works[0].span), 120);
  EXPECT_EQ(work_score(p, employers, cfg), 100.0);

  p.works.clear();
  EXPECT_EQ(work_score(p, employers, cfg), 0.0);
}

TEST(Work, RecencyWeightedMean) {
  ScoringConfig cfg;
  EmployerScoreTable employers;
  employers.entries["acme"] = {60.0, 1};
  employers.entries["globex"] = {20.0, 1};
  CandidateProfile p;
  p.reference_date = kReference;
  p.works = {work("Acme", {2018, 1, 1}, std::nullopt),
             work("Globex", {2008, 1, 1}, Date{2009, 3, 15})};
  auto ev = work_evidence(p, employers, cfg);
  ASSERT_EQ(ev.employments.size(), 2u);
  EXPECT_EQ(ev.employments[0].weight, 1.0);
  double years = static_cast<double>(to_days(kReference) - to_days({2009, 3, 15})) / 365.25;
  EXPECT_DOUBLE_EQ(ev.employments[1].years_since_end, years);
  double w2 = std::pow(0.5, years / 5.0);
  EXPECT_DOUBLE_EQ(ev.employments[1].weight, w2);
  EXPECT_DOUBLE_EQ(ev.weighted_employer_average, (60.0 + 20.0 * w2) / (1.0 + w2));
  EXPECT_EQ(ev.experience_points, 15 + 15);
  EXPECT_FALSE(employers.contains("initech"));
  EXPECT_EQ(employers.score("initech"), 0.0);
}

TEST(Work, YearsAndRecency) {
  EXPECT_EQ(years_between({2020, 1, 1}, kReference), 0.0);
  EXPECT_DOUBLE_EQ(years_between({2018, 3, 15}, kReference), 365.0 / 365.25);
  EXPECT_DOUBLE_EQ(recency_weight({2014, 3, 15}, kReference, 5.0),
                   std::pow(0.5, (365.0 * 5 + 1) / 365.25 / 5.0));
  CandidateProfile p;
  p.works = {work("A", {2018, 1, 1}, Date{2018, 6, 30}), work("B", {2018, 3, 1}, Date{2018, 4, 30})};
  EXPECT_EQ(experience_months(p), 6 + 2);
}

TEST(Overall, GoldenCase) {
  EXPECT_EQ(overall_score(80, 60, 90, CategoryWeights{}), 80.0);
  EXPECT_EQ(overall_score(80, 60, 90, CategoryWeights{1, 1, 1}), 230.0 / 3.0);
  EXPECT_THROW(overall_score(1, 1, 1, CategoryWeights{0, 1, 1}), Error);
}

TEST(MatchScore, ClampRule) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> sm(1e-9, 100.0), al(0.0, 300.0), di(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    ScoringConfig cfg;
    cfg.score_match = sm(gen);
    cfg.alpha = al(gen);
    double d = di(gen);
    EXPECT_NEAR(match_score(d, cfg), oracle::clamp_score(cfg.score_match, cfg.alpha, d), 1e-12);
    EXPECT_EQ(match_score(0.0, cfg), cfg.score_match);
  }
}

skillspace::SkillEmbedding toy_embedding() {
  // Four unit vectors in the plane at known angles.
  skillspace::SkillEmbedding emb;
  emb.vocabulary.tokens = {"go", "java", "python", "rust"};
  emb.vocabulary.frequencies = {3, 5, 9, 2};
  emb.dimension = 2;
  auto at = [](double deg) {
    double r = deg * M_PI / 180.0;
    return std::pair{std::cos(r), std::sin(r)};
  };
  for (double deg : {0.0, 60.0, 90.0, 60.0}) {
    auto [x, y] = at(deg);
    emb.vectors.push_back(x);
    emb.vectors.push_back(y);
  }
  return emb;
}

TEST(Skills, NearestCandidateSkillWins) {
  ScoringConfig cfg;
  auto emb = toy_embedding();
  auto ev = skill_score({"python", "java", "cobol"}, {"go", "python", "fortran"}, &emb, cfg);
  ASSERT_EQ(ev.matches.size(), 3u);
  EXPECT_EQ(ev.matches[0].matched, "java");
  EXPECT_NEAR(ev.matches[0].distance, 0.5, 1e-12);
  EXPECT_NEAR(ev.matches[0].score, 50.0, 1e-9);
  EXPECT_TRUE(ev.matches[1].exact);
  EXPECT_EQ(ev.matches[1].score, 100.0);
  EXPECT_FALSE(ev.matches[2].matched);
  EXPECT_EQ(ev.matches[2].distance, 1.0);
  EXPECT_EQ(ev.matches[2].score, 0.0);
  EXPECT_NEAR(ev.score, 50.0, 1e-9);
}

TEST(Skills, TieGoesToLowerVocabularyIndex) {
  ScoringConfig cfg;
  auto emb = toy_embedding();
  // java and rust sit on the same vector.
  auto ev = skill_score({"rust", "java"}, {"go"}, &emb, cfg);
  EXPECT_EQ(ev.matches[0].matched, "java");
}

TEST(Skills, NoEmbeddingMeansExactOnly) {
  ScoringConfig cfg;
  auto ev = skill_score({"python"}, {"python", "java"}, nullptr, cfg);
  EXPECT_EQ(ev.score, 50.0);
  EXPECT_THROW(skill_score({"python"}, {}, nullptr, cfg), Error);
}

TEST(Skills, MatchesBruteForce) {
  std::mt19937_64 gen(21);
  std::normal_distribution<double> nd;
  skillspace::SkillEmbedding emb;
  for (int i = 0; i < 30; ++i) {
    emb.vocabulary.tokens.push_back("k" + std::string(1, static_cast<char>('a' + i / 10)) +
                                    std::to_string(i % 10));
    emb.vocabulary.frequencies.push_back(1);
  }
  std::sort(emb.vocabulary.tokens.begin(), emb.vocabulary.tokens.end());
  emb.dimension = 3;
  for (int i = 0; i < 30; ++i) {
    // Duplicate a few rows so ties happen.
    if (i % 7 == 3) {
      for (std::size_t k = 0; k < 3; ++k) {
        emb.vectors.push_back(emb.vectors[static_cast<std::size_t>(i - 1) * 3 + k]);
      }
      continue;
    }
    double v[3] = {nd(gen), nd(gen), nd(gen)};
    double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    for (double x : v) emb.vectors.push_back(x / n);
  }
  std::uniform_int_distribution<int> pick(0, 34), size(1, 20);
  auto draw = [&] {
    std::vector<std::string> out;
    int n = size(gen);
    for (int i = 0; i < n; ++i) {
      int k = pick(gen);
      out.push_back(k < 30 ? emb.vocabulary.tokens[static_cast<std::size_t>(k)]
                           : "oov" + std::to_string(k));
    }
    return out;
  };
  ScoringConfig cfg;
  for (int trial = 0; trial < 200; ++trial) {
    auto cand = draw();
    auto desired = draw();
    std::vector<std::string> uniq;
    for (const auto& d : desired) {
      if (std::find(uniq.begin(), uniq.end(), d) == uniq.end()) uniq.push_back(d);
    }
    auto ev = skill_score(cand, uniq, &emb, cfg);
    auto want = oracle::skill_matches(cand, uniq, &emb, cfg.score_match, cfg.alpha);
    ASSERT_EQ(ev.matches.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
      EXPECT_EQ(ev.matches[i].matched, want[i].matched);
      EXPECT_EQ(ev.matches[i].distance, want[i].distance);
      EXPECT_EQ(ev.matches[i].score, want[i].score);
    }
  }
}

TEST(Config, ParseAndPrint) {
  auto cfg = parse_config(
      "# tuned\n"
      "degree_score.master = 40\n"
      "weight.skills = 3  # heavier\n"
      "alpha = 50\n");
  EXPECT_EQ(cfg.degree_score(DegreeLevel::kMaster), 40.0);
  EXPECT_EQ(cfg.degree_score(DegreeLevel::kBachelor), 20.0);
  EXPECT_EQ(cfg.category_weights.skills, 3.0);
  EXPECT_EQ(cfg.alpha, 50.0);
  EXPECT_EQ(parse_config(to_config_text(cfg)), cfg);
  EXPECT_EQ(parse_config(""), ScoringConfig{});
}

TEST(Config, Errors) {
  for (std::string bad : {"unknown = 1\n", "alpha = many\n", "weight.work = 0\n",
                          "score_match = 150\n", "alpha = -1\n", "recency_half_life_years = 0\n",
                          "category_cap = 120\n", "alpha\n"}) {
    EXPECT_THROW(parse_config(bad), Error) << bad;
  }
  try {
    parse_config("alpha = 1\nbogus = 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Rankings, ImportJoinsSources) {
  auto t = import_university_rankings(
      "institution,score\n\"Univ. of X, Y\",70\nOnly The,30\nOnly The,35\n",
      "institution,score\nuniv of x y,90\nOnly QS,10\n");
  ASSERT_TRUE(t.find("univ of x y"));
  EXPECT_EQ(t.find("univ of x y")->the, 70.0);
  EXPECT_EQ(t.find("univ of x y")->qs, 90.0);
  EXPECT_EQ(t.find("only the")->the, 35.0);
  EXPECT_EQ(t.warnings.size(), 1u);
  EXPECT_EQ(university_score("univ of x y", t), 80.0);
  EXPECT_EQ(university_score("only qs", t), 5.0);
  EXPECT_EQ(university_score("nowhere", t), 0.0);
  EXPECT_EQ(deserialize_rankings(serialize(t)), t);
}

TEST(Rankings, Errors) {
  EXPECT_THROW(import_university_rankings("", "institution,score\n"), ParseError);
  EXPECT_THROW(import_university_rankings("institution,score\nA,101\n", "institution,score\n"),
               ParseError);
  try {
    import_university_rankings("institution,score\n", "institution,score\nA,1\nB\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("QS"), std::string::npos);
  }
}

TEST(Employers, GroupByMostRecentEmployer) {
  ScoringConfig cfg;
  auto t = table();
  std::vector<CandidateProfile> corpus(3);
  corpus[0].educations = {education(DegreeLevel::kMaster, "Mid University", 2010)};  // 80
  corpus[0].works = {work("Old Co", {2010, 1, 1}, Date{2012, 1, 1}),
                     work("Acme", {2015, 1, 1}, std::nullopt)};
  corpus[1].educations = {education(DegreeLevel::kBachelor, "Unranked", 2010)};  // 20
  corpus[1].works = {work("Acme Inc.", {2016, 1, 1}, std::nullopt)};
  corpus[2].works = {work("Old Co", {2010, 1, 1}, Date{2012, 1, 1})};  // 0
  auto table_out = build_employer_scores(corpus, t, cfg);
  ASSERT_EQ(table_out.entries.size(), 2u);
  EXPECT_EQ(table_out.entries.at("acme").score, 50.0);
  EXPECT_EQ(table_out.entries.at("acme").profiles, 2u);
  EXPECT_EQ(table_out.entries.at("old co").score, 0.0);
  EXPECT_EQ(table_out.corpus_hash, corpus_hash(corpus));

  std::vector<std::string> warnings;
  auto bytes = serialize(table_out);
  EXPECT_EQ(deserialize_employer_scores(bytes, table_out.corpus_hash, &warnings), table_out);
  EXPECT_TRUE(warnings.empty());
  EXPECT_EQ(deserialize_employer_scores(bytes, "other", &warnings), table_out);
  EXPECT_EQ(warnings.size(), 1u);
  EXPECT_THROW(build_employer_scores({}, t, cfg), Error);
}

TEST(Job, NormalizationAndJson) {
  auto j = nlohmann::json::parse(R"({
    "job_id": "backend-1", "name": "Backend",
    "desired_skills": ["Java", " SQL ", "java"],
    "min_experience_years": 2,
    "required_degrees": ["Master", "Doctoral"],
    "weight_overrides": {"education": 1, "work": 2, "skills": 2}
  })");
  auto job = job_from_json(j);
  EXPECT_EQ(job.desired_skills, (std::vector<std::string>{"java", "sql"}));
  EXPECT_EQ(job.required_degrees->size(), 2u);
  EXPECT_EQ(job_from_json(to_json(job)), job);
  EXPECT_EQ(deserialize_job(serialize(job)), job);

  auto bad = [&](const char* key, nlohmann::json value) {
    auto k = j;
    k[key] = value;
    EXPECT_THROW(job_from_json(k), Error) << key;
  };
  bad("job_id", "has space");
  bad("desired_skills", nlohmann::json::array());
  bad("min_experience_years", -1);
  bad("required_degrees", nlohmann::json::array());
  bad("required_degrees", {"Diploma"});
  bad("weight_overrides", {{"education", 0}, {"work", 1}, {"skills", 1}});
  bad("name", 5);
}

TEST(ScoreCard, CombinesCategories) {
  ScoringConfig cfg;
  auto t = table();
  EmployerScoreTable employers;
  employers.entries["acme"] = {50.0, 1};
  auto emb = toy_embedding();
  ScoringContext ctx{&emb, &t, &employers, cfg, "v1"};
  CandidateProfile p;
  p.candidate_id = "c1";
  p.educations = {education(DegreeLevel::kMaster, "Mid University", 2010)};
  p.works = {work("Acme Inc", {2017, 4, 1}, std::nullopt)};
  p.skills = {{"Python", "python", {}}, {"Java", "java", {}}};
  JobProfile job;
  job.job_id = "j";
  job.desired_skills = {"python", "go"};
  auto card = score_candidate(p, job, ctx);
  EXPECT_EQ(card.education_score, 80.0);
  EXPECT_EQ(card.work_score, 74.0);
  EXPECT_NEAR(card.skills_score, 75.0, 1e-9);
  EXPECT_NEAR(card.overall_score, (80.0 + 74.0 + 2 * 75.0) / 4.0, 1e-9);
  EXPECT_EQ(card.models_version, "v1");

  job.weight_overrides = CategoryWeights{1, 1, 1};
  auto card2 = score_candidate(p, job, ctx);
  EXPECT_NEAR(card2.overall_score, (80.0 + 74.0 + 75.0) / 3.0, 1e-9);

  auto j = to_json(card);
  EXPECT_EQ(j["education_score"], 80.0);
  EXPECT_FALSE(explain(card, p).empty());

  JobProfile other = job;
  other.job_id = "a";
  auto matches = job_match_scores(p, {job, other}, ctx);
  ASSERT_EQ(matches.size(), 2u);
  EXPECT_EQ(matches[0].job_id, "a");  // equal scores, id order
}

TEST(ScoreCard, MissingModelsScoreAsEmpty) {
  ScoringContext ctx;
  CandidateProfile p;
  p.educations = {education(DegreeLevel::kMaster, "Mid University", 2010)};
  p.skills = {{"Go", "go", {}}};
  JobProfile job;
  job.job_id = "j";
  job.desired_skills = {"go", "rust"};
  auto card = score_candidate(p, job, ctx);
  EXPECT_EQ(card.education_score, 35.0);
  EXPECT_EQ(card.skills_score, 50.0);
}

TEST(Monotonicity, RandomProfiles) {
  std::ifstream in(std::string(TALENTRANK_DATA_DIR) + "/corpus_templates.json");
  std::stringstream ss;
  ss << in.rdbuf();
  auto templates = skillspace::parse_corpus_templates(ss.str());
  auto corpus = skillspace::generate_corpus(templates, 200, 31, kReference);
  auto rankings_files = skillspace::ranking_files(templates);
  auto rankings = import_university_rankings(rankings_files.the_csv, rankings_files.qs_csv);
  ScoringConfig cfg;
  auto employers = build_employer_scores(corpus, rankings, cfg);
  std::mt19937_64 gen(2);
  for (auto p : corpus) {
    double before = education_score(p, rankings, cfg);
    if (auto i = most_recent_education(p)) {
      auto& d = p.educations[*i].degree;
      if (d == DegreeLevel::kOther) d = DegreeLevel::kBachelor;
      else if (d == DegreeLevel::kBachelor) d = DegreeLevel::kMaster;
      else d = DegreeLevel::kDoctoral;
      EXPECT_GE(education_score(p, rankings, cfg), before);
    }
    if (!p.works.empty()) {
      double points = work_evidence(p, employers, cfg).experience_points;
      auto& s = p.works[gen() % p.works.size()].span.start;
      s = s.month == 1 ? Date{s.year - 1, 12, 1} : Date{s.year, s.month - 1, 1};
      EXPECT_GE(work_evidence(p, employers, cfg).experience_points, points);
    }
  }
}

}  // namespace
}  // namespace talentrank::scoring
