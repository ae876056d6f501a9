// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "talentrank/catalog/filter.hpp"
#include "talentrank/catalog/rank.hpp"
#include "talentrank/catalog/store.hpp"
#include "talentrank/common/binary.hpp"
#include "talentrank/common/error.hpp"
#include "talentrank/common/text.hpp"
#include "talentrank/extract/dates.hpp"
#include "talentrank/ingest/labeled.hpp"
#include "talentrank/scoring/employers.hpp"
#include "talentrank/scoring/rankings.hpp"
#include "talentrank/scoring/score.hpp"
#include "talentrank/skillspace/cooccurrence.hpp"
#include "talentrank/skillspace/dbscan.hpp"
#include "talentrank/skillspace/embedding.hpp"
#include "talentrank/skillspace/skill_map.hpp"
#include "talentrank/skillspace/synthetic.hpp"

#include "date_cases.hpp"
#include "oracles.hpp"

using namespace talentrank;
namespace fs = std::filesystem;

namespace {

constexpr Date kReference{2019, 3, 15};

// Collects failures; the first few are reported.
struct Check {
  std::size_t failures = 0;
  std::string first;
  std::string note;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ == 0) first = what;
  }
};

std::string fmt(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

skillspace::CorpusTemplates templates() {
  return skillspace::parse_corpus_templates(
      read_file(fs::path(TALENTRANK_DATA_DIR) / "corpus_templates.json"));
}

// ---------------------------------------------------------------------------

void ac1(Check& c) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> sm(1e-9, 100.0), al(0.0, 300.0), di(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    scoring::ScoringConfig cfg;
    cfg.score_match = sm(gen);
    cfg.alpha = al(gen);
    double d = di(gen);
    double got = scoring::match_score(d, cfg);
    double want = oracle::clamp_score(cfg.score_match, cfg.alpha, d);
    c.expect(std::abs(got - want) <= 1e-12, "triple " + std::to_string(i) + ": " + fmt(got) +
                                                " vs " + fmt(want));
    c.expect(scoring::match_score(0.0, cfg) == cfg.score_match, "distance 0 != score_match");
  }
  scoring::ScoringConfig defaults;
  c.expect(scoring::match_score(0.0, defaults) == 100.0, "default exact match != 100");
  c.expect(scoring::match_score(1.0, defaults) == 0.0, "default distance 1 != 0");
  c.note = "1000 triples";
}

extract::EducationEntry education(DegreeLevel level, const std::string& institution) {
  extract::EducationEntry e;
  e.degree = level;
  e.institution = institution;
  e.institution_key = text::normalize_key(institution);
  e.span = extract::normalize_date_expression("2010 - 2012", kReference);
  return e;
}

extract::WorkEntry work(const std::string& employer, Date start) {
  extract::WorkEntry w;
  w.employer_raw = employer;
  w.employer_key = extract::employer_key(employer);
  w.span.start = start;
  w.span.resolved_end = kReference;
  return w;
}

void ac2(Check& c) {
  scoring::ScoringConfig cfg;
  auto table = scoring::import_university_rankings(
      "institution,score\nMid University,40\nTop University,90\n",
      "institution,score\nMid University,50\nTop University,80\n");
  extract::CandidateProfile p;
  p.educations = {education(DegreeLevel::kBachelor, "Unranked College")};
  c.expect(scoring::education_score(p, table, cfg) == 20.0, "Bachelor/unranked != 20");
  p.educations = {education(DegreeLevel::kMaster, "Mid University")};
  c.expect(scoring::education_score(p, table, cfg) == 80.0, "Master/(40,50) != 80");
  p.educations = {education(DegreeLevel::kDoctoral, "Top University")};
  c.expect(scoring::education_score(p, table, cfg) == 100.0, "Doctoral/(90,80) != 100");

  scoring::EmployerScoreTable employers;
  employers.entries["acme"] = {50.0, 3};
  extract::CandidateProfile q;
  q.reference_date = kReference;
  q.works = {work("Acme Inc", {2017, 4, 1})};
  c.expect(extract::months(q.works[0].span) == 24, "work span != 24 months");
  c.expect(scoring::work_score(q, employers, cfg) == 74.0, "24 months + 50 != 74");
  q.works = {work("Acme Inc", {2009, 4, 1})};
  c.expect(extract::months(q.works[0].span) == 120, "work span != 120 months");
  c.expect(scoring::work_score(q, employers, cfg) == 100.0, "120 months != 100");

  c.expect(scoring::overall_score(80, 60, 90, cfg.category_weights) == 80.0, "overall != 80");
  c.note = "education, work, overall";
}

void ac3(Check& c) {
  std::mt19937_64 gen(21);
  std::normal_distribution<double> nd;
  skillspace::SkillEmbedding emb;
  for (int i = 0; i < 40; ++i) {
    emb.vocabulary.tokens.push_back("k" + std::to_string(100 + i));
    emb.vocabulary.frequencies.push_back(1);
  }
  emb.dimension = 4;
  for (int i = 0; i < 40; ++i) {
    if (i % 7 == 3) {  // duplicate rows force ties
      for (std::size_t k = 0; k < 4; ++k) {
        emb.vectors.push_back(emb.vectors[static_cast<std::size_t>(i - 1) * 4 + k]);
      }
      continue;
    }
    double v[4] = {nd(gen), nd(gen), nd(gen), nd(gen)};
    double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
    for (double x : v) emb.vectors.push_back(x / n);
  }
  std::uniform_int_distribution<int> pick(0, 45), size(1, 20);
  auto draw = [&](bool unique) {
    std::vector<std::string> out;
    int n = size(gen);
    for (int i = 0; i < n; ++i) {
      int k = pick(gen);
      std::string t = k < 40 ? emb.vocabulary.tokens[static_cast<std::size_t>(k)]
                             : "oov" + std::to_string(k);
      if (!unique || std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    }
    return out;
  };
  scoring::ScoringConfig cfg;
  for (int trial = 0; trial < 200; ++trial) {
    auto cand = draw(false);
    auto desired = draw(true);
    auto got = scoring::skill_score(cand, desired, &emb, cfg);
    auto want = oracle::skill_matches(cand, desired, &emb, cfg.score_match, cfg.alpha);
    double mean = 0.0;
    for (std::size_t i = 0; i < want.size(); ++i) {
      const auto& g = got.matches.at(i);
      std::string at = "trial " + std::to_string(trial) + " skill " + desired[i];
      c.expect(g.matched == want[i].matched, at + ": matched differs");
      c.expect(g.distance == want[i].distance, at + ": distance differs");
      c.expect(g.score == want[i].score, at + ": score differs");
      mean += want[i].score;
    }
    mean /= static_cast<double>(want.size());
    c.expect(std::abs(got.score - mean) <= 1e-9, "trial " + std::to_string(trial) + ": mean");
  }
  c.note = "200 sets";
}

void ac4(Check& c) {
  std::size_t n = 0;
  for (const auto& d : golden::date_cases()) {
    ++n;
    try {
      auto span = extract::normalize_date_expression(d.text, golden::kReference);
      bool ok = format_us(span.start) == d.start && extract::months(span) == d.months;
      if (d.end == "Present") {
        ok = ok && span.open_ended() && span.resolved_end == golden::kReference;
      } else {
        ok = ok && span.end && format_us(*span.end) == d.end;
      }
      c.expect(ok, "'" + d.text + "' -> " + extract::render(span));
    } catch (const Error& e) {
      c.expect(false, "'" + d.text + "' rejected: " + e.what());
    }
  }
  for (const auto& text : golden::rejected_dates()) {
    bool rejected = false;
    try {
      extract::normalize_date_expression(text, golden::kReference);
    } catch (const NormalizationError& e) {
      rejected = e.original() == text;
    }
    c.expect(rejected, "'" + text + "' not rejected");
  }
  c.expect(n >= 33, "table has fewer than 33 cases");
  c.note = std::to_string(n) + " cases, " + std::to_string(golden::rejected_dates().size()) +
           " rejections";
}

void ac5(Check& c) {
  auto corpus = ingest::load_labeled_corpus(TALENTRANK_FIXTURES_DIR);
  c.expect(corpus.size() >= 20, "fewer than 20 fixtures");
  auto split = ingest::held_out_split(corpus);
  auto model = ingest::train_on_labeled(split.train, 1);
  auto score = ingest::evaluate_segmentation(model, split.test);
  c.expect(score.label_accuracy() >= 0.95, "label accuracy " + fmt(score.label_accuracy()));
  c.expect(score.boundary_match() >= 0.90, "boundary match " + fmt(score.boundary_match()));
  c.note = std::to_string(split.train.size()) + " train / " + std::to_string(split.test.size()) +
           " held out, labels " + fmt(score.label_accuracy()) + ", boundaries " +
           fmt(score.boundary_match());
}

void ac6(Check& c) {
  std::mt19937_64 gen(6);
  std::size_t compared = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t profiles = 1 + gen() % 50;
    std::size_t alphabet = 2 + gen() % 30;
    std::vector<std::vector<std::string>> corpus(profiles);
    for (auto& p : corpus) {
      std::size_t k = gen() % 10;
      for (std::size_t i = 0; i < k; ++i) p.push_back("s" + std::to_string(gen() % alphabet));
    }
    std::uint64_t min_count = 1 + gen() % 3;
    auto want = oracle::cooccurrence(corpus, min_count);
    if (want.tokens.empty()) {
      bool threw = false;
      try {
        skillspace::build_cooccurrence(corpus, min_count);
      } catch (const Error&) {
        threw = true;
      }
      c.expect(threw, "empty vocabulary accepted in trial " + std::to_string(trial));
      continue;
    }
    auto got = skillspace::build_cooccurrence(corpus, min_count);
    std::string at = "trial " + std::to_string(trial);
    c.expect(got.vocabulary.tokens == want.tokens, at + ": vocabulary");
    c.expect(got.vocabulary.frequencies == want.frequencies, at + ": frequencies");
    c.expect(got.matrix.counts == want.counts, at + ": pair counts");
    c.expect(got.matrix.total_profiles == corpus.size(), at + ": profile count");
    ++compared;
  }
  c.note = std::to_string(compared) + " corpora compared";
}

void ac7(Check& c) {
  auto planted = skillspace::planted_corpus(4, 10, 400, 4, 9);
  auto emb = skillspace::train_embedding(skillspace::build_cooccurrence(planted.profiles, 2), 10, 9);
  std::size_t ok = 0, total = 0;
  for (std::size_t a = 0; a < emb.size(); ++a) {
    for (std::size_t b = 0; b < emb.size(); ++b) {
      for (std::size_t x = 0; x < emb.size(); ++x) {
        const auto& ga = planted.group_of[emb.vocabulary.tokens[a]];
        if (a == b || ga != planted.group_of[emb.vocabulary.tokens[b]] ||
            ga == planted.group_of[emb.vocabulary.tokens[x]]) {
          continue;
        }
        ++total;
        ok += skillspace::distance_by_index(emb, a, b) < skillspace::distance_by_index(emb, a, x);
      }
    }
  }
  double frac = total ? static_cast<double>(ok) / static_cast<double>(total) : 0.0;
  c.expect(frac >= 0.95, "separation " + fmt(frac));
  for (std::size_t i = 0; i < emb.size(); ++i) {
    for (std::size_t k : {1u, 5u, 100u}) {
      auto got = skillspace::nearest(emb, emb.vocabulary.tokens[i], k);
      auto want = oracle::nearest(emb, i, k);
      bool same = got.size() == want.size();
      for (std::size_t j = 0; same && j < got.size(); ++j) {
        same = got[j].index == want[j].first && got[j].distance == want[j].second;
      }
      c.expect(same, "nearest(" + emb.vocabulary.tokens[i] + ", " + std::to_string(k) + ")");
    }
  }
  c.note = std::to_string(total) + " triples, " + fmt(frac * 100) + "% ordered";
}

void ac8(Check& c) {
  auto planted = skillspace::planted_corpus(6, 50, 3000, 5, 12);
  auto emb =
      skillspace::train_embedding(skillspace::build_cooccurrence(planted.profiles, 2), 12, 12);
  c.expect(emb.size() <= 300, "vocabulary over 300");
  skillspace::MapParams params;
  params.seed = 12;
  auto a = skillspace::build_skill_map(emb, params);
  auto b = skillspace::build_skill_map(emb, params);
  c.expect(a.coords == b.coords, "coordinates differ between runs");
  c.expect(skillspace::serialize(a) == skillspace::serialize(b), "serialized maps differ");
  c.expect(a.cluster_count() >= 2, "clusters " + std::to_string(a.cluster_count()));
  std::map<int, std::map<std::size_t, std::size_t>> tally;
  std::size_t clustered = 0;
  for (std::size_t i = 0; i < a.tokens.size(); ++i) {
    if (a.clusters[i] == skillspace::kNoise) continue;
    ++tally[a.clusters[i]][planted.group_of[a.tokens[i]]];
    ++clustered;
  }
  std::size_t majority = 0;
  for (const auto& [cluster, groups] : tally) {
    std::size_t best = 0;
    for (const auto& [g, n] : groups) best = std::max(best, n);
    majority += best;
  }
  double purity = clustered ? static_cast<double>(majority) / static_cast<double>(clustered) : 0.0;
  c.expect(purity >= 0.9, "purity " + fmt(purity));
  c.note = "|V| " + std::to_string(emb.size()) + ", " + std::to_string(a.cluster_count()) +
           " clusters, purity " + fmt(purity) + ", noise " +
           std::to_string(a.tokens.size() - clustered);
}

void ac9(Check& c) {
  auto t = templates();
  auto corpus = skillspace::generate_corpus(t, 1000, 31, kReference);
  auto files = skillspace::ranking_files(t);
  auto rankings = scoring::import_university_rankings(files.the_csv, files.qs_csv);
  scoring::ScoringConfig cfg;
  auto employers = scoring::build_employer_scores(corpus, rankings, cfg);
  auto emb = skillspace::train_embedding(
      skillspace::build_cooccurrence(skillspace::skill_sets(corpus), 2), 20, 31);
  std::mt19937_64 gen(2);
  std::size_t checks = 0;
  for (std::size_t n = 0; n < corpus.size(); ++n) {
    auto p = corpus[n];
    std::string at = "profile " + std::to_string(n);
    if (auto i = scoring::most_recent_education(p)) {
      double before = scoring::education_score(p, rankings, cfg);
      auto& d = p.educations[*i].degree;
      d = d == DegreeLevel::kOther      ? DegreeLevel::kBachelor
          : d == DegreeLevel::kBachelor ? DegreeLevel::kMaster
                                        : DegreeLevel::kDoctoral;
      c.expect(scoring::education_score(p, rankings, cfg) >= before, at + ": degree upgrade");
      ++checks;
    }
    if (!p.works.empty()) {
      double before = scoring::work_evidence(p, employers, cfg).experience_points;
      auto& s = p.works[gen() % p.works.size()].span.start;
      s = s.month == 1 ? Date{s.year - 1, 12, 1} : Date{s.year, s.month - 1, 1};
      c.expect(scoring::work_evidence(p, employers, cfg).experience_points >= before,
               at + ": month extension");
      ++checks;
    }
    std::vector<std::string> skills;
    for (const auto& s : p.skills) skills.push_back(s.token);
    std::vector<std::string> desired;
    for (int k = 0; k < 3; ++k) {
      const auto& tok = emb.vocabulary.tokens[gen() % emb.size()];
      if (std::find(desired.begin(), desired.end(), tok) == desired.end()) desired.push_back(tok);
    }
    double before = scoring::skill_score(skills, desired, &emb, cfg).score;
    skills.push_back(desired[gen() % desired.size()]);
    c.expect(scoring::skill_score(skills, desired, &emb, cfg).score >= before,
             at + ": added exact match");
    ++checks;
  }

  std::vector<const extract::CandidateProfile*> ptrs;
  for (const auto& p : corpus) ptrs.push_back(&p);
  for (int trial = 0; trial < 200; ++trial) {
    catalog::FilterSpec loose;
    loose.min_experience_years = static_cast<double>(gen() % 8);
    std::set<DegreeLevel> degrees;
    for (auto l : kAllDegreeLevels) {
      if (gen() % 2) degrees.insert(l);
    }
    if (degrees.empty()) degrees.insert(DegreeLevel::kMaster);
    loose.required_degrees = degrees;
    auto tight = loose;
    *tight.min_experience_years += static_cast<double>(gen() % 3);
    if (tight.required_degrees->size() > 1) {
      tight.required_degrees->erase(std::next(tight.required_degrees->begin(),
                                              static_cast<long>(gen() % tight.required_degrees->size())));
    }
    auto a = catalog::filter_candidates(ptrs, loose);
    std::set<std::string> kept(a.begin(), a.end());
    for (const auto& id : catalog::filter_candidates(ptrs, tight)) {
      c.expect(kept.count(id) == 1, "filter trial " + std::to_string(trial) + " added " + id);
    }
    ++checks;
  }
  c.note = std::to_string(checks) + " checks";
}

void ac10(Check& c) {
  auto t = templates();
  auto corpus = skillspace::generate_corpus(t, 500, 10, kReference);
  auto files = skillspace::ranking_files(t);
  auto rankings = scoring::import_university_rankings(files.the_csv, files.qs_csv);
  scoring::ScoringConfig cfg;
  auto employers = scoring::build_employer_scores(corpus, rankings, cfg);
  auto emb = skillspace::train_embedding(
      skillspace::build_cooccurrence(skillspace::skill_sets(corpus), 2), 20, 10);
  scoring::ScoringContext ctx{&emb, &rankings, &employers, cfg, "acceptance"};
  std::mt19937_64 gen(10);
  std::size_t pools = 0;
  for (std::size_t start = 0; start + 50 <= corpus.size(); start += 50) {
    std::vector<const extract::CandidateProfile*> pool;
    for (std::size_t i = start; i < start + 50; ++i) pool.push_back(&corpus[i]);
    scoring::JobProfile job;
    job.job_id = "pool";
    for (int k = 0; k < 3; ++k) {
      const auto& tok = emb.vocabulary.tokens[gen() % emb.size()];
      if (std::find(job.desired_skills.begin(), job.desired_skills.end(), tok) ==
          job.desired_skills.end()) {
        job.desired_skills.push_back(tok);
      }
    }
    std::vector<scoring::ScoreCard> cards;
    for (const auto* p : pool) cards.push_back(scoring::score_candidate(*p, job, ctx));
    std::vector<catalog::SortMode> modes = {
        {catalog::SortKind::kOverall, ""}, {catalog::SortKind::kEducation, ""},
        {catalog::SortKind::kWork, ""},    {catalog::SortKind::kSkills, ""},
        {catalog::SortKind::kScoreChart, ""}};
    for (const auto& s : job.desired_skills) modes.push_back({catalog::SortKind::kPerSkill, s});
    for (const auto& mode : modes) {
      auto r1 = catalog::rank_candidates(pool, job, ctx, mode);
      auto r2 = catalog::rank_candidates(pool, job, ctx, mode);
      std::vector<std::string> ids;
      bool same = r1.entries.size() == r2.entries.size();
      for (std::size_t i = 0; i < r1.entries.size(); ++i) {
        ids.push_back(r1.entries[i].card.candidate_id);
        same = same && r1.entries[i].card == r2.entries[i].card &&
               r1.entries[i].flags == r2.entries[i].flags;
      }
      std::string at = "pool " + std::to_string(pools) + " " + catalog::to_string(mode);
      c.expect(same, at + ": repeated run differs");
      c.expect(ids == oracle::rank_order(cards, job.desired_skills, mode), at + ": order");
      std::set<std::string> flagged;
      for (const auto& e : r1.entries) {
        if (e.flags.skills) flagged.insert(e.card.candidate_id);
      }
      c.expect(flagged == oracle::top_decile(cards, job.desired_skills,
                                             {catalog::SortKind::kSkills, ""}),
               at + ": top decile");
    }
    ++pools;
  }

  // Coarse synthetic cards make the work tiebreak fire.
  std::vector<std::string> desired = {"a", "b"};
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<scoring::ScoreCard> cards;
    for (int i = 0; i < 50; ++i) {
      scoring::ScoreCard card;
      card.candidate_id = "c" + std::to_string(i);
      auto v = [&] { return static_cast<double>(gen() % 4) * 25.0; };
      card.education_score = v();
      card.work_score = v();
      card.skills_score = v();
      card.overall_score = v();
      for (std::size_t k = 0; k < desired.size(); ++k) {
        scoring::SkillMatch m;
        m.desired = desired[k];
        m.score = v();
        card.skills.matches.push_back(m);
      }
      cards.push_back(card);
    }
    std::shuffle(cards.begin(), cards.end(), gen);
    for (auto kind : {catalog::SortKind::kScoreChart, catalog::SortKind::kOverall}) {
      catalog::SortMode mode{kind, ""};
      auto r = catalog::rank_cards(cards, desired, mode);
      std::vector<std::string> ids;
      for (const auto& e : r.entries) ids.push_back(e.card.candidate_id);
      c.expect(ids == oracle::rank_order(cards, desired, mode),
               "coarse trial " + std::to_string(trial) + " " + catalog::to_string(mode));
    }
  }
  c.note = std::to_string(pools) + " pools of 50 + 20 tie-heavy pools";
}

struct RunResult {
  std::map<std::string, std::string> models;
  std::string csv;
  bool ok = true;
  std::string error;
};

int cli(std::vector<std::string> args, std::string* out_text, std::string* err_text) {
  args.insert(args.begin(), "talentrank");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

RunResult pipeline(const fs::path& dir) {
  RunResult r;
  auto step = [&](std::vector<std::string> args) {
    if (!r.ok) return std::string();
    std::string out, err;
    if (cli(args, &out, &err) != cli::kExitOk) {
      r.ok = false;
      r.error = args[0] + ": " + err;
    }
    return out;
  };
  auto store = (dir / "store").string();
  auto corpus = (dir / "corpus").string();
  step({"gen-corpus", "--profiles", "2000", "--seed", "42", "--out", corpus, "--reference-date",
        "2019-03-15", "--resumes", "40"});
  step({"import-rankings", "--store", store, "--the", corpus + "/the.csv", "--qs",
        corpus + "/qs.csv"});
  step({"train", "--store", store, "--dims", "100", "--seed", "42", "--corpus", corpus + "/profiles.jsonl"});
  std::vector<std::string> ingest = {"ingest", "--store", store, "--reference-date", "2019-03-15"};
  std::vector<std::string> resumes;
  if (fs::is_directory(dir / "corpus" / "resumes")) {
    for (const auto& e : fs::directory_iterator(dir / "corpus" / "resumes")) {
      resumes.push_back(e.path().string());
    }
  }
  std::sort(resumes.begin(), resumes.end());
  ingest.insert(ingest.end(), resumes.begin(), resumes.end());
  step(ingest);
  r.csv = step({"rank", "--store", store, "--job",
                (fs::path(TALENTRANK_DATA_DIR) / "job_templates" / "data-scientist.json").string(),
                "--format", "csv", "--min-years", "0", "--degrees", "any"});
  if (r.ok) {
    for (const auto* sub : {catalog::files::kModels, catalog::files::kCandidates}) {
      for (const auto& e : fs::directory_iterator(dir / "store" / sub)) {
        r.models[std::string(sub) + "/" + e.path().filename().string()] = read_file(e.path());
      }
    }
  }
  return r;
}

void ac11(Check& c) {
  oracle::TempDir a("acceptance"), b("acceptance");
  auto first = pipeline(a.path);
  auto second = pipeline(b.path);
  c.expect(first.ok, "first run failed: " + first.error);
  c.expect(second.ok, "second run failed: " + second.error);
  if (!first.ok || !second.ok) return;
  c.expect(first.models.size() == second.models.size(), "different artifact sets");
  for (const auto& [name, bytes] : first.models) {
    auto it = second.models.find(name);
    c.expect(it != second.models.end() && it->second == bytes, name + " differs");
  }
  for (const auto* m : {catalog::files::kSections, catalog::files::kEmbedding,
                        catalog::files::kMap, catalog::files::kRankings,
                        catalog::files::kEmployers}) {
    c.expect(first.models.count(std::string(catalog::files::kModels) + "/" + m) == 1,
             std::string("missing ") + m);
  }
  c.expect(first.csv == second.csv, "rankings CSV differs");
  auto rows = static_cast<std::size_t>(std::count(first.csv.begin(), first.csv.end(), '\n'));
  c.expect(rows == 41, "ranking has " + std::to_string(rows) + " lines");
  c.note = "2000 profiles, " + std::to_string(first.models.size()) + " artifacts, " +
           std::to_string(rows - 1) + " ranked";
}

// Bytes -> object -> bytes must be the identity, and every damaged or
// future-version copy must be rejected.
template <typename Load>
void artifact(Check& c, const std::string& name, const std::string& bytes, Load load) {
  try {
    c.expect(load(bytes) == bytes, name + ": round trip not bit-exact");
  } catch (const Error& e) {
    c.expect(false, name + ": " + e.what());
    return;
  }
  auto rejected = [&](std::string damaged, ErrorCode want) {
    try {
      load(damaged);
    } catch (const Error& e) {
      return e.code() == want;
    }
    return false;
  };
  for (std::size_t cut = 0; cut < bytes.size(); cut += std::max<std::size_t>(1, bytes.size() / 64)) {
    c.expect(rejected(bytes.substr(0, cut), ErrorCode::kIntegrity),
             name + ": truncation at " + std::to_string(cut) + " accepted");
  }
  for (std::size_t i = 0; i < bytes.size(); i += std::max<std::size_t>(1, bytes.size() / 64)) {
    if (i == 4 || i == 5) continue;  // version field
    auto flipped = bytes;
    flipped[i] = static_cast<char>(flipped[i] ^ 0x10);
    c.expect(rejected(flipped, ErrorCode::kIntegrity),
             name + ": flip at " + std::to_string(i) + " accepted");
  }
  auto future = bytes;
  future[4] = static_cast<char>(kFormatVersion + 1);
  c.expect(rejected(future, ErrorCode::kVersion), name + ": future version accepted");
}

void ac12(Check& c) {
  auto t = templates();
  auto corpus = skillspace::generate_corpus(t, 300, 12, kReference);
  auto files = skillspace::ranking_files(t);
  auto rankings = scoring::import_university_rankings(files.the_csv, files.qs_csv);
  scoring::ScoringConfig cfg;
  auto employers = scoring::build_employer_scores(corpus, rankings, cfg);
  auto emb = skillspace::train_embedding(
      skillspace::build_cooccurrence(skillspace::skill_sets(corpus), 2), 16, 12, "h");
  skillspace::MapParams mp;
  mp.seed = 12;
  mp.iterations = 250;
  auto map = skillspace::build_skill_map(emb, mp);
  auto labeled = ingest::load_labeled_corpus(TALENTRANK_FIXTURES_DIR);
  std::vector<const ingest::LabeledDocument*> docs;
  for (const auto& d : labeled) docs.push_back(&d);
  auto sections = ingest::train_on_labeled(docs, 12);
  auto job = scoring::job_from_json(nlohmann::json::parse(
      read_file(fs::path(TALENTRANK_DATA_DIR) / "job_templates" / "data-scientist.json")));
  catalog::CandidateRecord record{corpus[0], skillspace::render_resume(corpus[0]), true};

  artifact(c, "candidate", catalog::serialize(record),
           [](const std::string& b) { return catalog::serialize(catalog::deserialize_candidate(b)); });
  artifact(c, "job", scoring::serialize(job),
           [](const std::string& b) { return scoring::serialize(scoring::deserialize_job(b)); });
  artifact(c, "section model", ingest::serialize(sections), [](const std::string& b) {
    return ingest::serialize(ingest::deserialize_section_model(b));
  });
  artifact(c, "embedding", skillspace::serialize(emb), [](const std::string& b) {
    return skillspace::serialize(skillspace::deserialize_embedding(b));
  });
  artifact(c, "skill map", skillspace::serialize(map), [](const std::string& b) {
    return skillspace::serialize(skillspace::deserialize_skill_map(b));
  });
  artifact(c, "rankings", scoring::serialize(rankings), [](const std::string& b) {
    return scoring::serialize(scoring::deserialize_rankings(b));
  });
  artifact(c, "employers", scoring::serialize(employers), [](const std::string& b) {
    return scoring::serialize(scoring::deserialize_employer_scores(b));
  });
  c.expect(catalog::deserialize_candidate(catalog::serialize(record)) == record,
           "candidate record not equal after load");
  c.expect(skillspace::deserialize_embedding(skillspace::serialize(emb)) == emb,
           "embedding not equal after load");

  // A store with one damaged file must refuse to open at all.
  oracle::TempDir dir("acceptance");
  {
    auto store = catalog::CandidateStore::open(dir.path);
    store->add_candidate(record);
    store->create_job(job);
  }
  auto models = dir.path / catalog::files::kModels;
  write_file_atomic(models / catalog::files::kEmbedding, skillspace::serialize(emb));
  write_file_atomic(models / catalog::files::kMap, skillspace::serialize(map));
  write_file_atomic(models / catalog::files::kRankings, scoring::serialize(rankings));
  write_file_atomic(models / catalog::files::kEmployers, scoring::serialize(employers));
  write_file_atomic(models / catalog::files::kSections, ingest::serialize(sections));
  {
    auto reopened = catalog::CandidateStore::open(dir.path);
    auto snap = reopened->snapshot();
    c.expect(snap->candidates.size() == 1 && snap->jobs.size() == 1, "store reopen lost data");
    c.expect(snap->models->embedding && *snap->models->embedding == emb, "store embedding differs");
    c.expect(snap->models->map && *snap->models->map == map, "store map differs");
  }
  std::vector<fs::path> victims;
  for (const auto* sub : {catalog::files::kCandidates, catalog::files::kJobs,
                          catalog::files::kModels}) {
    for (const auto& e : fs::directory_iterator(dir.path / sub)) victims.push_back(e.path());
  }
  std::sort(victims.begin(), victims.end());
  for (const auto& v : victims) {
    auto good = read_file(v);
    for (int kind = 0; kind < 2; ++kind) {
      auto bad = good;
      if (kind == 0) bad.resize(bad.size() / 2);
      else bad[4] = static_cast<char>(kFormatVersion + 1);
      write_file_atomic(v, bad);
      bool refused = false;
      try {
        catalog::CandidateStore::open(dir.path);
      } catch (const Error& e) {
        refused = std::string(e.what()).find(v.filename().string()) != std::string::npos;
      }
      c.expect(refused, "store opened with damaged " + v.filename().string());
      write_file_atomic(v, good);
    }
  }
  c.note = "7 artifact kinds, " + std::to_string(victims.size()) + " store files damaged";
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* title;
    double limit_seconds;  // 0 = none
    std::function<void(Check&)> run;
  };
  std::vector<Criterion> criteria = {
      {"AC1", "per-skill score clamp rule", 1, ac1},
      {"AC2", "scoring golden cases", 1, ac2},
      {"AC3", "skill match equals brute force", 10, ac3},
      {"AC4", "date normalization table", 0, ac4},
      {"AC5", "section segmentation fixtures", 30, ac5},
      {"AC6", "co-occurrence equals brute force", 0, ac6},
      {"AC7", "embedding separation and nearest neighbours", 0, ac7},
      {"AC8", "skill map determinism and clustering", 60, ac8},
      {"AC9", "monotonicity suite", 0, ac9},
      {"AC10", "ranking comparator and determinism", 0, ac10},
      {"AC11", "end-to-end determinism", 120, ac11},
      {"AC12", "persistence round trips and rejection", 0, ac12},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.limit_seconds > 0 && secs >= cr.limit_seconds) {
      c.expect(false, "took " + fmt(secs) + " s, limit " + fmt(cr.limit_seconds) + " s");
    }
    bool pass = c.failures == 0;
    failed += pass ? 0 : 1;
    std::ostringstream secs_text;
    secs_text.precision(2);
    secs_text << std::fixed << secs;
    std::cout << cr.id << " " << (pass ? "PASS" : "FAIL") << "  " << cr.title << " ("
              << secs_text.str() << " s";
    if (!c.note.empty()) std::cout << "; " << c.note;
    std::cout << ")";
    if (!pass) std::cout << "  [" << c.failures << " failures, first: " << c.first << "]";
    std::cout << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
