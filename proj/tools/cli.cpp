#include "cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "talentrank/catalog/filter.hpp"
#include "talentrank/catalog/pipeline.hpp"
#include "talentrank/catalog/rank.hpp"
#include "talentrank/catalog/store.hpp"
#include "talentrank/common/binary.hpp"
#include "talentrank/common/csv.hpp"
#include "talentrank/common/error.hpp"
#include "talentrank/common/text.hpp"
#include "talentrank/ingest/labeled.hpp"
#include "talentrank/scoring/employers.hpp"
#include "talentrank/scoring/rankings.hpp"
#include "talentrank/server/api.hpp"
#include "talentrank/skillspace/cooccurrence.hpp"
#include "talentrank/skillspace/dbscan.hpp"
#include "talentrank/skillspace/skill_map.hpp"
#include "talentrank/skillspace/synthetic.hpp"

#ifndef TALENTRANK_DATA_DIR
#define TALENTRANK_DATA_DIR "data"
#endif
#ifndef TALENTRANK_FIXTURES_DIR
#define TALENTRANK_FIXTURES_DIR "fixtures"
#endif

namespace talentrank::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<std::string> env(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

fs::path store_root(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (auto e = env("TALENTRANK_STORE")) return *e;
  throw UsageError("--store is required (or set TALENTRANK_STORE)");
}

Date reference_date(const std::string& flag) {
  std::string text = flag;
  if (text.empty()) text = env("TALENTRANK_REFERENCE_DATE").value_or("");
  if (text.empty()) {
    throw UsageError("--reference-date YYYY-MM-DD is required (or set TALENTRANK_REFERENCE_DATE)");
  }
  auto d = parse_iso(text);
  if (!d) throw UsageError("invalid reference date '" + text + "', expected YYYY-MM-DD");
  return *d;
}

Date today() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  return Date{tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday};
}

std::optional<fs::path> config_path(const std::string& flag) {
  if (flag.empty()) return std::nullopt;
  return fs::path(flag);
}

std::string fixed2(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << v;
  return s.str();
}

// Everything the subcommands bind their flags to.
struct Options {
  std::string store;
  std::string config;
  std::string reference_date;
  std::uint64_t seed = 0;

  // ingest
  std::vector<std::string> files;
  std::string format;

  // gen-corpus
  std::size_t profiles = 0;
  std::string out;
  std::string templates;
  std::size_t resumes = 0;

  // train / init
  std::size_t dims = 100;
  std::string corpus;
  std::string fixtures;
  std::string jobs_dir;
  std::uint64_t min_count = skillspace::kDefaultMinCount;
  std::optional<double> perplexity;
  std::size_t iterations = 1000;
  std::optional<double> eps;
  std::size_t min_pts = 3;
  double eps_quantile = 0.5;

  // import-rankings
  std::string the;
  std::string qs;

  // rank / score
  std::string job;
  std::string candidate;
  std::optional<std::string> min_years;
  std::optional<std::string> degrees;
  std::string sort = "overall";
  std::string output_format = "table";
  std::string score_format = "text";

  // serve
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string webroot;

  // jobs
  std::string job_file;
  std::string job_id;
};

// ---------------------------------------------------------------------------
// init

int cmd_init(const Options& o, std::ostream& out, std::ostream& err) {
  auto root = store_root(o.store);
  auto store = catalog::CandidateStore::open(root, config_path(o.config));
  fs::path fixtures = o.fixtures.empty() ? fs::path(TALENTRANK_FIXTURES_DIR) : fs::path(o.fixtures);
  auto corpus = ingest::load_labeled_corpus(fixtures);
  std::vector<const ingest::LabeledDocument*> docs;
  for (const auto& d : corpus) docs.push_back(&d);
  auto model = ingest::train_on_labeled(docs, o.seed);
  write_file_atomic(root / catalog::files::kModels / catalog::files::kSections, serialize(model));
  out << "section model: " << docs.size() << " documents, " << model.vocabulary.size()
      << " features\n";

  fs::path jobs = o.jobs_dir.empty() ? fs::path(TALENTRANK_DATA_DIR) / "job_templates"
                                     : fs::path(o.jobs_dir);
  std::size_t added = 0;
  if (fs::is_directory(jobs)) {
    std::vector<fs::path> paths;
    for (const auto& e : fs::directory_iterator(jobs)) {
      if (e.path().extension() == ".json") paths.push_back(e.path());
    }
    std::sort(paths.begin(), paths.end());
    auto snap = store->snapshot();
    for (const auto& p : paths) {
      auto job = scoring::job_from_json(json::parse(read_file(p)));
      scoring::normalize_job(job);
      if (snap->job(job.job_id)) continue;
      store->create_job(job);
      ++added;
    }
  } else {
    err << "note: job template directory '" << jobs.string() << "' not found\n";
  }
  out << "job templates: " << added << " added\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// ingest

ingest::LayoutFormat format_for(const fs::path& file, const std::string& flag) {
  if (!flag.empty()) return ingest::parse_layout_format(flag);
  auto ext = text::to_lower(file.extension().string());
  return ext == ".html" || ext == ".htm" ? ingest::LayoutFormat::kHtmlSubset
                                         : ingest::LayoutFormat::kBlockTable;
}

int cmd_ingest(const Options& o, std::ostream& out, std::ostream& err) {
  auto root = store_root(o.store);
  if (o.files.empty()) throw UsageError("ingest needs at least one file");
  if (!o.format.empty()) ingest::parse_layout_format(o.format);
  auto ref = reference_date(o.reference_date);
  auto store = catalog::CandidateStore::open(root, config_path(o.config));
  auto models = store->snapshot()->models;
  if (!models || !models->sections) {
    throw Error(ErrorCode::kConfiguration, "no section model in store; run init or train first");
  }
  int status = kExitOk;
  for (const auto& f : o.files) {
    fs::path path(f);
    try {
      auto bytes = read_file(path);
      auto result = catalog::process_document(bytes, format_for(path, o.format),
                                              path.filename().string(), *models->sections, ref);
      auto id = result.profile.candidate_id;
      for (const auto& w : result.profile.warnings) err << f << ": warning: " << w << "\n";
      store->add_candidate({result.profile, result.document, false});
      out << path.filename().string() << " \xE2\x86\x92 " << id << "\n";
    } catch (const Error& e) {
      err << f << ": " << error_code_name(e.code()) << ": " << e.what() << "\n";
      status = kExitFailure;
    }
  }
  return status;
}

// ---------------------------------------------------------------------------
// gen-corpus

int cmd_gen_corpus(const Options& o, std::ostream& out, std::ostream&) {
  if (o.profiles < 1) throw UsageError("--profiles must be at least 1");
  auto ref = reference_date(o.reference_date);
  fs::path templates_path = o.templates.empty()
                                ? fs::path(TALENTRANK_DATA_DIR) / "corpus_templates.json"
                                : fs::path(o.templates);
  auto templates = skillspace::parse_corpus_templates(read_file(templates_path));
  auto corpus = skillspace::generate_corpus(templates, o.profiles, o.seed, ref);
  fs::path dir(o.out);
  fs::create_directories(dir);
  write_file_atomic(dir / "profiles.jsonl", skillspace::corpus_to_jsonl(corpus));
  auto rankings = skillspace::ranking_files(templates);
  write_file_atomic(dir / "the.csv", rankings.the_csv);
  write_file_atomic(dir / "qs.csv", rankings.qs_csv);
  std::size_t rendered = std::min(o.resumes, corpus.size());
  if (rendered > 0) {
    fs::create_directories(dir / "resumes");
    for (std::size_t i = 0; i < rendered; ++i) {
      auto doc = skillspace::render_resume(corpus[i]);
      write_file_atomic(dir / "resumes" / (corpus[i].source_document + ".blocks"),
                        ingest::to_block_table(doc));
    }
  }
  out << "profiles " << corpus.size() << " -> " << (dir / "profiles.jsonl").string() << "\n";
  out << "rankings -> " << (dir / "the.csv").string() << ", " << (dir / "qs.csv").string() << "\n";
  if (rendered > 0) out << "resumes " << rendered << " -> " << (dir / "resumes").string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// train

int cmd_train(const Options& o, std::ostream& out, std::ostream& err) {
  auto root = store_root(o.store);
  if (o.dims < 1) throw UsageError("--dims must be at least 1");
  auto store = catalog::CandidateStore::open(root, config_path(o.config));
  auto snap = store->snapshot();
  if (!snap->models->rankings) {
    throw Error(ErrorCode::kConfiguration,
                "no university rankings in store; run import-rankings first");
  }

  std::vector<extract::CandidateProfile> corpus;
  if (!o.corpus.empty()) {
    corpus = skillspace::corpus_from_jsonl(read_file(o.corpus));
  } else {
    for (const auto* p : snap->profiles()) corpus.push_back(*p);
  }
  if (corpus.empty()) throw Error(ErrorCode::kTraining, "training corpus is empty");

  auto cooc = skillspace::build_cooccurrence(skillspace::skill_sets(corpus), o.min_count);
  std::size_t dims = o.dims;
  if (dims > cooc.vocabulary.size()) {
    err << "note: --dims " << dims << " exceeds the vocabulary; using " << cooc.vocabulary.size()
        << "\n";
    dims = cooc.vocabulary.size();
  }
  auto hash = scoring::corpus_hash(corpus);
  auto emb = skillspace::train_embedding(cooc, dims, o.seed, hash);

  skillspace::MapParams mp;
  mp.perplexity = o.perplexity;
  mp.iterations = o.iterations;
  mp.seed = o.seed;
  mp.eps = o.eps;
  mp.min_pts = o.min_pts;
  mp.eps_quantile = o.eps_quantile;
  auto map = skillspace::build_skill_map(emb, mp);

  auto employers =
      scoring::build_employer_scores(corpus, *snap->models->rankings, snap->models->config);

  auto models = root / catalog::files::kModels;
  bool sections_written = false;
  if (!snap->models->sections || !o.fixtures.empty()) {
    fs::path fixtures = o.fixtures.empty() ? fs::path(TALENTRANK_FIXTURES_DIR) : fs::path(o.fixtures);
    auto labeled = ingest::load_labeled_corpus(fixtures);
    std::vector<const ingest::LabeledDocument*> docs;
    for (const auto& d : labeled) docs.push_back(&d);
    write_file_atomic(models / catalog::files::kSections,
                      serialize(ingest::train_on_labeled(docs, o.seed)));
    sections_written = true;
  }
  write_file_atomic(models / catalog::files::kEmbedding, serialize(emb));
  write_file_atomic(models / catalog::files::kMap, serialize(map));
  write_file_atomic(models / catalog::files::kEmployers, serialize(employers));
  store->reload_models();

  std::size_t noise = static_cast<std::size_t>(
      std::count(map.clusters.begin(), map.clusters.end(), skillspace::kNoise));
  out << "corpus " << corpus.size() << " profiles\n";
  out << "vocabulary " << emb.size() << ", dimensions " << emb.dimension << "\n";
  out << "map perplexity " << csv::format_double(map.perplexity) << ", eps "
      << csv::format_double(map.eps) << ", min_pts " << map.min_pts << "\n";
  out << "clusters " << map.cluster_count() << ", noise " << noise << "\n";
  out << "employers " << employers.entries.size() << "\n";
  if (sections_written) out << "section model retrained\n";
  out << "models version " << store->snapshot()->models->version << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// import-rankings

int cmd_import_rankings(const Options& o, std::ostream& out, std::ostream& err) {
  auto root = store_root(o.store);
  auto table = scoring::import_university_rankings(read_file(o.the), read_file(o.qs));
  auto store = catalog::CandidateStore::open(root, config_path(o.config));
  write_file_atomic(root / catalog::files::kModels / catalog::files::kRankings, serialize(table));
  std::size_t the = 0, qs = 0, both = 0;
  for (const auto& [_, s] : table.entries) {
    the += s.the.has_value();
    qs += s.qs.has_value();
    both += s.the && s.qs;
  }
  for (const auto& w : table.warnings) err << "warning: " << w << "\n";
  out << "THE rows " << the << ", QS rows " << qs << "\n";
  out << "institutions " << table.entries.size() << " (both sources " << both << ", THE only "
      << the - both << ", QS only " << qs - both << ")\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// rank / score

scoring::JobProfile resolve_job(const catalog::Snapshot& snap, const std::string& ref) {
  if (const auto* job = snap.job(ref)) return *job;
  fs::path p(ref);
  if (fs::is_regular_file(p)) {
    auto job = scoring::job_from_json(json::parse(read_file(p)));
    scoring::normalize_job(job);
    return job;
  }
  throw Error(ErrorCode::kNotFound, "unknown job '" + ref + "'");
}

int cmd_rank(const Options& o, std::ostream& out, std::ostream&) {
  auto root = store_root(o.store);
  if (o.output_format != "table" && o.output_format != "csv") {
    throw UsageError("--format must be table or csv");
  }
  auto mode = catalog::parse_sort_mode(o.sort);
  auto store = catalog::CandidateStore::open(root, config_path(o.config));
  auto snap = store->snapshot();
  auto job = resolve_job(*snap, o.job);
  auto filter = catalog::filter_for(job);
  catalog::apply_overrides(filter, o.min_years, o.degrees);
  catalog::validate(filter);

  std::vector<const extract::CandidateProfile*> kept;
  for (const auto& id : catalog::filter_candidates(snap->profiles(), filter)) {
    kept.push_back(&snap->candidate(id)->profile);
  }
  auto ranked = catalog::rank_candidates(kept, job, snap->scoring_context(), mode);

  auto name_of = [&](const std::string& id) {
    const auto& p = snap->candidate(id)->profile;
    return p.name ? p.name->value : std::string();
  };
  if (o.output_format == "csv") {
    out << "rank,candidate_id,name,education,work,skills,overall";
    for (const auto& s : job.desired_skills) out << "," << csv::escape("skill:" + s);
    out << "\n";
    for (std::size_t r = 0; r < ranked.entries.size(); ++r) {
      const auto& c = ranked.entries[r].card;
      out << r + 1 << "," << c.candidate_id << "," << csv::escape(name_of(c.candidate_id)) << ","
          << csv::format_double(c.education_score) << "," << csv::format_double(c.work_score)
          << "," << csv::format_double(c.skills_score) << ","
          << csv::format_double(c.overall_score);
      for (const auto& m : c.skills.matches) out << "," << csv::format_double(m.score);
      out << "\n";
    }
    return kExitOk;
  }

  out << "job " << job.job_id << " (" << job.name << "), sort " << catalog::to_string(mode)
      << ", " << ranked.entries.size() << " candidates\n";
  out << std::left << std::setw(5) << "rank" << std::setw(19) << "candidate_id" << std::setw(24)
      << "name" << std::right << std::setw(10) << "education" << std::setw(8) << "work"
      << std::setw(8) << "skills" << std::setw(9) << "overall" << "\n";
  for (std::size_t r = 0; r < ranked.entries.size(); ++r) {
    const auto& e = ranked.entries[r];
    const auto& c = e.card;
    auto mark = [](double v, bool top) { return fixed2(v) + (top ? "*" : " "); };
    out << std::left << std::setw(5) << r + 1 << std::setw(19) << c.candidate_id << std::setw(24)
        << name_of(c.candidate_id).substr(0, 23) << std::right << std::setw(10)
        << mark(c.education_score, e.flags.education) << std::setw(8)
        << mark(c.work_score, e.flags.work) << std::setw(8) << mark(c.skills_score, e.flags.skills)
        << std::setw(9) << mark(c.overall_score, e.flags.overall) << "\n";
  }
  if (!ranked.entries.empty()) out << "* top decile in that column\n";
  return kExitOk;
}

int cmd_score(const Options& o, std::ostream& out, std::ostream&) {
  auto root = store_root(o.store);
  if (o.score_format != "text" && o.score_format != "json") {
    throw UsageError("--format must be text or json");
  }
  auto store = catalog::CandidateStore::open(root, config_path(o.config));
  auto snap = store->snapshot();
  const auto* rec = snap->candidate(o.candidate);
  if (!rec) throw Error(ErrorCode::kNotFound, "unknown candidate '" + o.candidate + "'");
  auto job = resolve_job(*snap, o.job);
  auto card = store->score(*snap, rec->profile, job);
  if (o.score_format == "json") {
    out << to_json(card).dump(2) << "\n";
  } else {
    out << scoring::explain(card, rec->profile);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// serve

std::atomic<server::ApiServer*> g_server{nullptr};

extern "C" void on_signal(int) {
  if (auto* s = g_server.load()) s->stop();
}

int cmd_serve(const Options& o, std::ostream& out, std::ostream& err) {
  auto root = store_root(o.store);
  if (!fs::is_directory(root)) {
    throw Error(ErrorCode::kIo, "store directory '" + root.string() + "' does not exist");
  }
  if (o.port < 0 || o.port > 65535) throw UsageError("--port must be in 0..65535");
  server::ApiOptions options;
  options.reference_date =
      o.reference_date.empty() && !env("TALENTRANK_REFERENCE_DATE") ? today()
                                                                   : reference_date(o.reference_date);
  if (!o.webroot.empty()) options.webroot = fs::path(o.webroot);
  auto store = catalog::CandidateStore::open(root, config_path(o.config));
  for (const auto& w : store->snapshot()->models->warnings) err << "warning: " << w << "\n";
  server::ApiServer api(*store, options);
  int port = api.bind(o.host, o.port);
  out << "listening on http://" << o.host << ":" << port << std::endl;
  g_server.store(&api);
  auto old_int = std::signal(SIGINT, on_signal);
  auto old_term = std::signal(SIGTERM, on_signal);
  api.listen();
  g_server.store(nullptr);
  std::signal(SIGINT, old_int);
  std::signal(SIGTERM, old_term);
  out << "stopped" << std::endl;
  return kExitOk;
}

// ---------------------------------------------------------------------------
// export-map

int cmd_export_map(const Options& o, std::ostream& out, std::ostream&) {
  auto root = store_root(o.store);
  auto store = catalog::CandidateStore::open(root, config_path(o.config));
  auto models = store->snapshot()->models;
  if (!models->map) throw Error(ErrorCode::kConfiguration, "no skill map in store; run train first");
  write_file_atomic(o.out, skillspace::export_map_csv(*models->map));
  out << models->map->tokens.size() << " skills -> " << o.out << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// jobs

int cmd_jobs_list(const Options& o, std::ostream& out, std::ostream&) {
  auto store = catalog::CandidateStore::open(store_root(o.store), config_path(o.config));
  for (const auto& job : store->snapshot()->job_list()) {
    out << job.job_id << "\t" << job.name << "\t" << text::join(job.desired_skills, ", ") << "\n";
  }
  return kExitOk;
}

int cmd_jobs_show(const Options& o, std::ostream& out, std::ostream&) {
  auto store = catalog::CandidateStore::open(store_root(o.store), config_path(o.config));
  const auto* job = store->snapshot()->job(o.job_id);
  if (!job) throw Error(ErrorCode::kNotFound, "unknown job '" + o.job_id + "'");
  out << to_json(*job).dump(2) << "\n";
  return kExitOk;
}

int cmd_jobs_add(const Options& o, std::ostream& out, std::ostream&) {
  auto store = catalog::CandidateStore::open(store_root(o.store), config_path(o.config));
  auto job = scoring::job_from_json(json::parse(read_file(o.job_file)));
  scoring::normalize_job(job);
  if (store->snapshot()->job(job.job_id)) {
    store->update_job(job);
    out << "updated " << job.job_id << "\n";
  } else {
    store->create_job(job);
    out << "created " << job.job_id << "\n";
  }
  return kExitOk;
}

int cmd_jobs_remove(const Options& o, std::ostream& out, std::ostream&) {
  auto store = catalog::CandidateStore::open(store_root(o.store), config_path(o.config));
  store->delete_job(o.job_id);
  out << "removed " << o.job_id << "\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Résumé ingestion, skill embedding and candidate ranking"};
  app.name("talentrank");
  app.require_subcommand(1);

  auto add_store = [&](CLI::App* c) {
    c->add_option("--store", o.store, "Store directory (default: $TALENTRANK_STORE)");
    c->add_option("--config", o.config, "Scoring config file (overrides models/scoring.conf)");
  };

  auto* init = app.add_subcommand("init", "Train the section model from fixtures, install seed jobs");
  add_store(init);
  init->add_option("--seed", o.seed, "Random seed")->required();
  init->add_option("--fixtures", o.fixtures, "Labeled résumé fixture directory");
  init->add_option("--jobs", o.jobs_dir, "Job template directory");

  auto* ingest_cmd = app.add_subcommand("ingest", "Ingest layout documents into the store");
  add_store(ingest_cmd);
  ingest_cmd->add_option("files", o.files, "Block-table (.blocks) or HTML-subset (.html) files")
      ->required();
  ingest_cmd->add_option("--format", o.format, "block-table or html-subset (default: by extension)");
  ingest_cmd->add_option("--reference-date", o.reference_date,
                         "Date that 'Present' resolves to, YYYY-MM-DD");

  auto* gen = app.add_subcommand("gen-corpus", "Generate a synthetic profile corpus");
  gen->add_option("--profiles", o.profiles, "Number of profiles")->required();
  gen->add_option("--seed", o.seed, "Random seed")->required();
  gen->add_option("--out", o.out, "Output directory")->required();
  gen->add_option("--templates", o.templates, "Corpus template JSON");
  gen->add_option("--resumes", o.resumes, "Also render the first N profiles as .blocks résumés");
  gen->add_option("--reference-date", o.reference_date, "Reference date, YYYY-MM-DD");

  auto* train = app.add_subcommand("train", "Train skill embedding, map and employer scores");
  add_store(train);
  train->add_option("--dims", o.dims, "Embedding dimensions (clipped to the vocabulary size)")
      ->required();
  train->add_option("--seed", o.seed, "Random seed")->required();
  train->add_option("--corpus", o.corpus, "profiles.jsonl corpus (default: stored candidates)");
  train->add_option("--fixtures", o.fixtures, "Retrain the section model from these fixtures");
  train->add_option("--min-count", o.min_count, "Minimum profiles per skill");
  train->add_option("--perplexity", o.perplexity, "t-SNE perplexity");
  train->add_option("--iterations", o.iterations, "t-SNE iterations");
  train->add_option("--eps", o.eps, "DBSCAN radius (default: nearest-neighbour quantile)");
  train->add_option("--min-pts", o.min_pts, "DBSCAN minimum points");
  train->add_option("--eps-quantile", o.eps_quantile, "Quantile used for the default radius");

  auto* rankings = app.add_subcommand("import-rankings", "Import THE and QS university rankings");
  add_store(rankings);
  rankings->add_option("--the", o.the, "THE CSV (institution,score)")->required();
  rankings->add_option("--qs", o.qs, "QS CSV (institution,score)")->required();

  auto* rank = app.add_subcommand("rank", "Rank stored candidates for a job");
  add_store(rank);
  rank->add_option("--job", o.job, "Job id or job JSON file")->required();
  rank->add_option("--min-years", o.min_years, "Minimum years of experience (0 disables)");
  rank->add_option("--degrees", o.degrees, "Comma list of degrees, or 'any'");
  rank->add_option("--sort", o.sort, "overall|education|work|skills|scorechart|skill:<token>");
  rank->add_option("--format", o.output_format, "table or csv");

  auto* score = app.add_subcommand("score", "Explain one candidate's score card");
  add_store(score);
  score->add_option("--candidate", o.candidate, "Candidate id")->required();
  score->add_option("--job", o.job, "Job id or job JSON file")->required();
  score->add_option("--format", o.score_format, "text or json");

  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  add_store(serve);
  serve->add_option("--host", o.host, "Listen address");
  serve->add_option("--port", o.port, "Listen port (0 picks a free port)");
  serve->add_option("--webroot", o.webroot, "Static files served under /");
  serve->add_option("--reference-date", o.reference_date,
                    "Reference date for uploads (default: today, UTC)");

  auto* export_map = app.add_subcommand("export-map", "Write the skill map as CSV");
  add_store(export_map);
  export_map->add_option("--out", o.out, "Output file")->required();

  auto* jobs = app.add_subcommand("jobs", "Manage job profiles");
  jobs->require_subcommand(1);
  auto* jobs_list = jobs->add_subcommand("list", "List jobs");
  add_store(jobs_list);
  auto* jobs_show = jobs->add_subcommand("show", "Print one job as JSON");
  add_store(jobs_show);
  jobs_show->add_option("job_id", o.job_id)->required();
  auto* jobs_add = jobs->add_subcommand("add", "Create or update a job from JSON");
  add_store(jobs_add);
  jobs_add->add_option("file", o.job_file)->required();
  auto* jobs_remove = jobs->add_subcommand("remove", "Delete a job");
  add_store(jobs_remove);
  jobs_remove->add_option("job_id", o.job_id)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (init->parsed()) return cmd_init(o, out, err);
    if (ingest_cmd->parsed()) return cmd_ingest(o, out, err);
    if (gen->parsed()) return cmd_gen_corpus(o, out, err);
    if (train->parsed()) return cmd_train(o, out, err);
    if (rankings->parsed()) return cmd_import_rankings(o, out, err);
    if (rank->parsed()) return cmd_rank(o, out, err);
    if (score->parsed()) return cmd_score(o, out, err);
    if (serve->parsed()) return cmd_serve(o, out, err);
    if (export_map->parsed()) return cmd_export_map(o, out, err);
    if (jobs_list->parsed()) return cmd_jobs_list(o, out, err);
    if (jobs_show->parsed()) return cmd_jobs_show(o, out, err);
    if (jobs_add->parsed()) return cmd_jobs_add(o, out, err);
    if (jobs_remove->parsed()) return cmd_jobs_remove(o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << error_code_name(e.code()) << ": " << e.what() << "\n";
    return kExitFailure;
  } catch (const json::exception& e) {
    err << "error: invalid JSON: " << e.what() << "\n";
    return kExitFailure;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace talentrank::cli
