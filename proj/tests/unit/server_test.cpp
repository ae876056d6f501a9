#include <gtest/gtest.h>

#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "talentrank/catalog/store.hpp"
#include "talentrank/ingest/labeled.hpp"
#include "talentrank/server/api.hpp"

#include "oracles.hpp"

namespace talentrank::server {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

TEST(Http, StatusMapping) {
  EXPECT_EQ(http_status(ErrorCode::kParse), 400);
  EXPECT_EQ(http_status(ErrorCode::kNoBlocks), 400);
  EXPECT_EQ(http_status(ErrorCode::kNormalization), 400);
  EXPECT_EQ(http_status(ErrorCode::kNotFound), 404);
  EXPECT_EQ(http_status(ErrorCode::kConflict), 409);
  EXPECT_EQ(http_status(ErrorCode::kConfiguration), 409);
  EXPECT_EQ(http_status(ErrorCode::kParameter), 422);
  EXPECT_EQ(http_status(ErrorCode::kOutOfVocabulary), 422);
  EXPECT_EQ(http_status(ErrorCode::kIntegrity), 500);
  EXPECT_EQ(http_status(ErrorCode::kIo), 500);
}

class Api : public ::testing::Test {
 protected:
  void SetUp() override {
    store_ = catalog::CandidateStore::open(dir_.path);
    server_ = std::make_unique<ApiServer>(*store_, ApiOptions{{2019, 3, 15}, std::nullopt, 5});
    port_ = server_->bind("127.0.0.1", 0);
    thread_ = std::thread([this] { server_->listen(); });
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    client_->set_read_timeout(30, 0);
  }

  void TearDown() override {
    server_->stop();
    thread_.join();
  }

  void train_sections() {
    auto corpus = ingest::load_labeled_corpus(TALENTRANK_FIXTURES_DIR);
    std::vector<const ingest::LabeledDocument*> all;
    for (const auto& d : corpus) all.push_back(&d);
    write_file_atomic(dir_.path / catalog::files::kModels / catalog::files::kSections,
                      ingest::serialize(ingest::train_on_labeled(all, 1)));
    store_->reload_models();
  }

  static std::string fixture(const std::string& name) {
    return read_file(fs::path(TALENTRANK_FIXTURES_DIR) / name);
  }

  json body(const httplib::Result& r) { return json::parse(r->body); }

  std::string version() { return store_->snapshot()->models->version; }

  oracle::TempDir dir_{"api"};
  std::unique_ptr<catalog::CandidateStore> store_;
  std::unique_ptr<ApiServer> server_;
  std::unique_ptr<httplib::Client> client_;
  std::thread thread_;
  int port_ = 0;
};

const char* kJob = R"({"job_id": "dev", "name": "Developer",
                       "desired_skills": ["python", "sql", "docker"]})";

TEST_F(Api, JobLifecycle) {
  auto r = client_->Get("/api/jobs");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);
  EXPECT_EQ(body(r)["jobs"].size(), 0u);
  EXPECT_EQ(body(r)["models_version"], version());

  r = client_->Post("/api/jobs", kJob, "application/json");
  EXPECT_EQ(r->status, 201);
  EXPECT_EQ(body(r)["job"]["desired_skills"].size(), 3u);
  EXPECT_EQ(client_->Post("/api/jobs", kJob, "application/json")->status, 409);

  r = client_->Get("/api/jobs/dev");
  EXPECT_EQ(r->status, 200);
  EXPECT_EQ(body(r)["job"]["name"], "Developer");
  EXPECT_EQ(client_->Get("/api/jobs/nope")->status, 404);

  r = client_->Put("/api/jobs/dev", R"({"name": "Dev 2", "desired_skills": ["go"]})",
                   "application/json");
  EXPECT_EQ(r->status, 200);
  EXPECT_EQ(body(r)["job"]["job_id"], "dev");
  r = client_->Put("/api/jobs/dev", R"({"job_id": "other", "name": "x", "desired_skills": ["go"]})",
                   "application/json");
  EXPECT_EQ(r->status, 422);
  EXPECT_EQ(body(r)["error"]["code"], "parameter_error");

  EXPECT_EQ(client_->Post("/api/jobs", "{not json", "application/json")->status, 400);
  EXPECT_EQ(client_->Post("/api/jobs", R"({"job_id": "x", "name": "x", "desired_skills": []})",
                          "application/json")
                ->status,
            422);

  EXPECT_EQ(client_->Delete("/api/jobs/dev")->status, 200);
  EXPECT_EQ(client_->Delete("/api/jobs/dev")->status, 404);
}

TEST_F(Api, UploadNeedsSectionModel) {
  auto r = client_->Post("/api/candidates", fixture("resume_01.blocks"), "text/plain");
  EXPECT_EQ(r->status, 409);
}

TEST_F(Api, UploadRankAndDetail) {
  train_sections();
  ASSERT_EQ(client_->Post("/api/jobs", kJob, "application/json")->status, 201);
  std::vector<std::string> ids;
  for (int i = 1; i <= 12; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "resume_%02d", i);
    auto r = client_->Post(std::string("/api/candidates?source_id=") + name,
                           fixture(std::string(name) + ".blocks"), "text/plain");
    ASSERT_EQ(r->status, 201) << r->body;
    ids.push_back(body(r)["candidate_id"]);
    EXPECT_EQ(body(r)["source_id"], name);
  }
  auto dup = client_->Post("/api/candidates?source_id=resume_01", fixture("resume_01.blocks"),
                           "text/plain");
  EXPECT_EQ(dup->status, 409);
  auto bad = client_->Post("/api/candidates", "0\tx\n", "text/plain");
  EXPECT_EQ(bad->status, 400);
  EXPECT_EQ(body(bad)["error"]["code"], "parse_error");
  auto anon = client_->Post("/api/candidates", fixture("resume_13.blocks"), "text/plain");
  EXPECT_EQ(anon->status, 201);
  EXPECT_EQ(body(anon)["source_id"].get<std::string>().rfind("upload-", 0), 0u);

  auto r = client_->Get("/api/candidates?job=dev&sort=scorechart");
  ASSERT_EQ(r->status, 200) << r->body;
  auto list = body(r);
  EXPECT_EQ(list["count"], 13);
  EXPECT_EQ(list["sort"], "scorechart");
  EXPECT_EQ(list["models_version"], version());
  std::size_t flagged = 0;
  double prev_skills = 1e9, prev_work = 1e9;
  for (const auto& e : list["candidates"]) {
    double s = e["score_card"]["skills_score"];
    double w = e["score_card"]["work_score"];
    EXPECT_TRUE(s < prev_skills || (s == prev_skills && w <= prev_work));
    prev_skills = s;
    prev_work = w;
    flagged += e["top_decile"]["skills"].get<bool>() ? 1 : 0;
    EXPECT_EQ(e["top_decile"]["per_skill"].size(), 3u);
  }
  EXPECT_EQ(flagged, 2u);

  EXPECT_EQ(client_->Get("/api/candidates")->status, 422);
  EXPECT_EQ(client_->Get("/api/candidates?job=nope")->status, 404);
  EXPECT_EQ(client_->Get("/api/candidates?job=dev&sort=salary")->status, 422);
  EXPECT_EQ(client_->Get("/api/candidates?job=dev&min_years=-2")->status, 422);
  auto filtered = client_->Get("/api/candidates?job=dev&min_years=100");
  EXPECT_EQ(body(filtered)["count"], 0);
  auto masters = client_->Get("/api/candidates?job=dev&degrees=Master,Doctoral");
  for (const auto& e : body(masters)["candidates"]) {
    auto d = e["most_recent_degree"].get<std::string>();
    EXPECT_TRUE(d == "Master" || d == "Doctoral") << d;
  }

  auto detail = client_->Get("/api/candidates/" + ids[0] + "?job=dev");
  ASSERT_EQ(detail->status, 200);
  auto d = body(detail);
  EXPECT_EQ(d["profile"]["name"]["value"], "Anna Schmidt");
  EXPECT_EQ(d["document"]["blocks"].size(), 25u);
  EXPECT_FALSE(d["provenance"].empty());
  for (const auto& p : d["provenance"]) {
    for (const auto& b : p["blocks"]) EXPECT_LT(b.get<std::size_t>(), 25u);
  }
  EXPECT_TRUE(d["score_card"].is_object());
  EXPECT_EQ(d["related_skills"].size(), 3u);
  EXPECT_EQ(d["job_scores"].size(), 1u);
  EXPECT_EQ(client_->Get("/api/candidates/nobody")->status, 404);
  EXPECT_EQ(client_->Get("/api/candidates/" + ids[0] + "?job=nope")->status, 404);

  auto mark = client_->Put("/api/candidates/" + ids[0] + "/bookmark", "true", "application/json");
  EXPECT_EQ(mark->status, 200);
  EXPECT_TRUE(body(client_->Get("/api/candidates/" + ids[0]))["bookmarked"].get<bool>());
  mark = client_->Put("/api/candidates/" + ids[0] + "/bookmark", R"({"bookmarked": false})",
                      "application/json");
  EXPECT_EQ(mark->status, 200);
  EXPECT_FALSE(body(client_->Get("/api/candidates/" + ids[0]))["bookmarked"].get<bool>());
  EXPECT_EQ(client_->Put("/api/candidates/" + ids[0] + "/bookmark", "\"yes\"", "application/json")
                ->status,
            400);
  EXPECT_EQ(client_->Put("/api/candidates/nobody/bookmark", "true", "application/json")->status,
            404);
}

TEST_F(Api, SkillsEndpointsWithoutModels) {
  auto r = client_->Get("/api/skills/autocomplete?q=py");
  EXPECT_EQ(r->status, 200);
  EXPECT_TRUE(body(r)["suggestions"].empty());
  EXPECT_EQ(client_->Get("/api/skills/autocomplete?q=py&k=0")->status, 422);
  EXPECT_EQ(client_->Get("/api/skills/autocomplete?q=py&k=abc")->status, 422);
  r = client_->Get("/api/skills/map");
  EXPECT_EQ(r->status, 409);
  EXPECT_EQ(body(r)["models_version"], version());
}

TEST_F(Api, ConcurrentRequests) {
  train_sections();
  ASSERT_EQ(client_->Post("/api/jobs", kJob, "application/json")->status, 201);
  std::atomic<int> failures{0};
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      httplib::Client c("127.0.0.1", port_);
      for (int i = 0; i < 5; ++i) {
        int n = 1 + t * 5 + i;
        if (n > 20) break;
        char name[32];
        std::snprintf(name, sizeof name, "resume_%02d", n);
        auto up = c.Post(std::string("/api/candidates?source_id=") + name,
                         fixture(std::string(name) + ".blocks"), "text/plain");
        if (!up || up->status != 201) ++failures;
        auto list = c.Get("/api/candidates?job=dev");
        if (!list || list->status != 200) {
          ++failures;
          continue;
        }
        auto j = json::parse(list->body);
        if (j["count"] != j["candidates"].size()) ++failures;
      }
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(failures, 0);
  EXPECT_EQ(body(client_->Get("/api/candidates?job=dev"))["count"], 20);
}

TEST(ApiBind, BadAddressIsIoError) {
  oracle::TempDir dir("api");
  auto store = catalog::CandidateStore::open(dir.path);
  ApiServer a(*store, ApiOptions{{2019, 3, 15}, std::nullopt, 5});
  try {
    a.bind("999.0.0.1", 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

}  // namespace
}  // namespace talentrank::server
