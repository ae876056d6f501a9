#include "talentrank/server/api.hpp"

#include <httplib.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <json.hpp>
#include <set>

#include "talentrank/catalog/filter.hpp"
#include "talentrank/catalog/pipeline.hpp"
#include "talentrank/catalog/rank.hpp"
#include "talentrank/common/text.hpp"
#include "talentrank/extract/profile_json.hpp"
#include "talentrank/skillspace/skill_token.hpp"

namespace talentrank::server {

using nlohmann::json;
using catalog::Snapshot;

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
    case ErrorCode::kNoBlocks:
    case ErrorCode::kNormalization:
      return 400;
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kConflict:
    case ErrorCode::kConfiguration:
    case ErrorCode::kTraining:
    case ErrorCode::kIncompatibleModel:
      return 409;
    case ErrorCode::kParameter:
    case ErrorCode::kOutOfVocabulary:
      return 422;
    case ErrorCode::kIntegrity:
    case ErrorCode::kVersion:
    case ErrorCode::kIo:
      return 500;
  }
  return 500;
}

namespace {

const char* kJson = "application/json; charset=utf-8";

std::string version_of(const Snapshot& snap) {
  return snap.models ? snap.models->version : std::string();
}

void reply(httplib::Response& res, int status, json body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void reply_error(httplib::Response& res, ErrorCode code, const std::string& message,
                 const std::string& version) {
  reply(res, http_status(code),
        json{{"error", {{"code", std::string(error_code_name(code))}, {"message", message}}},
             {"models_version", version}});
}

std::optional<std::string> param(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) return std::nullopt;
  return req.get_param_value(name);
}

std::size_t parse_count(const std::string& s, const char* what) {
  std::size_t v = 0;
  auto t = text::trim(s);
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw Error(ErrorCode::kParameter,
                std::string(what) + " must be a non-negative integer, got '" + s + "'");
  }
  return v;
}

json document_json(const ingest::LayoutDocument& doc) {
  json blocks = json::array();
  for (std::size_t i = 0; i < doc.blocks.size(); ++i) {
    const auto& b = doc.blocks[i];
    blocks.push_back({{"index", i},
                      {"text", b.text},
                      {"page", b.page},
                      {"x", b.x},
                      {"y", b.y},
                      {"width", b.width},
                      {"height", b.height},
                      {"font_size", b.font_size},
                      {"bold", b.bold},
                      {"font_name", b.font_name}});
  }
  return {{"source_id", doc.source_id}, {"blocks", blocks}};
}

// Flat entity -> block index list for hover highlighting.
json provenance_json(const extract::CandidateProfile& p) {
  json out = json::array();
  auto add = [&](const char* kind, const std::string& key, const extract::BlockIndices& blocks) {
    out.push_back({{"entity", kind}, {"key", key}, {"blocks", blocks}});
  };
  if (p.name) add("name", p.name->value, p.name->source_blocks);
  if (p.email) add("email", p.email->value, p.email->source_blocks);
  if (p.phone) add("phone", p.phone->value, p.phone->source_blocks);
  if (p.location) add("location", p.location->value, p.location->source_blocks);
  for (std::size_t i = 0; i < p.educations.size(); ++i) {
    add("education", std::to_string(i), p.educations[i].source_blocks);
  }
  for (std::size_t i = 0; i < p.works.size(); ++i) {
    add("work", std::to_string(i), p.works[i].source_blocks);
  }
  for (const auto& s : p.skills) add("skill", s.token, s.source_blocks);
  return out;
}

std::string most_recent_degree(const extract::CandidateProfile& p) {
  auto i = scoring::most_recent_education(p);
  return i ? std::string(to_string(p.educations[*i].degree)) : std::string();
}

json flags_json(const catalog::TopDecileFlags& f) {
  return {{"education", f.education},
          {"work", f.work},
          {"skills", f.skills},
          {"overall", f.overall},
          {"per_skill", f.per_skill}};
}

}  // namespace

struct ApiServer::Impl {
  catalog::CandidateStore& store;
  ApiOptions options;
  httplib::Server http;
  int port = -1;

  Impl(catalog::CandidateStore& s, ApiOptions o) : store(s), options(std::move(o)) {}

  // Runs a handler against one snapshot, translating errors.
  template <typename F>
  httplib::Server::Handler wrap(F f) {
    return [this, f](const httplib::Request& req, httplib::Response& res) {
      auto snap = store.snapshot();
      auto version = version_of(*snap);
      try {
        f(*snap, req, res);
      } catch (const Error& e) {
        reply_error(res, e.code(), e.what(), version);
      } catch (const json::exception& e) {
        reply_error(res, ErrorCode::kParse, std::string("invalid JSON: ") + e.what(), version);
      } catch (const std::exception& e) {
        reply(res, 500,
              json{{"error", {{"code", "internal_error"}, {"message", e.what()}}},
                   {"models_version", version}});
      }
    };
  }

  const scoring::JobProfile& require_job(const Snapshot& snap, const std::string& id) {
    const auto* job = snap.job(id);
    if (!job) throw Error(ErrorCode::kNotFound, "unknown job '" + id + "'");
    return *job;
  }

  void routes() {
    http.Get("/api/jobs", wrap([](const Snapshot& snap, const httplib::Request&,
                                  httplib::Response& res) {
      json jobs = json::array();
      for (const auto& [_, job] : snap.jobs) jobs.push_back(to_json(job));
      reply(res, 200, {{"models_version", version_of(snap)}, {"jobs", jobs}});
    }));

    http.Get(R"(/api/jobs/([^/]+))",
             wrap([this](const Snapshot& snap, const httplib::Request& req,
                         httplib::Response& res) {
               const auto& job = require_job(snap, req.matches[1]);
               reply(res, 200, {{"models_version", version_of(snap)}, {"job", to_json(job)}});
             }));

    http.Post("/api/jobs", wrap([this](const Snapshot& snap, const httplib::Request& req,
                                       httplib::Response& res) {
      auto job = scoring::job_from_json(json::parse(req.body));
      scoring::normalize_job(job);
      store.create_job(job);
      reply(res, 201, {{"models_version", version_of(snap)}, {"job", to_json(job)}});
    }));

    http.Put(R"(/api/jobs/([^/]+))",
             wrap([this](const Snapshot& snap, const httplib::Request& req,
                         httplib::Response& res) {
               auto body = json::parse(req.body);
               if (body.is_object() && !body.contains("job_id")) body["job_id"] = req.matches[1];
               auto job = scoring::job_from_json(body);
               if (job.job_id != req.matches[1]) {
                 throw Error(ErrorCode::kParameter, "job_id in body does not match the path");
               }
               scoring::normalize_job(job);
               store.update_job(job);
               reply(res, 200, {{"models_version", version_of(snap)}, {"job", to_json(job)}});
             }));

    http.Delete(R"(/api/jobs/([^/]+))",
                wrap([this](const Snapshot& snap, const httplib::Request& req,
                            httplib::Response& res) {
                  store.delete_job(req.matches[1]);
                  reply(res, 200,
                        {{"models_version", version_of(snap)}, {"deleted", req.matches[1].str()}});
                }));

    http.Post("/api/candidates", wrap([this](const Snapshot& snap, const httplib::Request& req,
                                             httplib::Response& res) {
      if (!snap.models || !snap.models->sections) {
        throw Error(ErrorCode::kConfiguration, "no section model trained; run train or init");
      }
      auto format = ingest::parse_layout_format(param(req, "format").value_or("block-table"));
      auto source = param(req, "source_id").value_or("upload-" + hex64(fnv1a64(req.body)));
      auto result = catalog::process_document(req.body, format, source, *snap.models->sections,
                                              options.reference_date);
      catalog::CandidateRecord record{result.profile, result.document, false};
      auto id = record.profile.candidate_id;
      auto warnings = record.profile.warnings;
      store.add_candidate(std::move(record));
      reply(res, 201,
            {{"models_version", version_of(snap)},
             {"candidate_id", id},
             {"source_id", source},
             {"warnings", warnings}});
    }));

    http.Get("/api/candidates", wrap([this](const Snapshot& snap, const httplib::Request& req,
                                            httplib::Response& res) {
      auto job_id = param(req, "job");
      if (!job_id || job_id->empty()) throw Error(ErrorCode::kParameter, "job is required");
      const auto& job = require_job(snap, *job_id);
      auto filter = catalog::filter_for(job);
      catalog::apply_overrides(filter, param(req, "min_years"), param(req, "degrees"));
      catalog::validate(filter);
      auto mode = catalog::parse_sort_mode(param(req, "sort").value_or("overall"));

      auto ids = catalog::filter_candidates(snap.profiles(), filter);
      std::vector<scoring::ScoreCard> cards;
      cards.reserve(ids.size());
      for (const auto& id : ids) cards.push_back(store.score(snap, snap.candidate(id)->profile, job));
      auto ranked = catalog::rank_cards(std::move(cards), job.desired_skills, mode);

      json entries = json::array();
      for (std::size_t r = 0; r < ranked.entries.size(); ++r) {
        const auto& e = ranked.entries[r];
        const auto* rec = snap.candidate(e.card.candidate_id);
        entries.push_back(
            {{"rank", r + 1},
             {"candidate_id", e.card.candidate_id},
             {"name", rec->profile.name ? json(rec->profile.name->value) : json()},
             {"most_recent_degree", most_recent_degree(rec->profile)},
             {"bookmarked", rec->bookmarked},
             {"score_card", to_json(e.card)},
             {"top_decile", flags_json(e.flags)}});
      }
      reply(res, 200,
            {{"models_version", version_of(snap)},
             {"job_id", job.job_id},
             {"sort", catalog::to_string(ranked.mode)},
             {"desired_skills", ranked.desired_skills},
             {"count", ranked.entries.size()},
             {"candidates", entries}});
    }));

    http.Get(R"(/api/candidates/([^/]+))",
             wrap([this](const Snapshot& snap, const httplib::Request& req,
                         httplib::Response& res) {
               const auto* rec = snap.candidate(req.matches[1]);
               if (!rec) {
                 throw Error(ErrorCode::kNotFound, "unknown candidate '" + req.matches[1].str() + "'");
               }
               const auto& p = rec->profile;
               auto ctx = snap.scoring_context();
               json body{{"models_version", version_of(snap)},
                         {"candidate_id", p.candidate_id},
                         {"bookmarked", rec->bookmarked},
                         {"profile", extract::to_json(p)},
                         {"document", document_json(rec->document)},
                         {"provenance", provenance_json(p)},
                         {"score_card", nullptr},
                         {"related_skills", json::array()}};
               if (auto job_id = param(req, "job"); job_id && !job_id->empty()) {
                 const auto& job = require_job(snap, *job_id);
                 body["score_card"] = to_json(store.score(snap, p, job));
                 body["related_skills"] = related_json(p, job, ctx.embedding);
               }
               json scores = json::array();
               for (const auto& m : scoring::job_match_scores(p, snap.job_list(), ctx)) {
                 scores.push_back(
                     {{"job_id", m.job_id}, {"name", m.name}, {"overall_score", m.overall_score}});
               }
               body["job_scores"] = scores;
               reply(res, 200, body);
             }));

    http.Put(R"(/api/candidates/([^/]+)/bookmark)",
             wrap([this](const Snapshot& snap, const httplib::Request& req,
                         httplib::Response& res) {
               auto body = json::parse(req.body);
               bool flag = false;
               if (body.is_boolean()) {
                 flag = body.get<bool>();
               } else if (body.is_object() && body.contains("bookmarked") &&
                          body["bookmarked"].is_boolean()) {
                 flag = body["bookmarked"].get<bool>();
               } else {
                 throw Error(ErrorCode::kParse, "body must be true, false or {\"bookmarked\": bool}");
               }
               store.set_bookmark(req.matches[1], flag);
               reply(res, 200,
                     {{"models_version", version_of(snap)},
                      {"candidate_id", req.matches[1].str()},
                      {"bookmarked", flag}});
             }));

    http.Get("/api/skills/autocomplete", wrap([](const Snapshot& snap, const httplib::Request& req,
                                                 httplib::Response& res) {
      std::size_t k = 10;
      if (auto v = param(req, "k")) k = parse_count(*v, "k");
      if (k == 0) throw Error(ErrorCode::kParameter, "k must be at least 1");
      json out = json::array();
      if (snap.models && snap.models->embedding) {
        for (const auto& s :
             catalog::autocomplete_skills(param(req, "q").value_or(""),
                                          snap.models->embedding->vocabulary, k)) {
          out.push_back({{"token", s.token}, {"frequency", s.frequency}});
        }
      }
      reply(res, 200, {{"models_version", version_of(snap)}, {"suggestions", out}});
    }));

    http.Get("/api/skills/map", wrap([](const Snapshot& snap, const httplib::Request&,
                                        httplib::Response& res) {
      if (!snap.models || !snap.models->map) {
        throw Error(ErrorCode::kConfiguration, "no skill map trained; run train");
      }
      const auto& m = *snap.models->map;
      json points = json::array();
      for (std::size_t i = 0; i < m.tokens.size(); ++i) {
        double x = m.coords[2 * i];
        double y = m.coords[2 * i + 1];
        if (!std::isfinite(x) || !std::isfinite(y)) {
          throw Error(ErrorCode::kIntegrity, "non-finite map coordinate for '" + m.tokens[i] + "'");
        }
        points.push_back({{"token", m.tokens[i]}, {"x", x}, {"y", y}, {"cluster_id", m.clusters[i]}});
      }
      reply(res, 200,
            {{"models_version", version_of(snap)},
             {"cluster_count", m.cluster_count()},
             {"points", points}});
    }));

    if (options.webroot) {
      if (!http.set_mount_point("/", options.webroot->string())) {
        throw Error(ErrorCode::kIo, "webroot '" + options.webroot->string() + "' is not a directory");
      }
    }
  }

  // Per desired skill, the candidate's in-vocabulary skills nearest to it.
  json related_json(const extract::CandidateProfile& p, const scoring::JobProfile& job,
                    const skillspace::SkillEmbedding* emb) const {
    json out = json::array();
    for (const auto& desired : job.desired_skills) {
      json item{{"desired", desired}, {"in_vocabulary", false}, {"contributing", json::array()}};
      auto d_index = emb ? emb->vocabulary.index_of(desired) : std::nullopt;
      if (d_index) {
        item["in_vocabulary"] = true;
        std::vector<std::pair<double, std::size_t>> near;
        std::set<std::size_t> seen;
        for (const auto& s : p.skills) {
          auto idx = emb->vocabulary.index_of(s.token);
          if (!idx || !seen.insert(*idx).second) continue;
          near.emplace_back(skillspace::distance_by_index(*emb, *d_index, *idx), *idx);
        }
        std::sort(near.begin(), near.end());
        if (near.size() > options.related_skills) near.resize(options.related_skills);
        for (auto [d, idx] : near) {
          item["contributing"].push_back({{"token", emb->vocabulary.tokens[idx]},
                                          {"distance", d},
                                          {"similarity", (1.0 - d) * 100.0}});
        }
      }
      out.push_back(item);
    }
    return out;
  }
};

ApiServer::ApiServer(catalog::CandidateStore& store, ApiOptions options)
    : impl_(std::make_unique<Impl>(store, std::move(options))) {
  impl_->routes();
}

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind(const std::string& host, int port) {
  int bound = port == 0 ? impl_->http.bind_to_any_port(host)
                        : (impl_->http.bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    throw Error(ErrorCode::kIo, "cannot bind " + host + ":" + std::to_string(port));
  }
  impl_->port = bound;
  return bound;
}

void ApiServer::listen() {
  if (impl_->port < 0) throw Error(ErrorCode::kConfiguration, "listen() before bind()");
  impl_->http.listen_after_bind();
}

void ApiServer::stop() {
  if (impl_ && impl_->http.is_running()) impl_->http.stop();
}

bool ApiServer::running() const { return impl_->http.is_running(); }

}  // namespace talentrank::server
