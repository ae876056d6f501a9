#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "talentrank/catalog/store.hpp"
#include "talentrank/common/date.hpp"
#include "talentrank/common/error.hpp"

namespace talentrank::server {

struct ApiOptions {
  // Reference date for dates like "Present" in uploaded résumés.
  Date reference_date;
  std::optional<std::filesystem::path> webroot;
  // Contributing skills listed per desired skill in candidate detail.
  std::size_t related_skills = 5;
};

// HTTP status for an error code: 400 parse, 404 not found, 409 conflict or
// missing model, 422 invalid parameters, 500 otherwise.
int http_status(ErrorCode code);

// JSON API over a CandidateStore. Every handler reads one snapshot taken at
// the start of the request; the version echo field "models_version" is that
// snapshot's model version.
class ApiServer {
 public:
  ApiServer(catalog::CandidateStore& store, ApiOptions options);
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  // Binds without serving; port 0 picks a free port. Returns the bound port.
  // Throws kIo when the address cannot be bound.
  int bind(const std::string& host, int port);
  // Serves until stop(). Requires bind().
  void listen();
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace talentrank::server
