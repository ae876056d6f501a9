#include "talentrank/scoring/job.hpp"

#include <algorithm>
#include <cmath>

#include "talentrank/common/error.hpp"
#include "talentrank/common/text.hpp"
#include "talentrank/skillspace/skill_token.hpp"

namespace talentrank::scoring {

using nlohmann::json;

void normalize_job(JobProfile& job) {
  if (job.job_id.empty() ||
      !std::all_of(job.job_id.begin(), job.job_id.end(), [](char c) {
        return text::is_alnum(c) || c == '_' || c == '-' || c == '.';
      })) {
    throw Error(ErrorCode::kParameter, "job_id must be non-empty [A-Za-z0-9_.-]");
  }
  std::vector<std::string> skills;
  for (const auto& s : job.desired_skills) {
    std::string token;
    try {
      token = skillspace::normalize_skill(s);
    } catch (const Error&) {
      throw Error(ErrorCode::kParameter, "desired skill '" + s + "' is empty after normalization");
    }
    if (std::find(skills.begin(), skills.end(), token) == skills.end()) skills.push_back(token);
  }
  if (skills.empty()) throw Error(ErrorCode::kParameter, "job needs at least one desired skill");
  job.desired_skills = std::move(skills);
  if (job.min_experience_years &&
      !(std::isfinite(*job.min_experience_years) && *job.min_experience_years >= 0.0)) {
    throw Error(ErrorCode::kParameter, "min_experience_years must be >= 0");
  }
  if (job.required_degrees && job.required_degrees->empty()) {
    throw Error(ErrorCode::kParameter, "required_degrees must not be empty when present");
  }
  if (job.weight_overrides) validate(*job.weight_overrides);
}

JobProfile job_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kParse, "job must be a JSON object");
  JobProfile job;
  try {
    job.job_id = j.at("job_id").get<std::string>();
    job.name = j.value("name", job.job_id);
    job.desired_skills = j.at("desired_skills").get<std::vector<std::string>>();
    if (j.contains("min_experience_years") && !j.at("min_experience_years").is_null()) {
      job.min_experience_years = j.at("min_experience_years").get<double>();
    }
    if (j.contains("required_degrees") && !j.at("required_degrees").is_null()) {
      std::set<DegreeLevel> degrees;
      for (const auto& d : j.at("required_degrees").get<std::vector<std::string>>()) {
        auto level = parse_degree_level(d);
        if (!level) throw Error(ErrorCode::kParameter, "unknown degree '" + d + "'");
        degrees.insert(*level);
      }
      job.required_degrees = std::move(degrees);
    }
    if (j.contains("weight_overrides") && !j.at("weight_overrides").is_null()) {
      const auto& w = j.at("weight_overrides");
      CategoryWeights cw;
      cw.education = w.value("education", cw.education);
      cw.work = w.value("work", cw.work);
      cw.skills = w.value("skills", cw.skills);
      job.weight_overrides = cw;
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("job: ") + e.what());
  }
  normalize_job(job);
  return job;
}

json to_json(const JobProfile& job) {
  json j{{"job_id", job.job_id}, {"name", job.name}, {"desired_skills", job.desired_skills}};
  j["min_experience_years"] = job.min_experience_years ? json(*job.min_experience_years) : json();
  if (job.required_degrees) {
    json d = json::array();
    for (auto level : *job.required_degrees) d.push_back(std::string(to_string(level)));
    j["required_degrees"] = d;
  } else {
    j["required_degrees"] = nullptr;
  }
  if (job.weight_overrides) {
    j["weight_overrides"] = {{"education", job.weight_overrides->education},
                             {"work", job.weight_overrides->work},
                             {"skills", job.weight_overrides->skills}};
  } else {
    j["weight_overrides"] = nullptr;
  }
  return j;
}

std::string serialize(const JobProfile& job) {
  ByteWriter w;
  w.str(job.job_id);
  w.str(job.name);
  w.u64(job.desired_skills.size());
  for (const auto& s : job.desired_skills) w.str(s);
  w.boolean(job.min_experience_years.has_value());
  if (job.min_experience_years) w.f64(*job.min_experience_years);
  w.boolean(job.required_degrees.has_value());
  if (job.required_degrees) {
    w.u64(job.required_degrees->size());
    for (auto level : *job.required_degrees) w.u8(static_cast<std::uint8_t>(level));
  }
  w.boolean(job.weight_overrides.has_value());
  if (job.weight_overrides) {
    w.f64(job.weight_overrides->education);
    w.f64(job.weight_overrides->work);
    w.f64(job.weight_overrides->skills);
  }
  return seal(ArtifactKind::kJobProfile, w.bytes());
}

JobProfile deserialize_job(std::string_view file_bytes) {
  auto payload = unseal(ArtifactKind::kJobProfile, file_bytes);
  ByteReader r(payload, kPayloadOffset);
  JobProfile job;
  job.job_id = r.str();
  job.name = r.str();
  auto n = r.count(8);
  for (std::uint64_t i = 0; i < n; ++i) job.desired_skills.push_back(r.str());
  if (r.boolean()) job.min_experience_years = r.f64();
  if (r.boolean()) {
    std::set<DegreeLevel> degrees;
    auto nd = r.count(1);
    for (std::uint64_t i = 0; i < nd; ++i) {
      auto at = r.offset();
      auto v = r.u8();
      if (v > static_cast<std::uint8_t>(DegreeLevel::kOther)) {
        throw IntegrityError("invalid degree level", at);
      }
      degrees.insert(static_cast<DegreeLevel>(v));
    }
    job.required_degrees = std::move(degrees);
  }
  if (r.boolean()) {
    CategoryWeights cw;
    cw.education = r.f64();
    cw.work = r.f64();
    cw.skills = r.f64();
    job.weight_overrides = cw;
  }
  r.expect_end();
  return job;
}

}  // namespace talentrank::scoring
