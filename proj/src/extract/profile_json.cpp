#include "talentrank/extract/profile_json.hpp"

#include "talentrank/common/error.hpp"

namespace talentrank::extract {

using nlohmann::json;

namespace {

json blocks_json(const BlockIndices& b) { return json(b); }

json field_json(const std::optional<TextField>& f) {
  if (!f) return nullptr;
  return json{{"value", f->value}, {"source_blocks", blocks_json(f->source_blocks)}};
}

Date date_from(const json& j, const char* what) {
  if (!j.is_string()) throw Error(ErrorCode::kParse, std::string(what) + " must be an ISO date");
  auto d = parse_iso(j.get<std::string>());
  if (!d) throw Error(ErrorCode::kParse, std::string(what) + " is not a valid ISO date");
  return *d;
}

template <typename T>
T get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::kParse, std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::kParse, std::string("field '") + key + "' has the wrong type");
  }
}

std::optional<std::string> opt_string(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return get<std::string>(j, key);
}

std::optional<TextField> field_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  const auto& f = j.at(key);
  return TextField{get<std::string>(f, "value"), get<BlockIndices>(f, "source_blocks")};
}

}  // namespace

json to_json(const DateSpan& span) {
  return json{{"start", format_iso(span.start)},
              {"end", span.end ? json(format_iso(*span.end)) : json(nullptr)},
              {"resolved_end", format_iso(span.resolved_end)},
              {"text", render(span)},
              {"months", months(span)}};
}

DateSpan date_span_from_json(const json& j) {
  DateSpan s;
  s.start = date_from(j.value("start", json()), "start");
  if (j.contains("end") && !j.at("end").is_null()) s.end = date_from(j.at("end"), "end");
  s.resolved_end = date_from(j.value("resolved_end", json()), "resolved_end");
  return s;
}

json to_json(const CandidateProfile& p) {
  json educations = json::array();
  for (const auto& e : p.educations) {
    educations.push_back({{"institution", e.institution},
                          {"institution_key", e.institution_key},
                          {"degree", std::string(to_string(e.degree))},
                          {"degree_text", e.degree_text},
                          {"field_of_study", e.field_of_study ? json(*e.field_of_study) : json()},
                          {"span", e.span ? to_json(*e.span) : json()},
                          {"source_blocks", blocks_json(e.source_blocks)}});
  }
  json works = json::array();
  for (const auto& w : p.works) {
    works.push_back({{"employer", w.employer_raw},
                     {"employer_key", w.employer_key},
                     {"title", w.title ? json(*w.title) : json()},
                     {"span", to_json(w.span)},
                     {"source_blocks", blocks_json(w.source_blocks)}});
  }
  json skills = json::array();
  for (const auto& s : p.skills) {
    skills.push_back(
        {{"raw", s.raw}, {"token", s.token}, {"source_blocks", blocks_json(s.source_blocks)}});
  }
  return json{{"candidate_id", p.candidate_id},
              {"source_document", p.source_document},
              {"reference_date", format_iso(p.reference_date)},
              {"name", field_json(p.name)},
              {"email", field_json(p.email)},
              {"phone", field_json(p.phone)},
              {"location", field_json(p.location)},
              {"educations", educations},
              {"works", works},
              {"skills", skills},
              {"warnings", p.warnings}};
}

CandidateProfile profile_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kParse, "profile must be an object");
  CandidateProfile p;
  p.candidate_id = get<std::string>(j, "candidate_id");
  p.source_document = j.value("source_document", std::string());
  p.reference_date = date_from(j.value("reference_date", json()), "reference_date");
  p.name = field_from(j, "name");
  p.email = field_from(j, "email");
  p.phone = field_from(j, "phone");
  p.location = field_from(j, "location");
  for (const auto& e : j.value("educations", json::array())) {
    EducationEntry entry;
    entry.institution = get<std::string>(e, "institution");
    entry.institution_key = e.value("institution_key", std::string());
    auto level = parse_degree_level(get<std::string>(e, "degree"));
    if (!level) throw Error(ErrorCode::kParse, "unknown degree level");
    entry.degree = *level;
    entry.degree_text = e.value("degree_text", std::string());
    entry.field_of_study = opt_string(e, "field_of_study");
    if (e.contains("span") && !e.at("span").is_null()) entry.span = date_span_from_json(e.at("span"));
    entry.source_blocks = e.value("source_blocks", BlockIndices{});
    p.educations.push_back(std::move(entry));
  }
  for (const auto& w : j.value("works", json::array())) {
    WorkEntry entry;
    entry.employer_raw = get<std::string>(w, "employer");
    entry.employer_key = w.value("employer_key", employer_key(entry.employer_raw));
    entry.title = opt_string(w, "title");
    entry.span = date_span_from_json(get<json>(w, "span"));
    entry.source_blocks = w.value("source_blocks", BlockIndices{});
    p.works.push_back(std::move(entry));
  }
  for (const auto& s : j.value("skills", json::array())) {
    p.skills.push_back({get<std::string>(s, "raw"), get<std::string>(s, "token"),
                        s.value("source_blocks", BlockIndices{})});
  }
  p.warnings = j.value("warnings", std::vector<std::string>{});
  return p;
}

}  // namespace talentrank::extract
