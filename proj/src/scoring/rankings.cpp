#include "talentrank/scoring/rankings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "talentrank/common/binary.hpp"
#include "talentrank/common/csv.hpp"
#include "talentrank/common/error.hpp"
#include "talentrank/common/text.hpp"

namespace talentrank::scoring {

const UniversityScores* UniversityRankingTable::find(std::string_view key) const {
  auto it = entries.find(std::string(key));
  return it == entries.end() ? nullptr : &it->second;
}

namespace {

void load_source(std::string_view content, std::string_view source, bool is_the,
                 UniversityRankingTable& table) {
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<std::string> fields;
  for (auto line : text::split(content, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    auto where = std::string(source) + " line " + std::to_string(line_no);
    if (!csv::parse_line(line, fields) || fields.size() != 2) {
      throw ParseError(where + ": expected 'institution,score'", line_no, 0);
    }
    if (!header_seen) {
      header_seen = true;
      if (text::to_lower(text::trim(fields[0])) != "institution" ||
          text::to_lower(text::trim(fields[1])) != "score") {
        throw ParseError(where + ": header must be 'institution,score'", line_no, 0);
      }
      continue;
    }
    auto key = text::normalize_key(fields[0]);
    if (key.empty()) throw ParseError(where + ": empty institution", line_no, 0);
    auto cell = text::trim(fields[1]);
    double score = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), score);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
      throw ParseError(where + ": score '" + std::string(cell) + "' is not numeric", line_no, 0);
    }
    if (!(score >= 0.0 && score <= 100.0)) {
      throw ParseError(where + ": score outside [0, 100]", line_no, 0);
    }
    auto& slot = is_the ? table.entries[key].the : table.entries[key].qs;
    if (slot) {
      table.warnings.push_back(where + ": duplicate institution '" + key + "', keeping max");
      slot = std::max(*slot, score);
    } else {
      slot = score;
    }
  }
  if (!header_seen) throw ParseError(std::string(source) + ": missing header", 1, 0);
}

void write_opt(ByteWriter& w, const std::optional<double>& v) {
  w.boolean(v.has_value());
  if (v) w.f64(*v);
}

std::optional<double> read_opt(ByteReader& r) {
  if (!r.boolean()) return std::nullopt;
  auto at = r.offset();
  double v = r.f64();
  if (!(v >= 0.0 && v <= 100.0)) throw IntegrityError("ranking score outside [0, 100]", at);
  return v;
}

}  // namespace

UniversityRankingTable import_university_rankings(std::string_view the_csv,
                                                  std::string_view qs_csv) {
  UniversityRankingTable table;
  load_source(the_csv, "THE", true, table);
  load_source(qs_csv, "QS", false, table);
  return table;
}

double university_score(std::string_view key, const UniversityRankingTable& table) {
  const auto* s = table.find(key);
  if (!s) return 0.0;
  return (s->the.value_or(0.0) + s->qs.value_or(0.0)) / 2.0;
}

std::string serialize(const UniversityRankingTable& table) {
  ByteWriter w;
  w.u64(table.entries.size());
  for (const auto& [key, s] : table.entries) {
    w.str(key);
    write_opt(w, s.the);
    write_opt(w, s.qs);
  }
  w.u64(table.warnings.size());
  for (const auto& msg : table.warnings) w.str(msg);
  return seal(ArtifactKind::kUniversityRankings, w.bytes());
}

UniversityRankingTable deserialize_rankings(std::string_view file_bytes) {
  auto payload = unseal(ArtifactKind::kUniversityRankings, file_bytes);
  ByteReader r(payload, kPayloadOffset);
  UniversityRankingTable table;
  auto n = r.count(10);
  for (std::uint64_t i = 0; i < n; ++i) {
    auto at = r.offset();
    auto key = r.str();
    UniversityScores s;
    s.the = read_opt(r);
    s.qs = read_opt(r);
    if (!table.entries.emplace(std::move(key), s).second) {
      throw IntegrityError("duplicate institution key", at);
    }
  }
  auto nw = r.count(8);
  for (std::uint64_t i = 0; i < nw; ++i) table.warnings.push_back(r.str());
  r.expect_end();
  return table;
}

}  // namespace talentrank::scoring
