#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "talentrank/common/binary.hpp"
#include "talentrank/common/date.hpp"
#include "talentrank/common/labels.hpp"
#include "talentrank/extract/dates.hpp"

namespace talentrank::extract {

using BlockIndices = std::vector<std::size_t>;

// An extracted value together with the layout blocks it came from.
struct TextField {
  std::string value;
  BlockIndices source_blocks;

  bool operator==(const TextField&) const = default;
};

struct EducationEntry {
  std::string institution;
  std::string institution_key;  // normalize_key(institution)
  DegreeLevel degree = DegreeLevel::kOther;
  std::string degree_text;
  std::optional<std::string> field_of_study;
  std::optional<DateSpan> span;
  BlockIndices source_blocks;

  bool operator==(const EducationEntry&) const = default;
};

struct WorkEntry {
  std::string employer_raw;
  std::string employer_key;  // see employer_key()
  std::optional<std::string> title;
  DateSpan span;
  BlockIndices source_blocks;

  bool operator==(const WorkEntry&) const = default;
};

struct SkillMention {
  std::string raw;
  std::string token;
  BlockIndices source_blocks;

  bool operator==(const SkillMention&) const = default;
};

struct CandidateProfile {
  std::string candidate_id;
  std::optional<TextField> name;
  std::optional<TextField> email;
  std::optional<TextField> phone;
  std::optional<TextField> location;
  std::vector<EducationEntry> educations;  // most recent first
  std::vector<WorkEntry> works;            // most recent first
  std::vector<SkillMention> skills;
  std::string source_document;
  Date reference_date;
  std::vector<std::string> warnings;

  bool operator==(const CandidateProfile&) const = default;
};

// Lowercased, punctuation-stripped employer name with trailing legal
// suffixes (inc, llc, gmbh, ltd, corp) removed.
std::string employer_key(std::string_view employer);

// "c" + 16 hex digits of FNV-1a over the source id.
std::string candidate_id_for(std::string_view source_id);

// Line-oriented golden-file form. Field order:
//   candidate_id, source, reference_date, name, email, phone, location,
//   then one line per education, work and skill entry, then warnings.
// Values are tab separated; absent values are written as "-"; block lists
// as comma-separated indices.
std::string to_profile_text(const CandidateProfile& profile);

void write_profile(ByteWriter& w, const CandidateProfile& profile);
CandidateProfile read_profile(ByteReader& r);

}  // namespace talentrank::extract
