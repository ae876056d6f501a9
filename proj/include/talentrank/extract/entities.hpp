#pragma once

#include <optional>
#include <vector>

#include "talentrank/common/gazetteer.hpp"
#include "talentrank/extract/profile.hpp"
#include "talentrank/ingest/layout.hpp"
#include "talentrank/ingest/segment.hpp"

namespace talentrank::extract {

// Entities recognized in one labeled segment.
struct SegmentEntities {
  SectionLabel label = SectionLabel::kOther;
  std::optional<TextField> name;
  std::optional<TextField> email;
  std::optional<TextField> phone;
  std::optional<TextField> location;
  std::vector<EducationEntry> educations;
  std::vector<WorkEntry> works;
  std::vector<SkillMention> skills;
  std::vector<std::string> warnings;
};

// Splits a work-experience segment into career steps. Headline rules are
// re-run on the segment's own blocks, and each block holding a date range
// anchors a step. When the first step shows k header lines (employer, title)
// above its date line, later steps take up to k lines above their date with
// them. The segment's headline block joins the first step. Always returns at
// least one sub-segment; together they cover the segment's blocks.
std::vector<ingest::Segment> split_career_steps(
    const ingest::Segment& segment, const ingest::LayoutDocument& doc,
    const Date& reference_date, const ingest::SegmentationParams& params = {},
    const Gazetteers& gazetteers = Gazetteers::builtin());

// Rule and gazetteer based recognition per section label. Missing entities
// stay unset; unusable career steps are reported in warnings.
SegmentEntities extract_entities(const ingest::Segment& segment,
                                 const ingest::LayoutDocument& doc, const Date& reference_date,
                                 const Gazetteers& gazetteers = Gazetteers::builtin(),
                                 const ingest::SegmentationParams& params = {});

// Merges per-segment entities into one profile. Education and work entries
// are ordered by span start, latest first, entries without spans last.
CandidateProfile build_profile(const ingest::LayoutDocument& doc,
                               const std::vector<ingest::Segment>& classified,
                               const std::vector<SegmentEntities>& entities,
                               const Date& reference_date);

}  // namespace talentrank::extract
