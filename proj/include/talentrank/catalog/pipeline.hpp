#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "talentrank/common/date.hpp"
#include "talentrank/common/gazetteer.hpp"
#include "talentrank/extract/entities.hpp"
#include "talentrank/ingest/layout.hpp"
#include "talentrank/ingest/section_classifier.hpp"
#include "talentrank/ingest/segment.hpp"

namespace talentrank::catalog {

struct IngestResult {
  ingest::LayoutDocument document;
  std::vector<ingest::Segment> segments;  // classified
  extract::CandidateProfile profile;
};

// import -> segment -> classify -> extract -> assemble.
IngestResult process_document(std::string_view bytes, ingest::LayoutFormat format,
                              std::string source_id,
                              const ingest::SectionClassifierModel& sections,
                              const Date& reference_date,
                              const Gazetteers& gazetteers = Gazetteers::builtin());

IngestResult process_layout(ingest::LayoutDocument document,
                            const ingest::SectionClassifierModel& sections,
                            const Date& reference_date,
                            const Gazetteers& gazetteers = Gazetteers::builtin());

}  // namespace talentrank::catalog
