#include "talentrank/catalog/pipeline.hpp"

namespace talentrank::catalog {

IngestResult process_layout(ingest::LayoutDocument document,
                            const ingest::SectionClassifierModel& sections,
                            const Date& reference_date, const Gazetteers& gazetteers) {
  IngestResult r;
  r.document = std::move(document);
  r.segments = ingest::segment_document(r.document, {}, gazetteers);
  ingest::classify_segments(sections, r.segments, r.document, gazetteers);
  std::vector<extract::SegmentEntities> entities;
  entities.reserve(r.segments.size());
  for (const auto& s : r.segments) {
    entities.push_back(extract::extract_entities(s, r.document, reference_date, gazetteers));
  }
  r.profile = extract::build_profile(r.document, r.segments, entities, reference_date);
  return r;
}

IngestResult process_document(std::string_view bytes, ingest::LayoutFormat format,
                              std::string source_id,
                              const ingest::SectionClassifierModel& sections,
                              const Date& reference_date, const Gazetteers& gazetteers) {
  return process_layout(ingest::import_layout(bytes, format, std::move(source_id)), sections,
                        reference_date, gazetteers);
}

}  // namespace talentrank::catalog
