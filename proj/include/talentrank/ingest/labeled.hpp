#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "talentrank/common/gazetteer.hpp"
#include "talentrank/ingest/layout.hpp"
#include "talentrank/ingest/section_classifier.hpp"

namespace talentrank::ingest {

// One hand-labeled section: a contiguous run of reading-order blocks.
struct GoldSegment {
  SectionLabel label = SectionLabel::kOther;
  std::optional<std::size_t> headline_block;
  std::vector<std::size_t> blocks;

  bool operator==(const GoldSegment&) const = default;
};

struct LabeledDocument {
  std::string name;  // file stem
  LayoutDocument document;
  std::vector<GoldSegment> segments;
};

// Section label files, one segment per line:
//   <label>\t<headline block or ->\t<first>-<last>
// Blank lines and '#' comments are skipped. Segments must tile
// [0, block_count) in order. Throws ParseError naming the line.
std::vector<GoldSegment> parse_section_labels(std::string_view text, std::size_t block_count);
std::string format_section_labels(const std::vector<GoldSegment>& segments);

// Every <stem>.blocks with a sibling <stem>.sections, sorted by stem.
std::vector<LabeledDocument> load_labeled_corpus(const std::filesystem::path& dir);

// Every third document (positions 2, 5, 8, ...) is held out for evaluation.
struct LabeledSplit {
  std::vector<const LabeledDocument*> train;
  std::vector<const LabeledDocument*> test;
};
LabeledSplit held_out_split(const std::vector<LabeledDocument>& corpus);

// Gold segments as classifier training examples; pointers into docs.
std::vector<LabeledSegment> labeled_segments(const std::vector<const LabeledDocument*>& docs);

SectionClassifierModel train_on_labeled(const std::vector<const LabeledDocument*>& docs,
                                        std::uint64_t seed);

// Boundaries: gold segments whose block set equals a predicted segment's.
// Labels: blocks whose predicted segment label equals their gold label.
struct SegmentationScore {
  std::size_t gold_segments = 0;
  std::size_t exact_segments = 0;
  std::size_t blocks = 0;
  std::size_t correct_blocks = 0;

  double boundary_match() const;
  double label_accuracy() const;
};

SegmentationScore evaluate_segmentation(const SectionClassifierModel& model,
                                        const std::vector<const LabeledDocument*>& docs,
                                        const Gazetteers& gazetteers = Gazetteers::builtin());

}  // namespace talentrank::ingest
