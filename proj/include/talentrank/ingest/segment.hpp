#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "talentrank/common/gazetteer.hpp"
#include "talentrank/common/labels.hpp"
#include "talentrank/ingest/layout.hpp"

namespace talentrank::ingest {

struct SegmentationParams {
  // Headline when font_size >= body median * font_ratio.
  double font_ratio = 1.15;
  // Bold blocks up to this many characters count as headlines.
  std::size_t bold_max_chars = 40;
  // Gap above >= gap_ratio * median line gap, combined with a keyword hit.
  double gap_ratio = 1.8;
};

struct Segment {
  std::optional<SectionLabel> label;
  std::optional<std::size_t> headline_block;
  std::vector<std::size_t> block_indices;
  double confidence = 0.0;

  bool operator==(const Segment&) const = default;
};

// Document-level statistics the headline rule is relative to.
struct LayoutStats {
  double body_font_median = 0.0;
  // Median of positive vertical gaps between consecutive same-page blocks;
  // nullopt when the document has no such gap.
  std::optional<double> median_line_gap;
};

LayoutStats layout_stats(const LayoutDocument& doc);
LayoutStats layout_stats(const LayoutDocument& doc, const std::vector<std::size_t>& subset);

// Vertical whitespace above block i relative to the previous block in the
// given order; nullopt for the first block on a page.
std::optional<double> gap_above(const LayoutDocument& doc, const std::vector<std::size_t>& order,
                                std::size_t position);

bool is_headline(const LayoutDocument& doc, const std::vector<std::size_t>& order,
                 std::size_t position, const LayoutStats& stats, const SegmentationParams& params,
                 const Gazetteers& gazetteers);

// Splits the document at every headline. Blocks ahead of the first headline
// form a leading segment without headline_block. Always returns at least one
// segment; labels are left unset.
std::vector<Segment> segment_document(const LayoutDocument& doc,
                                      const SegmentationParams& params = {},
                                      const Gazetteers& gazetteers = Gazetteers::builtin());

}  // namespace talentrank::ingest
