#include "talentrank/ingest/segment.hpp"

#include <algorithm>
#include <numeric>

#include "talentrank/common/error.hpp"
#include "talentrank/common/text.hpp"

namespace talentrank::ingest {

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<std::size_t> all_indices(const LayoutDocument& doc) {
  std::vector<std::size_t> idx(doc.blocks.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

}  // namespace

std::optional<double> gap_above(const LayoutDocument& doc, const std::vector<std::size_t>& order,
                                std::size_t position) {
  if (position == 0) return std::nullopt;
  const auto& prev = doc.blocks[order[position - 1]];
  const auto& cur = doc.blocks[order[position]];
  if (prev.page != cur.page) return std::nullopt;
  return std::max(0.0, cur.y - prev.bottom());
}

LayoutStats layout_stats(const LayoutDocument& doc, const std::vector<std::size_t>& subset) {
  LayoutStats stats;
  if (subset.empty()) return stats;
  std::vector<double> fonts;
  std::vector<double> gaps;
  fonts.reserve(subset.size());
  for (std::size_t i = 0; i < subset.size(); ++i) {
    fonts.push_back(doc.blocks[subset[i]].font_size);
    if (auto g = gap_above(doc, subset, i); g && *g > 0) gaps.push_back(*g);
  }
  stats.body_font_median = median(std::move(fonts));
  if (!gaps.empty()) stats.median_line_gap = median(std::move(gaps));
  return stats;
}

LayoutStats layout_stats(const LayoutDocument& doc) { return layout_stats(doc, all_indices(doc)); }

bool is_headline(const LayoutDocument& doc, const std::vector<std::size_t>& order,
                 std::size_t position, const LayoutStats& stats, const SegmentationParams& params,
                 const Gazetteers& gazetteers) {
  const auto& b = doc.blocks[order[position]];
  if (b.font_size >= stats.body_font_median * params.font_ratio) return true;
  if (b.bold && text::utf8_length(b.text) <= params.bold_max_chars) return true;
  if (stats.median_line_gap) {
    auto gap = gap_above(doc, order, position);
    if (gap && *gap >= params.gap_ratio * *stats.median_line_gap &&
        gazetteers.section_keyword(b.text)) {
      return true;
    }
  }
  return false;
}

std::vector<Segment> segment_document(const LayoutDocument& doc, const SegmentationParams& params,
                                      const Gazetteers& gazetteers) {
  if (doc.blocks.empty()) throw Error(ErrorCode::kNoBlocks, "no blocks: cannot segment an empty document");
  auto order = all_indices(doc);
  auto stats = layout_stats(doc, order);
  std::vector<Segment> segments;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    if (is_headline(doc, order, pos, stats, params, gazetteers)) {
      Segment s;
      s.headline_block = order[pos];
      segments.push_back(std::move(s));
    } else if (segments.empty()) {
      segments.emplace_back();
    }
    segments.back().block_indices.push_back(order[pos]);
  }
  return segments;
}

}  // namespace talentrank::ingest
