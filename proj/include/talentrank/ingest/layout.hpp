#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "talentrank/common/binary.hpp"

namespace talentrank::ingest {

// One positioned run of text. Coordinates are document points with y
// growing downward.
struct LayoutBlock {
  std::string text;
  std::uint32_t page = 0;
  double x = 0.0;
  double y = 0.0;
  double width = 1.0;
  double height = 1.0;
  double font_size = 11.0;
  bool bold = false;
  std::string font_name;

  double bottom() const { return y + height; }
  bool operator==(const LayoutBlock&) const = default;
};

// Blocks in reading order: page, then y, then x, ties kept in input order.
struct LayoutDocument {
  std::string source_id;
  std::vector<LayoutBlock> blocks;

  bool operator==(const LayoutDocument&) const = default;
};

enum class LayoutFormat { kBlockTable, kHtmlSubset };

LayoutFormat parse_layout_format(std::string_view name);
std::string_view to_string(LayoutFormat format);

// Decodes a block-table or HTML-subset document and sorts it into reading
// order. Throws ParseError (line/offset) on malformed input and an Error
// coded kNoBlocks when nothing but whitespace remains.
LayoutDocument import_layout(std::string_view bytes, LayoutFormat format,
                             std::string source_id);

// Stable (page, y, x) sort.
void sort_reading_order(std::vector<LayoutBlock>& blocks);

std::string to_block_table(const LayoutDocument& doc);

void write_document(ByteWriter& w, const LayoutDocument& doc);
LayoutDocument read_document(ByteReader& r);

}  // namespace talentrank::ingest
