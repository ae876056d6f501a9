#include "talentrank/ingest/labeled.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "talentrank/common/binary.hpp"
#include "talentrank/common/error.hpp"
#include "talentrank/common/text.hpp"
#include "talentrank/ingest/segment.hpp"

namespace talentrank::ingest {

namespace fs = std::filesystem;

namespace {

std::optional<std::size_t> parse_index(std::string_view s) {
  s = text::trim(s);
  std::size_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::vector<GoldSegment> parse_section_labels(std::string_view text, std::size_t block_count) {
  std::vector<GoldSegment> out;
  std::size_t line_no = 0;
  std::size_t offset = 0;
  std::size_t next = 0;
  for (auto raw : text::split(text, '\n')) {
    ++line_no;
    auto line_offset = offset;
    offset += raw.size() + 1;
    auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto fail = [&](const std::string& what) {
      return ParseError("line " + std::to_string(line_no) + ": " + what, line_no, line_offset);
    };
    auto fields = text::split(line, '\t');
    if (fields.size() != 3) throw fail("expected 3 tab-separated fields");
    GoldSegment g;
    auto label = parse_section_label(text::trim(fields[0]));
    if (!label) throw fail("unknown section label '" + fields[0] + "'");
    g.label = *label;
    if (text::trim(fields[1]) != "-") {
      auto h = parse_index(fields[1]);
      if (!h) throw fail("bad headline block '" + fields[1] + "'");
      g.headline_block = *h;
    }
    auto dash = fields[2].find('-');
    auto first = parse_index(std::string_view(fields[2]).substr(0, dash));
    auto last = dash == std::string::npos ? first
                                          : parse_index(std::string_view(fields[2]).substr(dash + 1));
    if (!first || !last || *last < *first) throw fail("bad block range '" + fields[2] + "'");
    if (*first != next) throw fail("segment does not start at block " + std::to_string(next));
    if (*last >= block_count) throw fail("block range exceeds document");
    for (auto i = *first; i <= *last; ++i) g.blocks.push_back(i);
    if (g.headline_block && *g.headline_block != *first) {
      throw fail("headline block must open its segment");
    }
    next = *last + 1;
    out.push_back(std::move(g));
  }
  if (next != block_count) {
    throw ParseError("segments cover " + std::to_string(next) + " of " +
                         std::to_string(block_count) + " blocks",
                     line_no, offset);
  }
  return out;
}

std::string format_section_labels(const std::vector<GoldSegment>& segments) {
  std::string out;
  for (const auto& g : segments) {
    out += std::string(to_string(g.label)) + '\t';
    out += g.headline_block ? std::to_string(*g.headline_block) : std::string("-");
    out += '\t' + std::to_string(g.blocks.front()) + '-' + std::to_string(g.blocks.back()) + '\n';
  }
  return out;
}

std::vector<LabeledDocument> load_labeled_corpus(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::kIo, "fixture directory '" + dir.string() + "' not found");
  }
  std::vector<fs::path> paths;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".blocks" && fs::exists(fs::path(e.path()).replace_extension(".sections"))) {
      paths.push_back(e.path());
    }
  }
  std::sort(paths.begin(), paths.end());
  std::vector<LabeledDocument> out;
  for (const auto& p : paths) {
    LabeledDocument d;
    d.name = p.stem().string();
    try {
      d.document = import_layout(read_file(p), LayoutFormat::kBlockTable, d.name);
      auto labels = fs::path(p).replace_extension(".sections");
      d.segments = parse_section_labels(read_file(labels), d.document.blocks.size());
    } catch (const Error& e) {
      throw Error(e.code(), p.string() + ": " + e.what());
    }
    out.push_back(std::move(d));
  }
  return out;
}

LabeledSplit held_out_split(const std::vector<LabeledDocument>& corpus) {
  LabeledSplit s;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    (i % 3 == 2 ? s.test : s.train).push_back(&corpus[i]);
  }
  return s;
}

std::vector<LabeledSegment> labeled_segments(const std::vector<const LabeledDocument*>& docs) {
  std::vector<LabeledSegment> out;
  for (const auto* d : docs) {
    for (const auto& g : d->segments) {
      LabeledSegment ex;
      ex.segment.headline_block = g.headline_block;
      ex.segment.block_indices = g.blocks;
      ex.document = &d->document;
      ex.label = g.label;
      out.push_back(std::move(ex));
    }
  }
  return out;
}

SectionClassifierModel train_on_labeled(const std::vector<const LabeledDocument*>& docs,
                                        std::uint64_t seed) {
  auto examples = labeled_segments(docs);
  return train_section_classifier(examples, seed);
}

double SegmentationScore::boundary_match() const {
  return gold_segments == 0 ? 0.0
                            : static_cast<double>(exact_segments) / static_cast<double>(gold_segments);
}

double SegmentationScore::label_accuracy() const {
  return blocks == 0 ? 0.0 : static_cast<double>(correct_blocks) / static_cast<double>(blocks);
}

SegmentationScore evaluate_segmentation(const SectionClassifierModel& model,
                                        const std::vector<const LabeledDocument*>& docs,
                                        const Gazetteers& gazetteers) {
  SegmentationScore score;
  for (const auto* d : docs) {
    auto predicted = segment_document(d->document, {}, gazetteers);
    classify_segments(model, predicted, d->document, gazetteers);
    std::set<std::vector<std::size_t>> predicted_sets;
    std::vector<SectionLabel> block_label(d->document.blocks.size(), SectionLabel::kOther);
    for (const auto& p : predicted) {
      predicted_sets.insert(p.block_indices);
      for (auto i : p.block_indices) block_label[i] = p.label.value_or(SectionLabel::kOther);
    }
    for (const auto& g : d->segments) {
      ++score.gold_segments;
      if (predicted_sets.count(g.blocks)) ++score.exact_segments;
      for (auto i : g.blocks) {
        ++score.blocks;
        if (block_label[i] == g.label) ++score.correct_blocks;
      }
    }
  }
  return score;
}

}  // namespace talentrank::ingest
