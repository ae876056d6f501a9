#include "talentrank/ingest/layout.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <system_error>

#include "talentrank/common/csv.hpp"
#include "talentrank/common/error.hpp"
#include "talentrank/common/text.hpp"

namespace talentrank::ingest {

LayoutFormat parse_layout_format(std::string_view name) {
  auto n = text::to_lower(text::trim(name));
  if (n == "block-table" || n == "blocks" || n == "block_table") return LayoutFormat::kBlockTable;
  if (n == "html-subset" || n == "html" || n == "html_subset") return LayoutFormat::kHtmlSubset;
  throw Error(ErrorCode::kParameter, "unknown layout format '" + std::string(name) + "'");
}

std::string_view to_string(LayoutFormat format) {
  return format == LayoutFormat::kBlockTable ? "block-table" : "html-subset";
}

void sort_reading_order(std::vector<LayoutBlock>& blocks) {
  std::stable_sort(blocks.begin(), blocks.end(), [](const LayoutBlock& a, const LayoutBlock& b) {
    if (a.page != b.page) return a.page < b.page;
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
  });
}

namespace {

std::optional<double> parse_number(std::string_view s) {
  s = text::trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Block table

std::vector<LayoutBlock> parse_block_table(std::string_view bytes) {
  std::vector<LayoutBlock> blocks;
  std::size_t line_no = 0;
  std::size_t offset = 0;
  for (auto raw : text::split(bytes, '\n')) {
    ++line_no;
    std::size_t line_offset = offset;
    offset += raw.size() + 1;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (text::trim(raw).empty() || raw.front() == '#') continue;

    auto fail = [&](const std::string& what) -> ParseError {
      return ParseError("line " + std::to_string(line_no) + ": " + what, line_no, line_offset);
    };

    std::vector<std::string> fields;
    std::size_t start = 0;
    for (int i = 0; i < 8; ++i) {
      auto tab = raw.find('\t', start);
      if (tab == std::string::npos) {
        throw fail("expected 9 tab-separated fields, found " + std::to_string(i + 1));
      }
      fields.push_back(raw.substr(start, tab - start));
      start = tab + 1;
    }
    fields.push_back(raw.substr(start));

    LayoutBlock b;
    static constexpr const char* kNames[] = {"page", "x", "y", "width", "height", "font_size"};
    double nums[6];
    for (int i = 0; i < 6; ++i) {
      auto v = parse_number(fields[static_cast<std::size_t>(i)]);
      if (!v) {
        throw fail(std::string("field '") + kNames[i] + "' is not a number: '" +
                   fields[static_cast<std::size_t>(i)] + "'");
      }
      nums[i] = *v;
    }
    if (nums[0] < 0 || nums[0] != std::floor(nums[0]) || nums[0] > 1e6) {
      throw fail("page must be a non-negative integer");
    }
    if (nums[3] <= 0 || nums[4] <= 0) throw fail("width and height must be positive");
    if (nums[5] <= 0) throw fail("font_size must be positive");
    auto bold = text::trim(fields[6]);
    if (bold != "0" && bold != "1") throw fail("bold must be 0 or 1");

    b.page = static_cast<std::uint32_t>(nums[0]);
    b.x = nums[1];
    b.y = nums[2];
    b.width = nums[3];
    b.height = nums[4];
    b.font_size = nums[5];
    b.bold = bold == "1";
    b.font_name = std::string(text::trim(fields[7]));
    b.text = std::string(text::trim(fields[8]));
    if (b.text.empty()) continue;
    blocks.push_back(std::move(b));
  }
  return blocks;
}

// ---------------------------------------------------------------------------
// HTML subset

constexpr double kPageTop = 72.0;
constexpr double kLeftMargin = 72.0;
constexpr double kTextWidth = 468.0;

struct Style {
  double font_size = 11.0;
  bool bold = false;
  std::string font_name;
};

struct Element {
  std::string name;
  Style style;
  bool block = false;
  bool skip = false;  // head/style/script content
  // Explicit geometry from data-* attributes.
  std::optional<double> page, x, y, width, height;
};

struct Run {
  std::string text;
  Style style;
};

bool is_void_element(std::string_view n) {
  return n == "br" || n == "hr" || n == "meta" || n == "img" || n == "link" || n == "input";
}

bool is_block_element(std::string_view n) {
  return n == "p" || n == "div" || n == "li" || n == "td" || n == "th" || n == "h1" ||
         n == "h2" || n == "h3" || n == "h4" || n == "h5" || n == "h6" || n == "section" ||
         n == "header" || n == "footer" || n == "ul" || n == "ol" || n == "table" ||
         n == "tr" || n == "body" || n == "html" || n == "article";
}

double heading_size(std::string_view n) {
  if (n == "h1") return 24.0;
  if (n == "h2") return 18.0;
  if (n == "h3") return 14.0;
  if (n == "h4") return 12.0;
  if (n == "h5" || n == "h6") return 11.0;
  return 0.0;
}

std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out.push_back(s[i]);
      continue;
    }
    auto semi = s.find(';', i);
    if (semi == std::string_view::npos || semi - i > 10) {
      out.push_back('&');
      continue;
    }
    auto name = s.substr(i + 1, semi - i - 1);
    std::uint32_t cp = 0;
    if (name == "amp") cp = '&';
    else if (name == "lt") cp = '<';
    else if (name == "gt") cp = '>';
    else if (name == "quot") cp = '"';
    else if (name == "apos" || name == "#39") cp = '\'';
    else if (name == "nbsp") cp = ' ';
    else if (name.size() > 1 && name[0] == '#') {
      int base = 10;
      auto digits = name.substr(1);
      if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
        base = 16;
        digits.remove_prefix(1);
      }
      auto r = std::from_chars(digits.data(), digits.data() + digits.size(), cp, base);
      if (r.ec != std::errc() || r.ptr != digits.data() + digits.size() || cp == 0 ||
          cp > 0x10FFFF) {
        out.push_back('&');
        continue;
      }
    } else {
      out.push_back('&');
      continue;
    }
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
    i = semi;
  }
  return out;
}

class HtmlSubsetParser {
 public:
  explicit HtmlSubsetParser(std::string_view src) : src_(src) {}

  std::vector<LayoutBlock> run() {
    Element root;
    root.name = "#root";
    root.block = true;
    stack_.push_back(root);
    while (pos_ < src_.size()) {
      if (src_[pos_] == '<') {
        parse_markup();
      } else {
        auto next = src_.find('<', pos_);
        if (next == std::string_view::npos) next = src_.size();
        if (!stack_.back().skip) {
          auto decoded = decode_entities(src_.substr(pos_, next - pos_));
          if (!decoded.empty()) runs_.push_back({decoded, stack_.back().style});
        }
        pos_ = next;
      }
    }
    if (stack_.size() > 1) {
      throw error("unclosed element <" + stack_.back().name + ">", open_offsets_.back());
    }
    flush();
    return std::move(blocks_);
  }

 private:
  ParseError error(const std::string& what, std::size_t at) const {
    std::size_t line = 1 + static_cast<std::size_t>(
                               std::count(src_.begin(), src_.begin() + static_cast<long>(at), '\n'));
    return ParseError("line " + std::to_string(line) + ", offset " + std::to_string(at) + ": " +
                          what,
                      line, at);
  }

  void parse_markup() {
    std::size_t start = pos_;
    if (src_.compare(pos_, 4, "<!--") == 0) {
      auto end = src_.find("-->", pos_ + 4);
      if (end == std::string_view::npos) throw error("unterminated comment", start);
      pos_ = end + 3;
      return;
    }
    if (src_.compare(pos_, 2, "<!") == 0 || src_.compare(pos_, 2, "<?") == 0) {
      auto end = src_.find('>', pos_);
      if (end == std::string_view::npos) throw error("unterminated declaration", start);
      pos_ = end + 1;
      return;
    }
    // Find the closing '>' outside quoted attribute values.
    std::size_t i = pos_ + 1;
    char quote = 0;
    for (; i < src_.size(); ++i) {
      char c = src_[i];
      if (quote) {
        if (c == quote) quote = 0;
      } else if (c == '"' || c == '\'') {
        quote = c;
      } else if (c == '>') {
        break;
      } else if (c == '<') {
        throw error("unexpected '<' inside tag", i);
      }
    }
    if (i >= src_.size()) throw error("unterminated tag", start);
    std::string_view tag = src_.substr(pos_ + 1, i - pos_ - 1);
    pos_ = i + 1;

    bool closing = !tag.empty() && tag.front() == '/';
    if (closing) tag.remove_prefix(1);
    bool self_closing = !tag.empty() && tag.back() == '/';
    if (self_closing) tag.remove_suffix(1);
    std::size_t n = 0;
    while (n < tag.size() && (text::is_alnum(tag[n]) || tag[n] == '-')) ++n;
    if (n == 0) throw error("malformed tag", start);
    std::string name = text::to_lower(tag.substr(0, n));

    if (closing) {
      close(name, start);
      return;
    }
    auto attrs = parse_attributes(tag.substr(n), start);
    open(name, attrs, self_closing || is_void_element(name), start);
  }

  std::vector<std::pair<std::string, std::string>> parse_attributes(std::string_view s,
                                                                    std::size_t at) {
    std::vector<std::pair<std::string, std::string>> attrs;
    std::size_t i = 0;
    while (i < s.size()) {
      while (i < s.size() && text::is_space(s[i])) ++i;
      if (i >= s.size()) break;
      std::size_t k = i;
      while (k < s.size() && !text::is_space(s[k]) && s[k] != '=') ++k;
      if (k == i) throw error("malformed attribute", at);
      std::string key = text::to_lower(s.substr(i, k - i));
      i = k;
      while (i < s.size() && text::is_space(s[i])) ++i;
      std::string value;
      if (i < s.size() && s[i] == '=') {
        ++i;
        while (i < s.size() && text::is_space(s[i])) ++i;
        if (i < s.size() && (s[i] == '"' || s[i] == '\'')) {
          char q = s[i++];
          auto end = s.find(q, i);
          if (end == std::string_view::npos) throw error("unterminated attribute value", at);
          value = decode_entities(s.substr(i, end - i));
          i = end + 1;
        } else {
          std::size_t e = i;
          while (e < s.size() && !text::is_space(s[e])) ++e;
          value = decode_entities(s.substr(i, e - i));
          i = e;
        }
      }
      attrs.emplace_back(std::move(key), std::move(value));
    }
    return attrs;
  }

  // Returns the size in points, or nullopt when the value is not understood.
  std::optional<double> parse_length(std::string_view v, double parent) const {
    v = text::trim(v);
    double scale = 1.0;
    auto ends_with = [&](std::string_view suf) {
      if (v.size() >= suf.size() && text::to_lower(v.substr(v.size() - suf.size())) == suf) {
        v.remove_suffix(suf.size());
        return true;
      }
      return false;
    };
    if (ends_with("pt")) scale = 1.0;
    else if (ends_with("px")) scale = 0.75;
    else if (ends_with("em")) scale = parent;
    else if (ends_with("%")) scale = parent / 100.0;
    auto num = parse_number(v);
    if (!num || *num <= 0) return std::nullopt;
    return *num * scale;
  }

  void apply_style(std::string_view css, Element& el, std::size_t at, double& margin_top,
                   bool& page_break) {
    for (const auto& decl : text::split(css, ';')) {
      auto colon = decl.find(':');
      if (text::trim(decl).empty()) continue;
      if (colon == std::string::npos) throw error("malformed style declaration '" + decl + "'", at);
      auto prop = text::to_lower(text::trim(std::string_view(decl).substr(0, colon)));
      auto value = text::to_lower(text::trim(std::string_view(decl).substr(colon + 1)));
      if (prop == "font-size") {
        auto size = parse_length(value, el.style.font_size);
        if (!size) throw error("invalid font-size '" + value + "'", at);
        el.style.font_size = *size;
      } else if (prop == "font-weight") {
        if (value == "bold" || value == "bolder") {
          el.style.bold = true;
        } else if (value == "normal" || value == "lighter") {
          el.style.bold = false;
        } else if (auto w = parse_number(value)) {
          el.style.bold = *w >= 600;
        } else {
          throw error("invalid font-weight '" + value + "'", at);
        }
      } else if (prop == "font-family") {
        el.style.font_name = std::string(text::trim(std::string_view(decl).substr(colon + 1)));
      } else if (prop == "margin-top") {
        auto m = parse_length(value, el.style.font_size);
        if (m) margin_top = *m;
      } else if (prop == "page-break-before" || prop == "break-before") {
        page_break = value == "always" || value == "page";
      }
    }
  }

  void open(const std::string& name, const std::vector<std::pair<std::string, std::string>>& attrs,
            bool is_void, std::size_t at) {
    if (name == "br") {
      flush();
      return;
    }
    if (name == "hr") {
      flush();
      cursor_ += 12.0;
      return;
    }
    if (is_void) return;

    Element el;
    el.name = name;
    el.style = stack_.back().style;
    el.skip = stack_.back().skip || name == "head" || name == "style" || name == "script" ||
              name == "title";
    el.block = is_block_element(name);
    if (name == "b" || name == "strong") el.style.bold = true;
    double margin_top = 0.0;
    if (double hs = heading_size(name); hs > 0) {
      el.style.font_size = hs;
      el.style.bold = true;
      margin_top = 0.6 * hs;
    }
    bool page_break = false;
    for (const auto& [key, value] : attrs) {
      if (key == "style") {
        apply_style(value, el, at, margin_top, page_break);
      } else if (key.rfind("data-", 0) == 0) {
        auto field = key.substr(5);
        auto num = parse_number(value);
        auto check = [&](std::optional<double>& slot) {
          if (!num) throw error("attribute " + key + " is not a number", at);
          slot = num;
        };
        if (field == "page") check(el.page);
        else if (field == "x") check(el.x);
        else if (field == "y") check(el.y);
        else if (field == "width") check(el.width);
        else if (field == "height") check(el.height);
      }
    }
    if (el.block) {
      flush();
      if (page_break) {
        ++page_;
        cursor_ = kPageTop;
      }
      cursor_ += margin_top;
    }
    stack_.push_back(std::move(el));
    open_offsets_.push_back(at);
  }

  void close(const std::string& name, std::size_t at) {
    if (is_void_element(name)) return;
    if (stack_.size() <= 1 || stack_.back().name != name) {
      throw error("unexpected closing tag </" + name + ">" +
                      (stack_.size() > 1 ? " (expected </" + stack_.back().name + ">)" : ""),
                  at);
    }
    if (stack_.back().block) flush();
    stack_.pop_back();
    open_offsets_.pop_back();
  }

  // Emits the pending inline runs as one block.
  void flush() {
    std::string joined;
    std::optional<Style> first_style;
    bool all_bold = true;
    for (const auto& r : runs_) {
      joined += r.text;
      if (!text::trim(r.text).empty()) {
        if (!first_style) first_style = r.style;
        all_bold = all_bold && r.style.bold;
      }
    }
    runs_.clear();
    auto body = text::collapse_whitespace(joined);
    if (body.empty()) return;

    // Geometry comes from the innermost enclosing block element.
    const Element* owner = &stack_.back();
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
      if (it->block) {
        owner = &*it;
        break;
      }
    }
    LayoutBlock b;
    b.text = std::move(body);
    b.font_size = first_style->font_size;
    b.bold = all_bold;
    b.font_name = first_style->font_name;
    b.page = owner->page ? static_cast<std::uint32_t>(*owner->page) : page_;
    b.x = owner->x.value_or(kLeftMargin);
    b.width = owner->width.value_or(kTextWidth);
    b.height = owner->height.value_or(b.font_size * 1.2);
    b.y = owner->y.value_or(cursor_);
    if (b.width <= 0 || b.height <= 0) throw error("non-positive block geometry", pos_);
    cursor_ = std::max(cursor_, b.y + b.height);
    blocks_.push_back(std::move(b));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::vector<Element> stack_;
  std::vector<std::size_t> open_offsets_{0};
  std::vector<Run> runs_;
  std::vector<LayoutBlock> blocks_;
  std::uint32_t page_ = 0;
  double cursor_ = kPageTop;
};

}  // namespace

LayoutDocument import_layout(std::string_view bytes, LayoutFormat format,
                             std::string source_id) {
  if (!text::is_valid_utf8(bytes)) {
    // Locate the first bad byte for the diagnostic.
    std::size_t lo = 0;
    std::size_t hi = bytes.size();
    while (hi - lo > 1) {
      std::size_t mid = (lo + hi) / 2;
      if (text::is_valid_utf8(bytes.substr(0, mid))) lo = mid;
      else hi = mid;
    }
    std::size_t line = 1 + static_cast<std::size_t>(
                               std::count(bytes.begin(), bytes.begin() + static_cast<long>(lo), '\n'));
    throw ParseError("invalid UTF-8 at line " + std::to_string(line), line, lo);
  }
  LayoutDocument doc;
  doc.source_id = std::move(source_id);
  doc.blocks = format == LayoutFormat::kBlockTable ? parse_block_table(bytes)
                                                   : HtmlSubsetParser(bytes).run();
  if (doc.blocks.empty()) {
    throw Error(ErrorCode::kNoBlocks, "no blocks: document '" + doc.source_id +
                                          "' contains no non-whitespace text");
  }
  sort_reading_order(doc.blocks);
  return doc;
}

std::string to_block_table(const LayoutDocument& doc) {
  std::string out = "# page\tx\ty\twidth\theight\tfont_size\tbold\tfont_name\ttext\n";
  for (const auto& b : doc.blocks) {
    out += std::to_string(b.page) + '\t' + csv::format_double(b.x) + '\t' +
           csv::format_double(b.y) + '\t' + csv::format_double(b.width) + '\t' +
           csv::format_double(b.height) + '\t' + csv::format_double(b.font_size) + '\t' +
           (b.bold ? "1" : "0") + '\t' + b.font_name + '\t' + b.text + '\n';
  }
  return out;
}

void write_document(ByteWriter& w, const LayoutDocument& doc) {
  w.str(doc.source_id);
  w.u64(doc.blocks.size());
  for (const auto& b : doc.blocks) {
    w.str(b.text);
    w.u32(b.page);
    w.f64(b.x);
    w.f64(b.y);
    w.f64(b.width);
    w.f64(b.height);
    w.f64(b.font_size);
    w.boolean(b.bold);
    w.str(b.font_name);
  }
}

LayoutDocument read_document(ByteReader& r) {
  LayoutDocument doc;
  doc.source_id = r.str();
  auto n = r.count(61);
  doc.blocks.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    LayoutBlock b;
    b.text = r.str();
    b.page = r.u32();
    b.x = r.f64();
    b.y = r.f64();
    b.width = r.f64();
    b.height = r.f64();
    b.font_size = r.f64();
    b.bold = r.boolean();
    b.font_name = r.str();
    doc.blocks.push_back(std::move(b));
  }
  return doc;
}

}  // namespace talentrank::ingest
