#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace talentrank {

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 14695981039346656037ULL);
std::string hex64(std::uint64_t value);

// Little-endian, length-prefixed primitives. Doubles are stored as their
// IEEE-754 bit pattern so every artifact round-trips bit-exactly.
class ByteWriter {
 public:
  void u8(std::uint8_t v);
  void u16(std::uint16_t v);
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  void f64(double v);
  void boolean(bool v) { u8(v ? 1 : 0); }
  void str(std::string_view s);
  void raw(std::string_view s) { buf_.append(s); }

  const std::string& bytes() const { return buf_; }
  std::string take() { return std::move(buf_); }

 private:
  std::string buf_;
};

// Reads what ByteWriter wrote. Any short read throws IntegrityError carrying
// the absolute file offset (base_offset + position) where data ran out.
class ByteReader {
 public:
  explicit ByteReader(std::string_view data, std::uint64_t base_offset = 0)
      : data_(data), base_(base_offset) {}

  std::uint8_t u8();
  std::uint16_t u16();
  std::uint32_t u32();
  std::uint64_t u64();
  std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
  double f64();
  bool boolean();
  std::string str();
  // Element count guarded against the bytes remaining (min_element_size each).
  std::uint64_t count(std::size_t min_element_size = 1);

  bool at_end() const { return pos_ == data_.size(); }
  std::uint64_t offset() const { return base_ + pos_; }
  void expect_end() const;

 private:
  std::string_view need(std::size_t n);

  std::string_view data_;
  std::uint64_t base_;
  std::size_t pos_ = 0;
};

// Kinds of persisted artifacts. The tag is part of every file header.
enum class ArtifactKind : std::uint16_t {
  kCandidate = 1,
  kJobProfile = 2,
  kSectionModel = 3,
  kSkillEmbedding = 4,
  kSkillMap = 5,
  kUniversityRankings = 6,
  kEmployerScores = 7,
  kCorpus = 8,
};

std::string_view artifact_kind_name(ArtifactKind kind);

// Container layout:
//   magic "TRNK" | u16 format version | u16 kind | u64 payload size |
//   payload | u64 FNV-1a of payload
inline constexpr std::uint16_t kFormatVersion = 1;

std::string seal(ArtifactKind kind, std::string_view payload);

// Validates the envelope and returns the payload. Throws VersionError-coded
// Error for unknown versions (before touching the payload) and
// IntegrityError for truncation, bad magic, wrong kind or checksum mismatch.
std::string_view unseal(ArtifactKind kind, std::string_view file_bytes);

inline constexpr std::uint64_t kPayloadOffset = 16;

std::string read_file(const std::filesystem::path& path);
// Writes through a temporary sibling and renames into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace talentrank
