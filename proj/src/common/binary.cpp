#include "talentrank/common/binary.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "talentrank/common/error.hpp"

namespace talentrank {

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[value & 0xF];
    value >>= 4;
  }
  return out;
}

void ByteWriter::u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }

void ByteWriter::u16(std::uint16_t v) {
  for (int i = 0; i < 2; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void ByteWriter::str(std::string_view s) {
  u64(s.size());
  buf_.append(s);
}

std::string_view ByteReader::need(std::size_t n) {
  if (data_.size() - pos_ < n) {
    throw IntegrityError("unexpected end of data", base_ + pos_);
  }
  auto out = data_.substr(pos_, n);
  pos_ += n;
  return out;
}

std::uint8_t ByteReader::u8() { return static_cast<std::uint8_t>(need(1)[0]); }

std::uint16_t ByteReader::u16() {
  auto b = need(2);
  return static_cast<std::uint16_t>(static_cast<unsigned char>(b[0]) |
                                    (static_cast<unsigned char>(b[1]) << 8));
}

std::uint32_t ByteReader::u32() {
  auto b = need(4);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(b[static_cast<std::size_t>(i)]);
  return v;
}

std::uint64_t ByteReader::u64() {
  auto b = need(8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(b[static_cast<std::size_t>(i)]);
  return v;
}

double ByteReader::f64() { return std::bit_cast<double>(u64()); }

bool ByteReader::boolean() {
  auto at = offset();
  auto v = u8();
  if (v > 1) throw IntegrityError("invalid boolean byte", at);
  return v == 1;
}

std::string ByteReader::str() {
  auto n = count(1);
  return std::string(need(static_cast<std::size_t>(n)));
}

std::uint64_t ByteReader::count(std::size_t min_element_size) {
  auto at = offset();
  auto n = u64();
  std::uint64_t remaining = data_.size() - pos_;
  if (min_element_size > 0 && n > remaining / min_element_size) {
    throw IntegrityError("element count exceeds remaining data", at);
  }
  return n;
}

void ByteReader::expect_end() const {
  if (!at_end()) throw IntegrityError("trailing bytes after payload", offset());
}

std::string_view artifact_kind_name(ArtifactKind kind) {
  switch (kind) {
    case ArtifactKind::kCandidate: return "candidate";
    case ArtifactKind::kJobProfile: return "job-profile";
    case ArtifactKind::kSectionModel: return "section-model";
    case ArtifactKind::kSkillEmbedding: return "skill-embedding";
    case ArtifactKind::kSkillMap: return "skill-map";
    case ArtifactKind::kUniversityRankings: return "university-rankings";
    case ArtifactKind::kEmployerScores: return "employer-scores";
    case ArtifactKind::kCorpus: return "corpus";
  }
  return "unknown";
}

std::string seal(ArtifactKind kind, std::string_view payload) {
  ByteWriter w;
  w.raw("TRNK");
  w.u16(kFormatVersion);
  w.u16(static_cast<std::uint16_t>(kind));
  w.u64(payload.size());
  w.raw(payload);
  w.u64(fnv1a64(payload));
  return w.take();
}

std::string_view unseal(ArtifactKind kind, std::string_view file_bytes) {
  ByteReader r(file_bytes);
  if (file_bytes.size() < 4 || file_bytes.substr(0, 4) != "TRNK") {
    throw IntegrityError("bad magic, not a talentrank artifact", 0);
  }
  r.u32();
  auto version = r.u16();
  if (version != kFormatVersion) {
    throw Error(ErrorCode::kVersion, "unsupported artifact format version " +
                                         std::to_string(version) + " (expected " +
                                         std::to_string(kFormatVersion) + ")");
  }
  auto kind_at = r.offset();
  auto stored_kind = r.u16();
  if (stored_kind != static_cast<std::uint16_t>(kind)) {
    throw IntegrityError("artifact kind mismatch: expected " +
                             std::string(artifact_kind_name(kind)),
                         kind_at);
  }
  auto size = r.u64();
  if (size > file_bytes.size() - kPayloadOffset ||
      file_bytes.size() - kPayloadOffset - size < 8) {
    throw IntegrityError("truncated artifact", file_bytes.size());
  }
  auto payload = file_bytes.substr(kPayloadOffset, size);
  ByteReader tail(file_bytes.substr(kPayloadOffset + size), kPayloadOffset + size);
  auto checksum = tail.u64();
  if (!tail.at_end()) {
    throw IntegrityError("trailing bytes after checksum", tail.offset());
  }
  if (checksum != fnv1a64(payload)) {
    throw IntegrityError("checksum mismatch", kPayloadOffset + size);
  }
  return payload;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::kIo, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace talentrank
