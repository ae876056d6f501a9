#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace talentrank {

// Machine-readable error category. The server maps these onto HTTP status
// codes and the CLI onto exit codes, so every throw site picks one.
enum class ErrorCode {
  kParse,
  kNoBlocks,
  kNormalization,
  kTraining,
  kIncompatibleModel,
  kParameter,
  kOutOfVocabulary,
  kNotFound,
  kConflict,
  kIntegrity,
  kVersion,
  kConfiguration,
  kIo,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failures carry the 1-based line (0 when unknown) and byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t offset)
      : Error(ErrorCode::kParse, message), line_(line), offset_(offset) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t line_;
  std::size_t offset_;
};

class NormalizationError : public Error {
 public:
  explicit NormalizationError(std::string original)
      : Error(ErrorCode::kNormalization,
              "cannot normalize expression: '" + original + "'"),
        original_(std::move(original)) {}

  const std::string& original() const noexcept { return original_; }

 private:
  std::string original_;
};

class IntegrityError : public Error {
 public:
  IntegrityError(const std::string& message, std::uint64_t offset)
      : Error(ErrorCode::kIntegrity,
              message + " (at byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

}  // namespace talentrank
