#include "talentrank/common/error.hpp"

namespace talentrank {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kNoBlocks: return "no_blocks";
    case ErrorCode::kNormalization: return "normalization_error";
    case ErrorCode::kTraining: return "training_error";
    case ErrorCode::kIncompatibleModel: return "incompatible_model";
    case ErrorCode::kParameter: return "parameter_error";
    case ErrorCode::kOutOfVocabulary: return "out_of_vocabulary";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kConflict: return "conflict";
    case ErrorCode::kIntegrity: return "integrity_error";
    case ErrorCode::kVersion: return "version_error";
    case ErrorCode::kConfiguration: return "configuration_error";
    case ErrorCode::kIo: return "io_error";
  }
  return "error";
}

}  // namespace talentrank
