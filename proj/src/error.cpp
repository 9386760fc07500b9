#include "stopwright/error.hpp"

namespace stopwright {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kProbabilitySum: return "ProbabilitySumError";
    case ErrorCode::kStructure: return "StructureError";
    case ErrorCode::kZeroProbability: return "ZeroProbabilityError";
    case ErrorCode::kValidation: return "ValidationError";
    case ErrorCode::kNotAStoppingMeasure: return "NotAStoppingMeasure";
    case ErrorCode::kSpaceMismatch: return "SpaceMismatch";
    case ErrorCode::kNotZeroSum: return "NotZeroSum";
    case ErrorCode::kConsistencyFailure: return "ConsistencyFailure";
    case ErrorCode::kParse: return "ParseError";
  }
  return "UnknownError";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

}  // namespace stopwright
