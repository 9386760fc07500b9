#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stopwright {

enum class ErrorCode {
  kProbabilitySum,
  kStructure,
  kZeroProbability,
  kValidation,
  kNotAStoppingMeasure,
  kSpaceMismatch,
  kNotZeroSum,
  kConsistencyFailure,
  kParse,
};

// Stable names used in messages and CLI output, e.g. "ProbabilitySumError".
std::string_view error_name(ErrorCode code);

// The single exception type thrown by the library for domain errors. what()
// is "<ErrorName>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace stopwright
