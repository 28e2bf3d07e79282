#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace framelab {

enum class ErrorCode {
  kInvalidArgument,
  kNotHermitian,
  kNoConvergence,
  kSingularOperator,
  kDimensionMismatch,
  kLengthMismatch,
  kShapeMismatch,
  kNotAFrame,
  kNotADualPair,
  kCh2Violated,
  kBadShape,
  kBadLattice,
  kJitterOnNonGabor,
  kParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures surface as this exception; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace framelab
