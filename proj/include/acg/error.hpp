#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace acg {

enum class ErrorCode {
  ParseError,
  OrderCapExceeded,
  InvalidParameter,
  IndexOutOfRange,
  NotNormal,
  AbelianGroup,
  NotACGroup,
  NotSolvable,
  NotNilpotent,
  NotPGroup,
  MultipleNonAbelianSylows,
  TooLarge,
  InvalidTuple,
  NotFeasible,
  BoundsTooLarge,
  InvalidGroupTable,
  TheoremViolation,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace acg
