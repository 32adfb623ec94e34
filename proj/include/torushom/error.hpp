#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace torushom {

enum class ErrorCode {
  InvalidComplex,
  InvalidPoset,
  NotPure,
  ElementNotFound,
  DimensionMismatch,
  RankMismatch,
  StarViolation,
  RangeError,
  DegreeOverflow,
  MismatchedDatum,
  Unresolvable,
  NoMaximalSimplex,
  NotAField,
  ParseError,
};

std::string_view error_code_name(ErrorCode code);

class TorusError : public std::runtime_error {
 public:
  TorusError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace torushom
