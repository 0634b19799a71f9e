#pragma once

#include <stdexcept>
#include <string>

namespace nov {

// Numeric values are mirrored by nov_status in nonoverlap.h.
enum class ErrorCode : int {
  Syntax = 1,
  ConstantFunctional = 2,
  Domain = 3,
  Degenerate = 4,
  Branch = 5,
  PoleOnPath = 6,
  NoConvergence = 7,
  InvalidBoundary = 8,
  GuardViolation = 9,
  TraceAbort = 10,
  NotClosed = 11,
  Config = 12,
  Io = 13,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error(ErrorCode::Syntax, what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace nov
