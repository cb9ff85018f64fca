#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace esslab {

enum class ErrorCode {
  InvalidArgument,
  MinimizerAtBoundary,
  EnumerationCapExceeded,
  DegenerateVariance,
  AllDrawsDegenerate,
  UnsupportedFamily,
  UnknownScenario,
  ColumnMissing,
  DegenerateDesign,
  ParseError,
};

std::string_view to_string(ErrorCode code);

// Every recoverable failure in the library is reported through this type.
// The message names the offending field where there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, const std::string& field, const std::string& what) {
  if (!condition) fail(ErrorCode::InvalidArgument, field + " " + what);
}

}  // namespace esslab
