#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace otto {

enum class ErrorCode {
  NonPositiveTemperature,
  BadTemperatures,
  LengthMismatch,
  ForbiddenModePattern,
  OutsideEngineWindow,
  ZeroShift,
  NoRoot,
  EmptyDomain,
  EmptyResult,
  InvalidArgument,
};

std::string_view error_name(ErrorCode code);

// Every domain failure in the library is reported as an otto::Error; the
// CLI maps code() to its exit status and prints error_name().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace otto
