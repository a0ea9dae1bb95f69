#include "otto/error.hpp"

namespace otto {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveTemperature: return "NonPositiveTemperature";
    case ErrorCode::BadTemperatures: return "BadTemperatures";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ForbiddenModePattern: return "ForbiddenModePattern";
    case ErrorCode::OutsideEngineWindow: return "OutsideEngineWindow";
    case ErrorCode::ZeroShift: return "ZeroShift";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::EmptyResult: return "EmptyResult";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

}  // namespace otto
