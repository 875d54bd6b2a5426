#include "decoh/error.hpp"

namespace decoh {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveFrequency: return "NonPositiveFrequency";
    case ErrorCode::EmptyChannelList: return "EmptyChannelList";
    case ErrorCode::NegativeDipoleStrength: return "NegativeDipoleStrength";
    case ErrorCode::NegativeSeparation: return "NegativeSeparation";
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::NonLinearGrowth: return "NonLinearGrowth";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::InvalidCutoff: return "InvalidCutoff";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) {
  return code == ErrorCode::QuadratureNotConverged || code == ErrorCode::NonLinearGrowth ||
         code == ErrorCode::NoSignChange;
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace decoh
