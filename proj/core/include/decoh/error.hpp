#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace decoh {

enum class ErrorCode {
  NonPositiveFrequency,
  EmptyChannelList,
  NegativeDipoleStrength,
  NegativeSeparation,
  InvalidPath,
  InvalidArgument,
  DimensionMismatch,
  QuadratureNotConverged,
  NonLinearGrowth,
  TooFewPoints,
  NoSignChange,
  InvalidCutoff,
  GridTooCoarse,
  GridMismatch,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

/// True for errors raised by numerical procedures (as opposed to bad input).
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace decoh
