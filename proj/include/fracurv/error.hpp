#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fracurv {

enum class ErrorCode {
  InvalidArgument,
  UnsupportedGeometry,
  InvalidEnvelope,
  NotSublinear,
  NonSmoothPoint,
  InvalidPoint,
  DisjointnessViolation,
  InvalidCutoff,
  HomogeneityViolation,
  InitialInclusion,
  InvalidEpsilon,
  InvalidExponent,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every recoverable failure in the library is reported as an Error carrying
/// a machine-checkable code; the CLI maps it to exit status 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fracurv
