#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace uuvloc {

enum class ErrorCode {
  InvalidArgument,
  NonConvergence,
  ParallelRay,
  BehindCamera,
  DegenerateGeometry,
  EmptyTrajectory,
  LengthMismatch,
  InfeasibleScene,
  ParseError,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-readable code; all library failures use it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace uuvloc
