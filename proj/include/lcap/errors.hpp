#pragma once

#include <stdexcept>
#include <string>

namespace lcap {

enum class ErrorKind {
  NotSquare,
  NotHermitian,
  ConvergenceFailure,
  NegativeProbability,
  NotNormalized,
  DimensionMismatch,
  InvalidDensity,
  OutputNotDensity,
  InvalidAngle,
  InvalidAlphas,
  InvalidParams,
  InvalidSpec,
  InvalidStateAtPoint,
  UnknownFigure,
  NoConvergence,
};

const char* to_string(ErrorKind kind) noexcept;

// Single exception type for the library; callers switch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lcap
