#pragma once

#include <stdexcept>
#include <string>

namespace sl3lab {

enum class ErrorKind {
  InvalidModulus,
  DegeneratePoint,
  OutOfRange,
  UnknownPoint,
  InvalidGenerator,
  Layout,
  DimensionMismatch,
  Numerical,
  AmbiguousRounding,
  NonConvergence,
  DegenerateCandidate,
  Precondition,
  InternalConsistency,
  EmptyInput,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so callers (and the
/// CLI) can dispatch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidModulus: return "invalid-modulus";
    case ErrorKind::DegeneratePoint: return "degenerate-point";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::UnknownPoint: return "unknown-point";
    case ErrorKind::InvalidGenerator: return "invalid-generator";
    case ErrorKind::Layout: return "layout";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::AmbiguousRounding: return "ambiguous-rounding";
    case ErrorKind::NonConvergence: return "non-convergence";
    case ErrorKind::DegenerateCandidate: return "degenerate-candidate";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::InternalConsistency: return "internal-consistency";
    case ErrorKind::EmptyInput: return "empty-input";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace sl3lab
