#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace skewbraid {

using cd = std::complex<double>;

enum class ErrorKind {
  BadDegree,
  BadInput,
  DegreeZero,
  LengthMismatch,
  NonConvergence,
  Overflow,
  Degenerate,
  SizeGuard,
  StrandCollision,
  BranchCollision,
  LetterOutOfRange,
  DegenerateProjection,
  SeparationLoss,
  BoundaryRoot,
  AllZero,
  SpecInvalid,
  NormalizationFailed,
  UnknownPreset,
  ParseError,
  NotAdmissible,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::BadDegree: return "BadDegree";
    case ErrorKind::BadInput: return "BadInput";
    case ErrorKind::DegreeZero: return "DegreeZero";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::SizeGuard: return "SizeGuard";
    case ErrorKind::StrandCollision: return "StrandCollision";
    case ErrorKind::BranchCollision: return "BranchCollision";
    case ErrorKind::LetterOutOfRange: return "LetterOutOfRange";
    case ErrorKind::DegenerateProjection: return "DegenerateProjection";
    case ErrorKind::SeparationLoss: return "SeparationLoss";
    case ErrorKind::BoundaryRoot: return "BoundaryRoot";
    case ErrorKind::AllZero: return "AllZero";
    case ErrorKind::SpecInvalid: return "SpecInvalid";
    case ErrorKind::NormalizationFailed: return "NormalizationFailed";
    case ErrorKind::UnknownPreset: return "UnknownPreset";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
  }
  return "Unknown";
}

/// Base exception for every failure raised by the library. `kind()` is the
/// machine-readable tag the CLI reports; `what()` carries the human message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Numerical failures (as opposed to rejected inputs).
  bool is_numerical() const noexcept {
    return kind_ == ErrorKind::NonConvergence || kind_ == ErrorKind::StrandCollision ||
           kind_ == ErrorKind::BranchCollision || kind_ == ErrorKind::SeparationLoss ||
           kind_ == ErrorKind::DegenerateProjection || kind_ == ErrorKind::Overflow;
  }

 private:
  ErrorKind kind_;
};

/// Root finder gave up; the last iterate is kept for inspection.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& message, int iterations, std::vector<cd> best)
      : Error(ErrorKind::NonConvergence, message), iterations_(iterations), best_(std::move(best)) {}

  int iterations() const noexcept { return iterations_; }
  const std::vector<cd>& best_iterate() const noexcept { return best_; }

 private:
  int iterations_;
  std::vector<cd> best_;
};

/// Non-autonomous iteration left the floating range at step `step`.
class OverflowError : public Error {
 public:
  OverflowError(int step, cd last_finite)
      : Error(ErrorKind::Overflow, "iterate overflowed at step " + std::to_string(step)),
        step_(step), last_finite_(last_finite) {}

  int step() const noexcept { return step_; }
  cd last_finite() const noexcept { return last_finite_; }

 private:
  int step_;
  cd last_finite_;
};

/// Two tracked strands came closer than the collision guard.
class CollisionError : public Error {
 public:
  CollisionError(ErrorKind kind, double t, const std::string& message)
      : Error(kind, message + " at t=" + std::to_string(t)), t_(t) {}

  double t() const noexcept { return t_; }

 private:
  double t_;
};

}  // namespace skewbraid
