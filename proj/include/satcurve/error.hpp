#pragma once

#include <stdexcept>
#include <string>

namespace satcurve {

enum class ErrorKind {
  SyntaxError,
  UnknownVariable,
  NotAGerm,
  NotYRegular,
  NotReduced,
  PrecisionOverflow,
  InsufficientTruncation,
  DenominatorVanishesOnBranch,
  EmptyIdeal,
  DegenerateSample,
  RadiusTooLarge,
  FiberNotReduced,
  InvalidArgument,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::NotAGerm: return "NotAGerm";
    case ErrorKind::NotYRegular: return "NotYRegular";
    case ErrorKind::NotReduced: return "NotReduced";
    case ErrorKind::PrecisionOverflow: return "PrecisionOverflow";
    case ErrorKind::InsufficientTruncation: return "InsufficientTruncation";
    case ErrorKind::DenominatorVanishesOnBranch: return "DenominatorVanishesOnBranch";
    case ErrorKind::EmptyIdeal: return "EmptyIdeal";
    case ErrorKind::DegenerateSample: return "DegenerateSample";
    case ErrorKind::RadiusTooLarge: return "RadiusTooLarge";
    case ErrorKind::FiberNotReduced: return "FiberNotReduced";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Single exception type for the library; `kind()` tells callers which
/// precondition or domain rule failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failures carry the 0-based character offset of the offending token.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error(ErrorKind::SyntaxError, what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace satcurve
