#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kraw {

enum class ErrorKind {
  ParseError,
  ShapeMismatch,
  LengthMismatch,
  DegreeMismatch,
  DimensionMismatch,
  IndexOutOfRange,
  OutOfSimplex,
  FirstColumnNotOnes,
  ProbabilitiesInvalid,
  KConditionViolated,
  DNotNormalized,
  NotOrthogonal,
  FirstColumnNotPositive,
  DdiagInvalid,
  DomainError,
  NonFinite,
  Io,
};

/// Stable kebab-case name, used in CLI messages and JSON reports.
constexpr std::string_view error_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "parse-error";
    case ErrorKind::ShapeMismatch: return "shape-mismatch";
    case ErrorKind::LengthMismatch: return "length-mismatch";
    case ErrorKind::DegreeMismatch: return "degree-mismatch";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::IndexOutOfRange: return "index-out-of-range";
    case ErrorKind::OutOfSimplex: return "out-of-simplex";
    case ErrorKind::FirstColumnNotOnes: return "first-column-not-ones";
    case ErrorKind::ProbabilitiesInvalid: return "probabilities-invalid";
    case ErrorKind::KConditionViolated: return "K-condition-violated";
    case ErrorKind::DNotNormalized: return "D-not-normalized";
    case ErrorKind::NotOrthogonal: return "not-orthogonal";
    case ErrorKind::FirstColumnNotPositive: return "first-column-not-positive";
    case ErrorKind::DdiagInvalid: return "Ddiag-invalid";
    case ErrorKind::DomainError: return "domain-error";
    case ErrorKind::NonFinite: return "non-finite";
    case ErrorKind::Io: return "io-error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_code(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kraw
