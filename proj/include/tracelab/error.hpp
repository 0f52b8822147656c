#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tracelab {

enum class ErrorKind {
  NotSymmetric,
  NotPositiveDefinite,
  DimensionMismatch,
  NotSelfAdjoint,
  NegativeEigenvalue,
  RangeNotContained,
  BadParameter,
  DegenerateElement,
  GramNotPD,
  SolveFailure,
  NotHarmonic,
  OrderOutOfRange,
  ZeroVector,
  ConfigParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorKind::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorKind::RangeNotContained: return "RangeNotContained";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::DegenerateElement: return "DegenerateElement";
    case ErrorKind::GramNotPD: return "GramNotPD";
    case ErrorKind::SolveFailure: return "SolveFailure";
    case ErrorKind::NotHarmonic: return "NotHarmonic";
    case ErrorKind::OrderOutOfRange: return "OrderOutOfRange";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::ConfigParseError: return "ConfigParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tracelab
