#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shellax {

enum class ErrorKind {
  // input / usage
  EmptyInput,
  NotPure,
  BadLabelling,
  ParseError,
  Precondition,
  NotAFace,
  NeedsLabels,
  BadN,
  ScaleExceeded,
  DegenerateNormal,
  NonPrimeField,
  RankMismatch,
  NotThin,
  NotGraded,
  NotInApartment,
  NotOpposite,
  // structural outcomes
  Disconnected,
  NotAPartialOrder,
  NoUniqueMinimum,
  GatePropertyFails,
  NoOpposite,
  MultipleOpposites,
  NotAShelling,
  ProductUndefined,
  ReducibleChain,
  NotSimplicial,
  // internal consistency: a theorem the code relies on did not hold
  EulerMismatch,
  RealizabilityFailure,
  OracleMismatch,
  LemmaViolation,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::NotPure: return "NotPure";
    case ErrorKind::BadLabelling: return "BadLabelling";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::Precondition: return "Precondition";
    case ErrorKind::NotAFace: return "NotAFace";
    case ErrorKind::NeedsLabels: return "NeedsLabels";
    case ErrorKind::BadN: return "BadN";
    case ErrorKind::ScaleExceeded: return "ScaleExceeded";
    case ErrorKind::DegenerateNormal: return "DegenerateNormal";
    case ErrorKind::NonPrimeField: return "NonPrimeField";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::NotThin: return "NotThin";
    case ErrorKind::NotGraded: return "NotGraded";
    case ErrorKind::NotInApartment: return "NotInApartment";
    case ErrorKind::NotOpposite: return "NotOpposite";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::NotAPartialOrder: return "NotAPartialOrder";
    case ErrorKind::NoUniqueMinimum: return "NoUniqueMinimum";
    case ErrorKind::GatePropertyFails: return "GatePropertyFails";
    case ErrorKind::NoOpposite: return "NoOpposite";
    case ErrorKind::MultipleOpposites: return "MultipleOpposites";
    case ErrorKind::NotAShelling: return "NotAShelling";
    case ErrorKind::ProductUndefined: return "ProductUndefined";
    case ErrorKind::ReducibleChain: return "ReducibleChain";
    case ErrorKind::NotSimplicial: return "NotSimplicial";
    case ErrorKind::EulerMismatch: return "EulerMismatch";
    case ErrorKind::RealizabilityFailure: return "RealizabilityFailure";
    case ErrorKind::OracleMismatch: return "OracleMismatch";
    case ErrorKind::LemmaViolation: return "LemmaViolation";
  }
  return "Unknown";
}

/// True for failures that mean the library contradicted one of its own
/// theorems rather than rejecting an input.
constexpr bool is_internal(ErrorKind k) {
  return k == ErrorKind::EulerMismatch || k == ErrorKind::RealizabilityFailure ||
         k == ErrorKind::OracleMismatch || k == ErrorKind::LemmaViolation;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace shellax
