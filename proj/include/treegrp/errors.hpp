#pragma once

#include <stdexcept>
#include <string>

namespace treegrp {

/// Error categories surfaced by the library. The CLI maps every kind to
/// exit code 2 except BudgetExceeded, which maps to 3.
enum class ErrorKind {
  SyntaxError,
  EmptyPeriod,
  UnknownLetter,
  ContextMismatch,
  BadVertex,
  DuplicateEdge,
  UnknownVertex,
  HypothesisNotMet,
  NotApplicable,
  UnknownName,
  BadPrime,
  BudgetExceeded,
  InvalidArgument,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::EmptyPeriod: return "EmptyPeriod";
    case ErrorKind::UnknownLetter: return "UnknownLetter";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::BadVertex: return "BadVertex";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::HypothesisNotMet: return "HypothesisNotMet";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::BadPrime: return "BadPrime";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace treegrp
