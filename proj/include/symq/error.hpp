#pragma once

#include <stdexcept>
#include <string>

namespace symq {

// Domain error kinds. The CLI maps these to exit code 1 and embeds the
// kind name in the error report.
enum class ErrorKind {
  CapExceeded,
  DegreeMismatch,
  PointOutOfRange,
  DomainCapExceeded,
  NotOrbitClosed,
  NotBlockSystem,
  LengthMismatch,
  BadShape,
  TooLarge,
  BadRange,
  ShapeMismatch,
  PromiseViolated,
  Infeasible,
  ParseError,
  Internal,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::PointOutOfRange: return "PointOutOfRange";
    case ErrorKind::DomainCapExceeded: return "DomainCapExceeded";
    case ErrorKind::NotOrbitClosed: return "NotOrbitClosed";
    case ErrorKind::NotBlockSystem: return "NotBlockSystem";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::BadShape: return "BadShape";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::BadRange: return "BadRange";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::PromiseViolated: return "PromiseViolated";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace symq
