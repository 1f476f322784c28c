#pragma once

#include <stdexcept>
#include <string>

namespace frailhaz {

// Failure taxonomy for the whole library.  The split between "domain" and
// "numerical" drives the CLI exit code (2 vs 3): domain errors mean the
// *inputs* are outside the model (fix the query), numerical errors mean the
// computation could not produce a reliable answer for admissible-looking
// inputs (fix the data or the configuration).
enum class ErrorKind {
  // domain / validation
  Validation,            // precondition violated (ranges, parses, flags)
  Degenerate,            // input implies Var(U)=0 (e.g. TRR <= 1) or an empty
                         // conditioning group
  OutOfRange,            // requested value is outside the attainable range of
                         // the model (e.g. marginal HR above the family ceiling)
  UnsupportedFamily,     // operation defined for a subset of families only
  DegenerateInstrument,  // instrument contrast numerically zero
  SingularDesign,        // regression design has no variation
  // numerical
  NoRoot,                // bracketed residual has no sign change
  NonConvergence,        // iteration limit hit or estimate diverged
  TooManyFailures,       // Monte-Carlo failure fraction above threshold
  NoEvents,              // survival sample contains no events
  Separation,            // all events in one arm; partial likelihood unbounded
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Validation: return "Validation";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorKind::DegenerateInstrument: return "DegenerateInstrument";
    case ErrorKind::SingularDesign: return "SingularDesign";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::TooManyFailures: return "TooManyFailures";
    case ErrorKind::NoEvents: return "NoEvents";
    case ErrorKind::Separation: return "Separation";
  }
  return "Unknown";
}

// True for input/validation-type failures (CLI exit code 2); false for
// numerical failures (CLI exit code 3).
inline bool is_domain_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Validation:
    case ErrorKind::Degenerate:
    case ErrorKind::OutOfRange:
    case ErrorKind::UnsupportedFamily:
    case ErrorKind::DegenerateInstrument:
    case ErrorKind::SingularDesign:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_error(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) throw_error(kind, message);
}

}  // namespace frailhaz
