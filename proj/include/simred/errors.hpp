#pragma once

#include <stdexcept>
#include <string>

namespace simred {

enum class ErrorKind {
  NonPositiveU,
  NonPositiveW,
  DomainViolation,
  InadmissibleConstants,
  MissingPotential,
  SingularPoint,
  StepFailure,
  FlowUnavailable,
  QuadratureFailure,
  UnverifiedField,
  PositivityLoss,
  ConfigError,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonPositiveU: return "NonPositiveU";
    case ErrorKind::NonPositiveW: return "NonPositiveW";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::InadmissibleConstants: return "InadmissibleConstants";
    case ErrorKind::MissingPotential: return "MissingPotential";
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::FlowUnavailable: return "FlowUnavailable";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::UnverifiedField: return "UnverifiedField";
    case ErrorKind::PositivityLoss: return "PositivityLoss";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace simred
