#pragma once

#include <stdexcept>
#include <string>

namespace qu21 {

enum class ErrorKind {
  InvalidSignature,
  LabelOutOfDomain,
  PatternViolation,
  ConstraintViolation,
  WeightMismatch,
  EmptyWeightSpace,
  InconsistentLabels,
  NegativeFactorial,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSignature: return "InvalidSignature";
    case ErrorKind::LabelOutOfDomain: return "LabelOutOfDomain";
    case ErrorKind::PatternViolation: return "PatternViolation";
    case ErrorKind::ConstraintViolation: return "ConstraintViolation";
    case ErrorKind::WeightMismatch: return "WeightMismatch";
    case ErrorKind::EmptyWeightSpace: return "EmptyWeightSpace";
    case ErrorKind::InconsistentLabels: return "InconsistentLabels";
    case ErrorKind::NegativeFactorial: return "NegativeFactorial";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the ErrorKind tags.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace qu21
