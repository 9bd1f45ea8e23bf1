#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rave {

enum class ErrorKind {
  InvalidFamily,
  SizeExceeded,
  NoConvergence,
  SingularSystem,
  DisconnectedGraph,
  DisconnectedSpectrum,
  Overflow,
  NonIntegralSides,
  SingularPoint,
  DivergentIntegral,
  InsufficientBudget,
  InsufficientData,
  Parse,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidFamily: return "InvalidFamily";
    case ErrorKind::SizeExceeded: return "SizeExceeded";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorKind::DisconnectedSpectrum: return "DisconnectedSpectrum";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::NonIntegralSides: return "NonIntegralSides";
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::DivergentIntegral: return "DivergentIntegral";
    case ErrorKind::InsufficientBudget: return "InsufficientBudget";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rave
