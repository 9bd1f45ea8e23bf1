#pragma once

#include <cstdint>
#include <string_view>

namespace rave {

enum class Method { ClosedForm, Spectral, OracleDefinition, Recursion };

constexpr std::string_view to_string(Method m) {
  switch (m) {
    case Method::ClosedForm: return "closed_form";
    case Method::Spectral: return "spectral";
    case Method::OracleDefinition: return "oracle_definition";
    case Method::Recursion: return "recursion";
  }
  return "unknown";
}

/// An average-resistance value in ohms (unit-resistance edges).
struct ResistanceResult {
  double value = 0.0;
  Method method = Method::ClosedForm;
  std::uint64_t terms = 0;   // summands that contributed
  double err_bound = 0.0;    // accumulated rounding bound, >= 0
};

/// Knobs shared by the heavier computations.
struct ComputeOptions {
  unsigned threads = 0;                     // 0: all hardware threads
  std::uint64_t max_terms = 100'000'000;    // cap on enumerated spectral terms
};

}  // namespace rave
