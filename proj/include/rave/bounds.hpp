#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace rave {

enum class BoundKind {
  Torus2,          // 2-D torus, 4 <= M1 <= M2
  TorusD,          // M^d torus, d >= 3, M >= 4
  Hypercube,       // d >= 2
  Integral,        // continuous approximation I_d, d >= 3
  FixedSide,       // scenario 1: M1 = c, M2 = N/c
  PowerSplit,      // scenario 2: M1 = N^(1/c), M2 = N^((c-1)/c)
  Proportional,    // scenario 3: M1 = sqrt(N/c), M2 = sqrt(cN)
};

std::string_view to_string(BoundKind t);

/// Lower/upper estimate for one parameter point. Inapplicable points keep
/// the bounds empty and explain why in `reason`.
struct BoundReport {
  std::string parameters;
  BoundKind kind{};
  bool applicable = false;
  std::string reason;
  double lower = 0.0;
  double upper = 0.0;
  std::optional<double> computed;
  std::optional<bool> sandwich_ok;

  /// Records a computed value and the verdict lower - 1e-12 <= value <= upper + 1e-12.
  BoundReport& check(double value);
};

inline constexpr double kSandwichSlack = 1e-12;

/// upper = ln(M2)/(2 pi) + M2/(12 M1) + 1
/// lower = max(M2/(12 M1) - 1/24, ln(M1)/(2 pi) - M2/(12 M1) - 1/2)
BoundReport bounds_torus2(double m1, double m2);

/// lower = 1/(4d);
/// upper = 8/(d+1) (1 + 1/M)^(d+1) + d/(4 M^(d-2)) (1/3 + (d-1) ln M / pi)
BoundReport bounds_torusd(double m, unsigned d);

/// [1/(2(d+1)), 2/(d+1)]
BoundReport bounds_hypercube(unsigned d);

/// [1/(4d), 4/d]
BoundReport bounds_integral(unsigned d);

/// Side lengths implied by a 2-D scaling scenario. Throws NonIntegralSides
/// when either side is not an integer.
struct ScenarioSides {
  std::uint64_t m1;
  std::uint64_t m2;
};
ScenarioSides scenario_sides(int scenario, double c, std::uint64_t n);

/// Bounds for the three 2-D scaling scenarios, each specialising the 2-D
/// torus estimate to a growth law for (M1, M2) at fixed N = M1 * M2.
/// Integral sides below 4 (or other parameter violations) are reported as
/// inapplicable; non-integral sides throw NonIntegralSides.
BoundReport scenario_bounds(int scenario, double c, std::uint64_t n);

}  // namespace rave
