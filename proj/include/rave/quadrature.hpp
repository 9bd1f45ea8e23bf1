#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "rave/result.hpp"

namespace rave {

enum class IntegralMethod { RiemannRefined, MonteCarlo };

constexpr std::string_view to_string(IntegralMethod m) {
  return m == IntegralMethod::RiemannRefined ? "riemann_refined" : "monte_carlo";
}

struct IntegralEstimate {
  unsigned d = 0;
  double value = 0.0;
  double err = 0.0;  // half-width of the reported band
  IntegralMethod method = IntegralMethod::RiemannRefined;
  std::uint64_t grid = 0;     // midpoint grid side (riemann_refined)
  std::uint64_t samples = 0;  // sample count (monte_carlo)
  std::uint64_t seed = 0;
};

/// f(x) = 1 / (2d - 2 sum cos(2 pi x_i)) on [0,1]^d, evaluated as
/// 1 / sum 4 sin^2(pi x_i). Throws SingularPoint at integer lattice points.
double integrand_f(std::span<const double> x);

/// Estimates I_d, the integral of f over the unit cube, for d >= 3.
///
/// riemann_refined: midpoint sums on grids of side G and G/2 (G the largest
/// even side with G^d <= budget), combined by Richardson extrapolation with
/// the order of the origin singularity, min(d - 2, 2). err is the full gap
/// between the two grids.
///
/// monte_carlo: `budget` uniform samples drawn in fixed blocks, each block
/// seeded from (seed, block index); err is three standard errors.
IntegralEstimate estimate_integral(unsigned d, IntegralMethod method, std::uint64_t budget,
                                   std::uint64_t seed = 42, unsigned threads = 0);

inline constexpr std::uint64_t kMinIntegralBudget = 10'000;

/// (1/M^m) * sum over h in {1..M-1}^m of 1/lambda_h: the torus spectral sum
/// restricted to index vectors with every component positive.
double interior_sum(std::uint64_t m_side, unsigned m_dim, ComputeOptions opts = {});

}  // namespace rave
