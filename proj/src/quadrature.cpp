#include "rave/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "rave/error.hpp"
#include "rave/lattice.hpp"
#include "rave/parallel.hpp"
#include "rave/spectrum.hpp"
#include "rave/summation.hpp"

namespace rave {

namespace {

constexpr std::uint64_t kLatticeBlock = std::uint64_t{1} << 15;
constexpr std::uint64_t kSampleBlock = std::uint64_t{1} << 16;

/// sum over the lattice of 1/value, reduced block by block in index order
CompensatedSum reciprocal_sum(const ProductLattice& lattice, unsigned threads) {
  const auto blocks = static_cast<std::size_t>((lattice.size() + kLatticeBlock - 1) / kLatticeBlock);
  const auto partials = map_blocks<CompensatedSum>(blocks, threads, [&lattice](std::size_t b) {
    CompensatedSum s;
    const std::uint64_t begin = b * kLatticeBlock;
    const std::uint64_t end = std::min(begin + kLatticeBlock, lattice.size());
    lattice.for_each_in(begin, end, [&s](std::uint64_t, double lambda) { s.add(1.0 / lambda); });
    return s;
  });
  CompensatedSum total;
  for (const auto& p : partials) total.merge(p);
  return total;
}

/// mean of f over the cell centres of a side^d grid
double midpoint_sum(unsigned d, std::uint64_t side, unsigned threads) {
  // centre (k + 1/2)/side contributes 4 sin^2(pi (2k+1) / (2 side))
  std::vector<double> table(side);
  for (std::uint64_t k = 0; k < side; ++k) table[k] = ring_eigenvalue(2 * k + 1, 2 * side);
  const ProductLattice lattice(std::vector<std::vector<double>>(d, table));
  return reciprocal_sum(lattice, threads).value() / static_cast<double>(lattice.size());
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(r, base, &r)) return std::numeric_limits<std::uint64_t>::max();
  }
  return r;
}

IntegralEstimate riemann_refined(unsigned d, std::uint64_t budget, unsigned threads) {
  std::uint64_t side = static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(budget), 1.0 / d)));
  while (ipow(side + 1, d) <= budget) ++side;
  while (side > 0 && ipow(side, d) > budget) --side;
  side -= side % 2;
  if (side < 2) {
    throw Error(ErrorKind::InsufficientBudget,
                "budget " + std::to_string(budget) + " leaves no even midpoint grid in d=" + std::to_string(d));
  }
  const double fine = midpoint_sum(d, side, threads);
  const double coarse = midpoint_sum(d, side / 2, threads);
  const unsigned order = std::min(d - 2, 2u);
  const double gap = fine - coarse;
  IntegralEstimate e;
  e.d = d;
  e.method = IntegralMethod::RiemannRefined;
  e.grid = side;
  e.value = fine + gap / (std::ldexp(1.0, static_cast<int>(order)) - 1.0);
  e.err = std::max(std::abs(gap), 1e-15 * std::abs(e.value));
  return e;
}

IntegralEstimate monte_carlo(unsigned d, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  struct Moments {
    CompensatedSum f;
    CompensatedSum f2;
  };
  const auto blocks = static_cast<std::size_t>((samples + kSampleBlock - 1) / kSampleBlock);
  const auto partials = map_blocks<Moments>(blocks, threads, [&](std::size_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(std::uint64_t{b} >> 32)};
    std::mt19937_64 engine(seq);
    const std::uint64_t count = std::min(kSampleBlock, samples - b * kSampleBlock);
    Moments m;
    std::vector<double> x(d);
    for (std::uint64_t i = 0; i < count; ++i) {
      // 53-bit uniforms offset by half a step: strictly inside (0, 1)
      for (auto& xi : x) xi = (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
      const double f = integrand_f(x);
      m.f.add(f);
      m.f2.add(f * f);
    }
    return m;
  });
  CompensatedSum f, f2;
  for (const auto& p : partials) {
    f.merge(p.f);
    f2.merge(p.f2);
  }
  const double n = static_cast<double>(samples);
  const double mean = f.value() / n;
  const double var = std::max(0.0, (f2.value() - n * mean * mean) / (n - 1));
  IntegralEstimate e;
  e.d = d;
  e.method = IntegralMethod::MonteCarlo;
  e.samples = samples;
  e.seed = seed;
  e.value = mean;
  e.err = std::max(3.0 * std::sqrt(var / n), 1e-15 * mean);
  return e;
}

}  // namespace

double integrand_f(std::span<const double> x) {
  double denom = 0.0;
  bool at_origin_image = true;
  for (double xi : x) {
    const double frac = xi - std::floor(xi);
    if (frac != 0.0) at_origin_image = false;
    const double s = std::sin(std::numbers::pi * frac);
    denom += 4.0 * s * s;
  }
  if (at_origin_image) throw Error(ErrorKind::SingularPoint, "integrand is singular at integer lattice points");
  return 1.0 / denom;
}

IntegralEstimate estimate_integral(unsigned d, IntegralMethod method, std::uint64_t budget, std::uint64_t seed,
                                   unsigned threads) {
  if (d <= 2) {
    throw Error(ErrorKind::DivergentIntegral, "the integral diverges for d = " + std::to_string(d) + " (needs d >= 3)");
  }
  if (budget < kMinIntegralBudget) {
    throw Error(ErrorKind::InsufficientBudget,
                "budget " + std::to_string(budget) + " below " + std::to_string(kMinIntegralBudget));
  }
  if (method == IntegralMethod::RiemannRefined) return riemann_refined(d, budget, threads);
  return monte_carlo(d, budget, seed, threads);
}

double interior_sum(std::uint64_t m_side, unsigned m_dim, ComputeOptions opts) {
  if (m_side < 3) throw Error(ErrorKind::InvalidFamily, "interior sum needs M >= 3");
  if (m_dim < 1) throw Error(ErrorKind::InvalidFamily, "interior sum needs m >= 1");
  const std::uint64_t terms = ipow(m_side - 1, m_dim);
  if (terms > opts.max_terms) {
    throw Error(ErrorKind::SizeExceeded,
                std::to_string(terms) + " interior terms exceed the cap of " + std::to_string(opts.max_terms));
  }
  std::vector<double> table(m_side - 1);
  for (std::uint64_t k = 1; k < m_side; ++k) table[k - 1] = ring_eigenvalue(k, m_side);
  const ProductLattice lattice(std::vector<std::vector<double>>(m_dim, table));
  const double total = reciprocal_sum(lattice, opts.threads).value();
  return total / std::pow(static_cast<double>(m_side), static_cast<double>(m_dim));
}

}  // namespace rave
