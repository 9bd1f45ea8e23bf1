#include "rave/resistance.hpp"

#include <cmath>

#include "rave/error.hpp"
#include "rave/parallel.hpp"
#include "rave/spectrum.hpp"
#include "rave/summation.hpp"

namespace rave {

ResistanceResult rave_ring_exact(std::uint64_t m) {
  if (m == 0) throw Error(ErrorKind::InvalidFamily, "ring needs M >= 1");
  const double M = static_cast<double>(m);
  // (M^2 - 1) / (12 M) keeps M = 1 at exactly zero
  const double value = (M - 1.0) * (M + 1.0) / (12.0 * M);
  return {value, Method::ClosedForm, 1, 2e-16 * value};
}

ResistanceResult rave_torus(const std::vector<std::uint64_t>& sides, ComputeOptions opts) {
  const auto family = GraphFamily::torus(sides);
  const auto n = family.node_count();
  if (n > opts.max_terms) {
    throw Error(ErrorKind::SizeExceeded, family.describe() + " needs " + std::to_string(n) +
                                             " terms, above the cap of " + std::to_string(opts.max_terms));
  }
  return spectral_rave(torus_spectrum(sides), opts.threads);
}

ResistanceResult rave_hypercube_binomial(unsigned d) {
  if (d > 63) throw Error(ErrorKind::Overflow, "hypercube dimension above 63");
  CompensatedSum sum;
  for (unsigned m = d; m >= 1; --m) {
    const double weight = std::ldexp(static_cast<double>(binomial(d, m)), -static_cast<int>(d));
    sum.add(weight / (2.0 * m));
  }
  return {sum.value(), Method::ClosedForm, sum.count(), sum.error_bound() + 4e-16 * sum.value()};
}

ResistanceResult rave_hypercube_recursive(unsigned d) {
  double r = 0.0;
  for (unsigned k = 1; k <= d; ++k) {
    r = 0.5 * r + (1.0 - std::ldexp(1.0, -static_cast<int>(k))) / (2.0 * k);
  }
  return {r, Method::Recursion, d, 4e-16 * r};
}

ResistanceResult rave_spectral(const GraphFamily& g, ComputeOptions opts) {
  if (const auto* ring = std::get_if<Ring>(&g.variant())) {
    if (ring->size == 1) return {0.0, Method::Spectral, 0, 0.0};
    return rave_torus({ring->size}, opts);
  }
  if (const auto* torus = std::get_if<Torus>(&g.variant())) return rave_torus(torus->sides, opts);
  if (const auto* cube = std::get_if<Hypercube>(&g.variant())) {
    return spectral_rave(hypercube_spectrum(cube->dimension), opts.threads);
  }
  auto eigs = eigenvalues_symmetric(build_laplacian(g));
  if (const auto zeros = null_mode_count(eigs); zeros > 1) {
    throw Error(ErrorKind::DisconnectedGraph,
                g.describe() + " has " + std::to_string(zeros) + " zero Laplacian eigenvalues");
  }
  return spectral_rave(SpectrumStream::from_eigenvalues(std::move(eigs)), opts.threads);
}

double pairwise_reff(const GraphFamily& g, Node u, Node v) {
  const auto n = g.node_count();
  if (u >= n || v >= n) throw Error(ErrorKind::InvalidFamily, "node out of range");
  if (u == v) throw Error(ErrorKind::InvalidFamily, "pairwise resistance needs two distinct nodes");
  const auto L = build_laplacian(g);
  std::vector<double> b(L.size(), 0.0);
  b[u] = 1.0;
  b[v] = -1.0;
  const auto w = solve_grounded(L, b, v);
  return w[u] - w[v];
}

ResistanceResult rave_definition_oracle(const GraphFamily& g, unsigned threads) {
  const auto n64 = g.node_count();
  if (n64 > kOracleNodeLimit) {
    throw Error(ErrorKind::SizeExceeded, g.describe() + " exceeds the oracle limit of " +
                                             std::to_string(kOracleNodeLimit) + " nodes");
  }
  const auto n = static_cast<std::size_t>(n64);
  if (n == 1) return {0.0, Method::OracleDefinition, 0, 0.0};

  const auto L = build_laplacian(g);
  const Node ground = n - 1;
  const GroundedSolver solver(L, ground);

  // potential[s] = grounded response to a unit current entering at node s;
  // the ground's own response is identically zero.
  const auto potential = map_blocks<std::vector<double>>(n, threads, [&](std::size_t s) {
    if (s == ground) return std::vector<double>(n, 0.0);
    std::vector<double> b(n, 0.0);
    b[s] = 1.0;
    return solver.solve(b);
  });

  // Injecting +1 at u and -1 at v yields potential[u] - potential[v].
  const auto rows = map_blocks<CompensatedSum>(n, threads, [&](std::size_t u) {
    CompensatedSum row;
    for (std::size_t v = u + 1; v < n; ++v) {
      const double wu = potential[u][u] - potential[v][u];
      const double wv = potential[u][v] - potential[v][v];
      row.add(wu - wv);
    }
    return row;
  });
  CompensatedSum total;
  for (const auto& row : rows) total.merge(row);

  const double nn = static_cast<double>(n) * static_cast<double>(n);
  // ordered pairs = 2 x unordered pairs, against the 1/(2N^2) prefactor
  const double value = 2.0 * total.value() / (2.0 * nn);
  return {value, Method::OracleDefinition, total.count() * 2, total.error_bound() / nn};
}

}  // namespace rave
