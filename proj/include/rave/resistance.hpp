#pragma once

#include <cstdint>
#include <vector>

#include "rave/graph.hpp"
#include "rave/result.hpp"

namespace rave {

/// M/12 - 1/(12M), the ring's average resistance from series/parallel
/// reduction. M = 1 gives 0.
ResistanceResult rave_ring_exact(std::uint64_t m);

/// Spectral average resistance of the torus with the given sides (each >= 3).
/// Throws SizeExceeded when the node count exceeds opts.max_terms.
ResistanceResult rave_torus(const std::vector<std::uint64_t>& sides, ComputeOptions opts = {});

/// 2^-d * sum_{m=d..1} C(d,m) / (2m), summed with compensation, largest m first.
ResistanceResult rave_hypercube_binomial(unsigned d);

/// R(H_d) = R(H_{d-1}) / 2 + (1 - 2^-d) / (2d), R(H_0) = 0.
ResistanceResult rave_hypercube_recursive(unsigned d);

/// Spectral average resistance for any family. Explicit graphs go through a
/// dense eigensolve and throw DisconnectedGraph when more than one null mode
/// is found.
ResistanceResult rave_spectral(const GraphFamily& g, ComputeOptions opts = {});

/// Effective resistance between u and v: inject +1 at u, -1 at v, solve for
/// the potentials, return W_u - W_v.
double pairwise_reff(const GraphFamily& g, Node u, Node v);

inline constexpr std::size_t kOracleNodeLimit = 256;

/// Average resistance straight from its definition,
///   R_ave = 1/(2N^2) * sum over ordered pairs (u, v) of R_eff(u, v).
/// The loop visits unordered pairs once and doubles them, so the result is
/// sum_{u<v} R_eff(u, v) / N^2.
///
/// Potentials for every pair come from superposing one grounded solve per
/// node; nothing here touches the spectrum.
ResistanceResult rave_definition_oracle(const GraphFamily& g, unsigned threads = 0);

}  // namespace rave
