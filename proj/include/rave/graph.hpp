#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace rave {

using Node = std::size_t;

struct Ring {
  std::uint64_t size;
};

struct Torus {
  std::vector<std::uint64_t> sides;
};

struct Hypercube {
  unsigned dimension;
};

struct ExplicitGraph {
  std::size_t nodes;
  std::vector<std::pair<Node, Node>> edges;
};

/// Symbolic descriptor of a structured graph with unit-resistance edges.
///
/// Construction validates the descriptor:
///  - Ring needs M >= 1; M = 2 is rejected since the two-node ring would be a
///    doubled edge (use Explicit for a single edge).
///  - Torus needs every side >= 3; side 2 is redirected to Hypercube.
///  - Hypercube dimension is capped at 63 so the node count fits 64 bits.
///  - Explicit edges must be in range, loop-free, and unique.
class GraphFamily {
 public:
  using Variant = std::variant<Ring, Torus, Hypercube, ExplicitGraph>;

  static GraphFamily ring(std::uint64_t m);
  static GraphFamily torus(std::vector<std::uint64_t> sides);
  static GraphFamily hypercube(unsigned d);
  static GraphFamily explicit_graph(std::size_t n, std::vector<std::pair<Node, Node>> edges);

  const Variant& variant() const noexcept { return v_; }
  std::uint64_t node_count() const;
  std::uint64_t edge_count() const;
  /// Short human-readable tag, e.g. "torus[4x4]".
  std::string describe() const;

 private:
  explicit GraphFamily(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Reads the edge-list text format: first significant line is the node
/// count, each further line is "u v" (0-based). Lines starting with '#' and
/// blank lines are skipped.
GraphFamily parse_edge_list(std::istream& in);
GraphFamily read_edge_list(const std::string& path);

/// Row-major dense symmetric matrix holding a unit-weight Laplacian.
class DenseLaplacian {
 public:
  explicit DenseLaplacian(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return a_[r * n_ + c]; }
  double& operator()(std::size_t r, std::size_t c) noexcept { return a_[r * n_ + c]; }
  std::span<const double> row(std::size_t r) const noexcept { return {a_.data() + r * n_, n_}; }
  std::span<const double> data() const noexcept { return a_; }

  double trace() const noexcept;
  /// L * x.
  std::vector<double> apply(std::span<const double> x) const;

 private:
  std::size_t n_;
  std::vector<double> a_;
};

inline constexpr std::size_t kDefaultDenseLimit = 4096;

DenseLaplacian build_laplacian(const GraphFamily& g, std::size_t dense_limit = kDefaultDenseLimit);

struct JacobiOptions {
  double tol = 1e-14;
  int max_sweeps = 100;
};

/// All eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi
/// rotations. Iterates until the off-diagonal Frobenius norm falls below
/// tol * ||L||_F; throws NoConvergence after max_sweeps sweeps.
std::vector<double> eigenvalues_symmetric(const DenseLaplacian& L, JacobiOptions opts = {});

/// Cholesky factorization of the Laplacian with one node grounded (its row
/// and column removed). The reduced matrix is positive definite exactly when
/// the graph is connected.
class GroundedSolver {
 public:
  GroundedSolver(const DenseLaplacian& L, Node ground);

  /// Potentials W with W[ground] = 0 and (L W)[r] = b[r] for every r != ground.
  std::vector<double> solve(std::span<const double> b) const;

  std::size_t size() const noexcept { return n_; }
  Node ground() const noexcept { return ground_; }

 private:
  std::size_t n_;
  Node ground_;
  std::vector<double> chol_;  // lower-triangular factor of the (n-1)x(n-1) system
};

std::vector<double> solve_grounded(const DenseLaplacian& L, std::span<const double> b, Node ground);

}  // namespace rave
