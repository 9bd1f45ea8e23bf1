#include <algorithm>
#include <cmath>

#include "rave/error.hpp"
#include "rave/graph.hpp"

namespace rave {

std::vector<double> eigenvalues_symmetric(const DenseLaplacian& L, JacobiOptions opts) {
  if (!(opts.tol > 0.0)) throw Error(ErrorKind::InvalidFamily, "Jacobi tolerance must be positive");
  const std::size_t n = L.size();
  std::vector<double> a(L.data().begin(), L.data().end());
  auto at = [&a, n](std::size_t r, std::size_t c) -> double& { return a[r * n + c]; };

  double norm2 = 0.0;
  for (double x : a) norm2 += x * x;
  const double threshold = opts.tol * std::sqrt(norm2);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) s += 2 * at(p, q) * at(p, q);
    return std::sqrt(s);
  };

  // Round-robin ordering: each of the m-1 steps of a sweep pairs every index
  // with exactly one partner, so the step's rotations act on disjoint index
  // pairs and can be applied as one row pass and one column pass.
  const std::size_t m = n + (n % 2);  // index n is a dummy when n is odd
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;

  struct Rotation {
    std::size_t p, q;
    double c, s, t, apq, app, aqq;
  };
  std::vector<Rotation> step;
  step.reserve(m / 2);

  int sweep = 0;
  while (n > 1 && off_norm() > threshold) {
    if (sweep++ >= opts.max_sweeps) {
      throw Error(ErrorKind::NoConvergence,
                  "Jacobi did not converge in " + std::to_string(opts.max_sweeps) + " sweeps");
    }
    for (std::size_t round = 0; round + 1 < m; ++round) {
      step.clear();
      for (std::size_t i = 0; i < m / 2; ++i) {
        std::size_t p = order[i], q = order[m - 1 - i];
        if (p >= n || q >= n) continue;
        if (p > q) std::swap(p, q);
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double app = at(p, p);
        const double aqq = at(q, q);
        // entries too small to move either diagonal are dropped outright
        if (sweep > 4 && std::abs(app) + 100 * std::abs(apq) == std::abs(app) &&
            std::abs(aqq) + 100 * std::abs(apq) == std::abs(aqq)) {
          at(p, q) = at(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        step.push_back({p, q, c, t * c, t, apq, app, aqq});
      }

      // A <- J^T A: mix rows p and q
      for (const auto& r : step) {
        double* rp = &a[r.p * n];
        double* rq = &a[r.q * n];
        for (std::size_t k = 0; k < n; ++k) {
          const double x = rp[k], y = rq[k];
          rp[k] = r.c * x - r.s * y;
          rq[k] = r.s * x + r.c * y;
        }
      }
      // A <- A J: mix columns p and q, one row at a time
      for (std::size_t k = 0; k < n; ++k) {
        double* row = &a[k * n];
        for (const auto& r : step) {
          const double x = row[r.p], y = row[r.q];
          row[r.p] = r.c * x - r.s * y;
          row[r.q] = r.s * x + r.c * y;
        }
      }
      // the rotated 2x2 blocks are known in closed form
      for (const auto& r : step) {
        at(r.p, r.p) = r.app - r.t * r.apq;
        at(r.q, r.q) = r.aqq + r.t * r.apq;
        at(r.p, r.q) = at(r.q, r.p) = 0.0;
      }

      // rotate everything but the first slot
      std::rotate(order.begin() + 1, order.end() - 1, order.end());
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

GroundedSolver::GroundedSolver(const DenseLaplacian& L, Node ground) : n_(L.size()), ground_(ground) {
  if (ground >= n_) throw Error(ErrorKind::InvalidFamily, "ground node out of range");
  const std::size_t m = n_ - 1;
  auto full = [this](std::size_t i) { return i < ground_ ? i : i + 1; };

  chol_.assign(m * m, 0.0);
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n_; ++i) max_diag = std::max(max_diag, std::abs(L(i, i)));
  const double pivot_floor = 1e-10 * std::max(max_diag, 1.0);

  for (std::size_t j = 0; j < m; ++j) {
    double diag = L(full(j), full(j));
    for (std::size_t k = 0; k < j; ++k) diag -= chol_[j * m + k] * chol_[j * m + k];
    if (diag <= pivot_floor) {
      throw Error(ErrorKind::SingularSystem, "grounded Laplacian is singular: graph is disconnected");
    }
    const double ljj = std::sqrt(diag);
    chol_[j * m + j] = ljj;
    for (std::size_t i = j + 1; i < m; ++i) {
      double s = L(full(i), full(j));
      for (std::size_t k = 0; k < j; ++k) s -= chol_[i * m + k] * chol_[j * m + k];
      chol_[i * m + j] = s / ljj;
    }
  }
}

std::vector<double> GroundedSolver::solve(std::span<const double> b) const {
  if (b.size() != n_) throw Error(ErrorKind::InvalidFamily, "right-hand side has wrong length");
  const std::size_t m = n_ - 1;
  std::vector<double> y(m);
  for (std::size_t i = 0; i < m; ++i) {
    double s = b[i < ground_ ? i : i + 1];
    for (std::size_t k = 0; k < i; ++k) s -= chol_[i * m + k] * y[k];
    y[i] = s / chol_[i * m + i];
  }
  for (std::size_t i = m; i-- > 0;) {
    double s = y[i];
    for (std::size_t k = i + 1; k < m; ++k) s -= chol_[k * m + i] * y[k];
    y[i] = s / chol_[i * m + i];
  }
  std::vector<double> w(n_, 0.0);
  for (std::size_t i = 0; i < m; ++i) w[i < ground_ ? i : i + 1] = y[i];
  return w;
}

std::vector<double> solve_grounded(const DenseLaplacian& L, std::span<const double> b, Node ground) {
  return GroundedSolver(L, ground).solve(b);
}

}  // namespace rave
