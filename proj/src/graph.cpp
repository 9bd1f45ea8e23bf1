#include "rave/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "rave/error.hpp"

namespace rave {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::uint64_t checked_product(const std::vector<std::uint64_t>& sides) {
  std::uint64_t n = 1;
  for (auto m : sides) {
    if (__builtin_mul_overflow(n, m, &n)) {
      throw Error(ErrorKind::Overflow, "torus node count exceeds 64 bits");
    }
  }
  return n;
}

}  // namespace

GraphFamily GraphFamily::ring(std::uint64_t m) {
  if (m == 0) throw Error(ErrorKind::InvalidFamily, "ring needs M >= 1");
  if (m == 2) {
    throw Error(ErrorKind::InvalidFamily,
                "ring M = 2 is a doubled edge; describe a single edge as an explicit graph");
  }
  return GraphFamily(Ring{m});
}

GraphFamily GraphFamily::torus(std::vector<std::uint64_t> sides) {
  if (sides.empty()) throw Error(ErrorKind::InvalidFamily, "torus needs at least one side");
  for (auto m : sides) {
    if (m == 2) {
      throw Error(ErrorKind::InvalidFamily,
                  "torus side 2 gives a degenerate multigraph; use the hypercube family instead");
    }
    if (m < 3) throw Error(ErrorKind::InvalidFamily, "torus sides must be >= 3");
  }
  checked_product(sides);
  return GraphFamily(Torus{std::move(sides)});
}

GraphFamily GraphFamily::hypercube(unsigned d) {
  if (d > 63) throw Error(ErrorKind::Overflow, "hypercube dimension above 63");
  return GraphFamily(Hypercube{d});
}

GraphFamily GraphFamily::explicit_graph(std::size_t n, std::vector<std::pair<Node, Node>> edges) {
  if (n == 0) throw Error(ErrorKind::InvalidFamily, "explicit graph needs at least one node");
  std::set<std::pair<Node, Node>> seen;
  for (auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw Error(ErrorKind::InvalidFamily,
                  "edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    }
    if (u == v) throw Error(ErrorKind::InvalidFamily, "self-loop at node " + std::to_string(u));
    if (!seen.insert(std::minmax(u, v)).second) {
      throw Error(ErrorKind::InvalidFamily,
                  "duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
  }
  return GraphFamily(ExplicitGraph{n, std::move(edges)});
}

std::uint64_t GraphFamily::node_count() const {
  return std::visit(overloaded{
                        [](const Ring& r) { return r.size; },
                        [](const Torus& t) { return checked_product(t.sides); },
                        [](const Hypercube& h) { return std::uint64_t{1} << h.dimension; },
                        [](const ExplicitGraph& e) { return std::uint64_t{e.nodes}; },
                    },
                    v_);
}

std::uint64_t GraphFamily::edge_count() const {
  return std::visit(overloaded{
                        [](const Ring& r) { return r.size == 1 ? std::uint64_t{0} : r.size; },
                        [](const Torus& t) { return checked_product(t.sides) * t.sides.size(); },
                        [](const Hypercube& h) {
                          return h.dimension == 0 ? std::uint64_t{0}
                                                  : (std::uint64_t{1} << (h.dimension - 1)) * h.dimension;
                        },
                        [](const ExplicitGraph& e) { return std::uint64_t{e.edges.size()}; },
                    },
                    v_);
}

std::string GraphFamily::describe() const {
  return std::visit(overloaded{
                        [](const Ring& r) { return "ring[" + std::to_string(r.size) + "]"; },
                        [](const Torus& t) {
                          std::string s = "torus[";
                          for (std::size_t i = 0; i < t.sides.size(); ++i) {
                            if (i) s += 'x';
                            s += std::to_string(t.sides[i]);
                          }
                          return s + "]";
                        },
                        [](const Hypercube& h) { return "hypercube[" + std::to_string(h.dimension) + "]"; },
                        [](const ExplicitGraph& e) {
                          return "graph[n=" + std::to_string(e.nodes) + ",m=" + std::to_string(e.edges.size()) + "]";
                        },
                    },
                    v_);
}

GraphFamily parse_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_n = false;
  std::size_t n = 0;
  std::vector<std::pair<Node, Node>> edges;

  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": " + what);
  };

  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    if (!have_n) {
      long long count = 0;
      if (!(fields >> count) || count <= 0) fail("expected a positive node count");
      std::string extra;
      if (fields >> extra) fail("unexpected token after node count");
      n = static_cast<std::size_t>(count);
      have_n = true;
      continue;
    }
    long long u = 0, v = 0;
    if (!(fields >> u >> v) || u < 0 || v < 0) fail("expected two non-negative node ids");
    std::string extra;
    if (fields >> extra) fail("unexpected token after edge");
    edges.emplace_back(static_cast<Node>(u), static_cast<Node>(v));
  }
  if (!have_n) throw Error(ErrorKind::Parse, "missing node count");
  return GraphFamily::explicit_graph(n, std::move(edges));
}

GraphFamily read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  return parse_edge_list(in);
}

double DenseLaplacian::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

std::vector<double> DenseLaplacian::apply(std::span<const double> x) const {
  std::vector<double> y(n_, 0.0);
  for (std::size_t r = 0; r < n_; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < n_; ++c) acc += a_[r * n_ + c] * x[c];
    y[r] = acc;
  }
  return y;
}

DenseLaplacian build_laplacian(const GraphFamily& g, std::size_t dense_limit) {
  const std::uint64_t n = g.node_count();
  if (n > dense_limit) {
    throw Error(ErrorKind::SizeExceeded, g.describe() + " has " + std::to_string(n) +
                                             " nodes, above the dense limit " + std::to_string(dense_limit));
  }
  DenseLaplacian L(static_cast<std::size_t>(n));
  auto connect = [&L](std::size_t u, std::size_t v) {
    L(u, v) -= 1.0;
    L(v, u) -= 1.0;
    L(u, u) += 1.0;
    L(v, v) += 1.0;
  };

  std::visit(overloaded{
                 [&](const Ring& r) {
                   for (std::size_t i = 0; r.size > 1 && i < r.size; ++i) connect(i, (i + 1) % r.size);
                 },
                 [&](const Torus& t) {
                   // Row-major coordinates, last side fastest; link each node to its +1 neighbour per axis.
                   std::size_t stride = 1;
                   for (std::size_t axis = t.sides.size(); axis-- > 0;) {
                     const std::size_t m = t.sides[axis];
                     for (std::size_t u = 0; u < n; ++u) {
                       const std::size_t coord = (u / stride) % m;
                       const std::size_t v = u - coord * stride + ((coord + 1) % m) * stride;
                       connect(u, v);
                     }
                     stride *= m;
                   }
                 },
                 [&](const Hypercube& h) {
                   for (std::size_t u = 0; u < n; ++u) {
                     for (unsigned bit = 0; bit < h.dimension; ++bit) {
                       const std::size_t v = u ^ (std::size_t{1} << bit);
                       if (u < v) connect(u, v);
                     }
                   }
                 },
                 [&](const ExplicitGraph& e) {
                   for (auto [u, v] : e.edges) connect(u, v);
                 },
             },
             g.variant());
  return L;
}

}  // namespace rave
