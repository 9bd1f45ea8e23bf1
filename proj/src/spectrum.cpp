#include "rave/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rave/error.hpp"
#include "rave/graph.hpp"
#include "rave/parallel.hpp"
#include "rave/summation.hpp"

namespace rave {

double ring_eigenvalue(std::uint64_t k, std::uint64_t m) {
  if (m == 0) throw Error(ErrorKind::InvalidFamily, "ring size must be positive");
  // sin^2(pi p / m) has period m in p and is symmetric about m/2.
  std::uint64_t p = k % m;
  if (2 * p > m) p = m - p;
  if (p == 0) return 0.0;
  if (2 * p == m) return 4.0;
  if (4 * p == m) return 2.0;
  if (3 * p == m) return 3.0;
  if (6 * p == m) return 1.0;

  constexpr long double pi = std::numbers::pi_v<long double>;
  long double s;
  if (4 * p > m) {
    // sin(pi p/m) = cos(pi (m - 2p) / (2m)), argument below pi/4
    s = std::cos(pi * static_cast<long double>(m - 2 * p) / (2.0L * static_cast<long double>(m)));
  } else {
    s = std::sin(pi * static_cast<long double>(p) / static_cast<long double>(m));
  }
  return static_cast<double>(4.0L * s * s);
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (unsigned i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;  // exact: c * (n-k+i) is divisible by i at every step
    if (c > std::numeric_limits<std::uint64_t>::max()) {
      throw Error(ErrorKind::Overflow, "C(" + std::to_string(n) + "," + std::to_string(k) + ") exceeds 64 bits");
    }
  }
  return static_cast<std::uint64_t>(c);
}

SpectrumStream SpectrumStream::torus(const std::vector<std::uint64_t>& sides) {
  const auto family = GraphFamily::torus(sides);  // validates
  std::vector<std::vector<double>> tables;
  tables.reserve(sides.size());
  for (auto m : sides) {
    std::vector<double> t(m);
    for (std::uint64_t k = 0; k < m; ++k) t[k] = ring_eigenvalue(k, m);
    tables.push_back(std::move(t));
  }
  return SpectrumStream(ProductLattice(std::move(tables)), family.node_count());
}

SpectrumStream SpectrumStream::hypercube(unsigned d) {
  if (d > 63) throw Error(ErrorKind::Overflow, "hypercube dimension above 63");
  std::vector<SpectralTerm> terms;
  terms.reserve(d + 1);
  for (unsigned m = 0; m <= d; ++m) terms.push_back({2.0 * m, binomial(d, m), m == 0});
  return SpectrumStream(std::move(terms), std::uint64_t{1} << d);
}

SpectrumStream SpectrumStream::from_eigenvalues(std::vector<double> ascending) {
  double top = 0.0;
  for (double x : ascending) top = std::max(top, std::abs(x));
  std::vector<SpectralTerm> terms;
  terms.reserve(ascending.size());
  for (double x : ascending) terms.push_back({x, 1, std::abs(x) <= 1e-9 * top});
  const auto n = static_cast<std::uint64_t>(ascending.size());
  return SpectrumStream(std::move(terms), n);
}

std::uint64_t SpectrumStream::entry_count() const noexcept {
  if (const auto* lat = std::get_if<ProductLattice>(&source_)) return lat->size();
  return std::get<std::vector<SpectralTerm>>(source_).size();
}

std::size_t SpectrumStream::block_count() const noexcept {
  if (const auto* lat = std::get_if<ProductLattice>(&source_)) {
    return static_cast<std::size_t>((lat->size() + kTorusBlock - 1) / kTorusBlock);
  }
  return 1;
}

std::vector<SpectralTerm> SpectrumStream::collect() const {
  std::vector<SpectralTerm> out;
  out.reserve(static_cast<std::size_t>(entry_count()));
  for_each([&out](const SpectralTerm& t) { out.push_back(t); });
  return out;
}

SpectrumStream torus_spectrum(const std::vector<std::uint64_t>& sides) { return SpectrumStream::torus(sides); }

SpectrumStream hypercube_spectrum(unsigned d) { return SpectrumStream::hypercube(d); }

ResistanceResult spectral_rave(const SpectrumStream& s, unsigned threads) {
  struct Partial {
    CompensatedSum sum;
    std::uint64_t null_modes = 0;
  };
  const auto partials = map_blocks<Partial>(s.block_count(), threads, [&s](std::size_t b) {
    Partial p;
    s.for_each_in_block(b, [&p](const SpectralTerm& t) {
      if (t.null_mode) {
        p.null_modes += t.multiplicity;
      } else {
        p.sum.add(static_cast<double>(t.multiplicity) / t.eigenvalue);
      }
    });
    return p;
  });

  CompensatedSum total;
  std::uint64_t null_modes = 0;
  for (const auto& p : partials) {
    total.merge(p.sum);
    null_modes += p.null_modes;
  }
  if (null_modes > 1) {
    throw Error(ErrorKind::DisconnectedSpectrum,
                std::to_string(null_modes) + " zero eigenvalues: the graph is disconnected");
  }
  const double n = static_cast<double>(s.node_count());
  return ResistanceResult{total.value() / n, Method::Spectral, total.count(),
                          total.error_bound() / n + std::abs(total.value() / n) * 1.2e-16};
}

std::size_t null_mode_count(std::span<const double> eigenvalues) {
  double top = 0.0;
  for (double x : eigenvalues) top = std::max(top, std::abs(x));
  return static_cast<std::size_t>(
      std::count_if(eigenvalues.begin(), eigenvalues.end(), [top](double x) { return std::abs(x) <= 1e-9 * top; }));
}

}  // namespace rave
