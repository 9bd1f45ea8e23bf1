#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "rave/lattice.hpp"
#include "rave/result.hpp"

namespace rave {

/// 2 - 2cos(2 pi k / m), evaluated as 4 sin^2(pi k / m) in extended
/// precision after exact rational argument reduction. Quarter, third, sixth
/// and half turns are returned exactly.
double ring_eigenvalue(std::uint64_t k, std::uint64_t m);

/// Binomial coefficient; throws Overflow when it does not fit 64 bits.
std::uint64_t binomial(unsigned n, unsigned k);

struct SpectralTerm {
  double eigenvalue;
  std::uint64_t multiplicity;
  bool null_mode;  // the (unique, for a connected graph) zero eigenvalue
};

/// Lazily enumerated Laplacian spectrum with multiplicities.
///
/// Torus spectra are never materialized; they are produced in fixed-size
/// index blocks so a consumer can split work across threads and still
/// reduce in a fixed order.
class SpectrumStream {
 public:
  static constexpr std::uint64_t kTorusBlock = std::uint64_t{1} << 15;

  /// lambda_h = sum_i (2 - 2cos(2 pi h_i / M_i)) over Z_M1 x ... x Z_Md.
  static SpectrumStream torus(const std::vector<std::uint64_t>& sides);
  /// (2m, C(d, m)) for m = 0..d.
  static SpectrumStream hypercube(unsigned d);
  /// Wraps a numerically computed ascending spectrum; values with
  /// |lambda| <= 1e-9 * lambda_max are flagged as null modes.
  static SpectrumStream from_eigenvalues(std::vector<double> ascending);

  /// Number of graph nodes N (sum of multiplicities).
  std::uint64_t node_count() const noexcept { return nodes_; }
  /// Number of (eigenvalue, multiplicity) entries the stream emits.
  std::uint64_t entry_count() const noexcept;
  std::size_t block_count() const noexcept;

  template <typename Fn>
  void for_each_in_block(std::size_t block, Fn&& fn) const {
    if (const auto* lat = std::get_if<ProductLattice>(&source_)) {
      const std::uint64_t begin = block * kTorusBlock;
      const std::uint64_t end = std::min(begin + kTorusBlock, lat->size());
      lat->for_each_in(begin, end, [&fn](std::uint64_t index, double lambda) {
        fn(SpectralTerm{lambda, 1, index == 0});
      });
    } else {
      for (const auto& t : std::get<std::vector<SpectralTerm>>(source_)) fn(t);
    }
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t b = 0; b < block_count(); ++b) for_each_in_block(b, fn);
  }

  std::vector<SpectralTerm> collect() const;

 private:
  using Source = std::variant<ProductLattice, std::vector<SpectralTerm>>;
  SpectrumStream(Source s, std::uint64_t nodes) : source_(std::move(s)), nodes_(nodes) {}

  Source source_;
  std::uint64_t nodes_;
};

SpectrumStream torus_spectrum(const std::vector<std::uint64_t>& sides);
SpectrumStream hypercube_spectrum(unsigned d);

/// (1/N) * sum over nonzero eigenvalues of multiplicity / lambda.
/// Blocks are reduced in index order, so the value is bit-identical for
/// every thread count. Throws DisconnectedSpectrum on a second null mode.
ResistanceResult spectral_rave(const SpectrumStream& s, unsigned threads = 0);

/// Number of eigenvalues with |lambda| <= 1e-9 * max|lambda|.
std::size_t null_mode_count(std::span<const double> eigenvalues);

}  // namespace rave
