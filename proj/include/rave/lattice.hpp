#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace rave {

/// Enumerates the sums  table[0][h0] + table[1][h1] + ... + table[d-1][h_{d-1}]
/// over the full product index set in row-major order (last axis fastest).
///
/// The value emitted for a given multi-index is computed the same way no
/// matter where an enumeration range starts, so partial sums over disjoint
/// ranges are reproducible bit for bit.
class ProductLattice {
 public:
  explicit ProductLattice(std::vector<std::vector<double>> tables) : tables_(std::move(tables)) {
    size_ = tables_.empty() ? 0 : 1;
    for (const auto& t : tables_) size_ *= t.size();
  }

  std::uint64_t size() const noexcept { return size_; }
  std::size_t rank() const noexcept { return tables_.size(); }
  const std::vector<double>& table(std::size_t axis) const { return tables_[axis]; }

  /// Calls fn(linear_index, value) for every index in [begin, end).
  template <typename Fn>
  void for_each_in(std::uint64_t begin, std::uint64_t end, Fn&& fn) const {
    if (begin >= end) return;
    const std::size_t d = tables_.size();
    std::vector<std::size_t> h(d);
    std::uint64_t rest = begin;
    for (std::size_t axis = d; axis-- > 0;) {
      h[axis] = static_cast<std::size_t>(rest % tables_[axis].size());
      rest /= tables_[axis].size();
    }
    const auto& last = tables_[d - 1];
    std::uint64_t index = begin;
    while (index < end) {
      double outer = 0.0;
      for (std::size_t axis = 0; axis + 1 < d; ++axis) outer += tables_[axis][h[axis]];
      for (std::size_t k = h[d - 1]; k < last.size() && index < end; ++k, ++index) {
        fn(index, outer + last[k]);
      }
      // carry into the outer axes
      h[d - 1] = 0;
      for (std::size_t axis = d - 1; axis-- > 0;) {
        if (++h[axis] < tables_[axis].size()) break;
        h[axis] = 0;
      }
    }
  }

 private:
  std::vector<std::vector<double>> tables_;
  std::uint64_t size_ = 0;
};

}  // namespace rave
