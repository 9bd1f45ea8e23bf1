#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace rave {

/// Neumaier-compensated accumulator.
///
/// Besides the compensated total it tracks the sum of magnitudes so a
/// rigorous-ish bound on the remaining rounding error can be reported:
/// |computed - exact| <= 2u|S| + 2n u^2 sum|x_i|  (u = unit roundoff).
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    abs_sum_ += std::abs(x);
    ++count_;
  }

  /// Folds another accumulator in, keeping its compensation term.
  void merge(const CompensatedSum& other) noexcept {
    add(other.sum_);
    add(other.comp_);
    count_ += other.count_ - 2;
    abs_sum_ += other.abs_sum_ - std::abs(other.sum_) - std::abs(other.comp_);
  }

  double value() const noexcept { return sum_ + comp_; }
  double abs_sum() const noexcept { return abs_sum_; }
  std::uint64_t count() const noexcept { return count_; }

  double error_bound() const noexcept {
    constexpr double u = std::numeric_limits<double>::epsilon() / 2;
    return 2 * u * std::abs(value()) + 2 * static_cast<double>(count_) * u * u * abs_sum_;
  }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  double abs_sum_ = 0.0;
  std::uint64_t count_ = 0;
};

}  // namespace rave
