#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "rave/graph.hpp"
#include "rave/result.hpp"

namespace rave {

// ---------------------------------------------------------------------------
// Sweep rows and CSV

inline constexpr std::string_view kCsvHeader = "family,d,dims,N,rave,lower,upper,method";

struct SweepRow {
  std::string family;
  unsigned d = 0;
  std::string dims;  // "M1xM2x..."
  std::uint64_t nodes = 0;
  double rave = 0.0;
  std::optional<double> lower;
  std::optional<double> upper;
  std::string method;
};

/// Doubles are written with 17 significant digits so reading them back is exact.
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_csv(std::istream& in);
/// Writes to a sibling temporary file, then renames it over `path`.
void write_csv_atomic(const std::string& path, const std::vector<SweepRow>& rows);

enum class SweepFamily { Ring, Torus2, Torus3, Torus4, Hypercube, TorusD };

std::optional<SweepFamily> parse_sweep_family(std::string_view name);
std::string_view to_string(SweepFamily f);

struct SweepSpec {
  SweepFamily family = SweepFamily::Ring;
  /// Side lengths M for ring/torus2/torus3/torus4, dimensions d for
  /// hypercube/torusd.
  std::vector<std::uint64_t> values;
  std::uint64_t side = 4;  // fixed M for torusd
};

/// One row per parameter point, sorted by N (or by d for torusd), with
/// lower and upper bounds filled in where they apply.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, ComputeOptions opts = {});

// ---------------------------------------------------------------------------
// Asymptotic-constant fits

enum class FitModel { Linear, Log2d, InverseD };

std::optional<FitModel> parse_fit_model(std::string_view name);
std::string_view to_string(FitModel m);

struct FitResult {
  FitModel model{};
  double coefficient = 0.0;  // leading coefficient a
  double intercept = 0.0;    // b (zero for inverse_d)
  double target = 0.0;
  double relative_deviation = 0.0;
  std::size_t rows_used = 0;
};

/// linear:    rave ~ a N + b        on ring rows,   target 1/12
/// log2d:     rave ~ a ln M + b     on torus2 rows, target 1/(2 pi)
/// inverse_d: rave ~ a / d          on torusd rows, target 1/2
/// Throws InsufficientData with fewer than four matching rows.
FitResult fit_model(FitModel model, const std::vector<SweepRow>& rows);

/// Ordinary least squares y ~ a x + b.
std::pair<double, double> least_squares(const std::vector<double>& x, const std::vector<double>& y);

// ---------------------------------------------------------------------------
// Hypercube auxiliary sequence a_d = d / 2^(d+1) * sum_{i=1..d} 2^i / i

struct HypercubeAdRow {
  unsigned d = 0;
  double a_recursive = 0.0;  // a_0 = 0, a_{d+1} = (1 + 1/d) a_d / 2 + 1/2
  double a_direct = 0.0;
  double d_times_rave = 0.0;
};

std::vector<HypercubeAdRow> hypercube_ad_table(unsigned dmax);

// ---------------------------------------------------------------------------
// Invariant suites

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;  // observed margin
};

enum class VerifySuite { Oracle, Bounds, Recursion, Integral, All };

std::optional<VerifySuite> parse_verify_suite(std::string_view name);

struct VerifyOptions {
  ComputeOptions compute;
  std::uint64_t seed = 42;
  std::uint64_t mc_samples = 10'000'000;
  std::uint64_t riemann_budget = 10'000'000;
};

std::vector<CheckResult> run_verify(VerifySuite suite, const VerifyOptions& opts = {});

// ---------------------------------------------------------------------------

/// Random connected simple graph: a random spanning tree plus each remaining
/// pair with probability `extra_edge_probability`.
GraphFamily random_connected_graph(std::size_t n, double extra_edge_probability, std::mt19937_64& rng);

/// Formats a double with `digits` significant digits (printf %.Ng).
std::string format_double(double x, int digits = 17);

}  // namespace rave
