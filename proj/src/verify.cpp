#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "rave/bounds.hpp"
#include "rave/harness.hpp"
#include "rave/quadrature.hpp"
#include "rave/resistance.hpp"
#include "rave/spectrum.hpp"

namespace rave {

namespace {

double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

/// Tracks the worst observation of a family of checks.
struct Tally {
  Tally(std::string s, std::string n) : suite(std::move(s)), name(std::move(n)) {}

  std::string suite;
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  double worst = 0.0;
  std::string worst_case;
  std::string first_failure;

  void observe(bool ok, double margin, const std::string& label) {
    ++cases;
    if (!ok && passed) {
      passed = false;
      first_failure = label;
    }
    if (cases == 1 || margin > worst) {
      worst = margin;
      worst_case = label;
    }
  }

  CheckResult done(const std::string& margin_label) const {
    std::string detail = std::to_string(cases) + " cases, " + margin_label + " " + format_double(worst, 3);
    if (!worst_case.empty()) detail += " at " + worst_case;
    if (!passed) detail += "; first failure at " + first_failure;
    return {suite, name, passed, detail};
  }
};

void enumerate_sides(std::vector<std::uint64_t>& cur, std::uint64_t lo, std::uint64_t hi, std::uint64_t cap,
                     std::size_t max_rank, std::vector<std::vector<std::uint64_t>>& out) {
  for (std::uint64_t m = lo; m <= hi; ++m) {
    std::uint64_t prod = m;
    for (auto s : cur) prod *= s;
    if (prod > cap) break;
    cur.push_back(m);
    out.push_back(cur);
    if (cur.size() < max_rank) enumerate_sides(cur, m, hi, cap, max_rank, out);
    cur.pop_back();
  }
}

void oracle_suite(const VerifyOptions& opts, std::vector<CheckResult>& out) {
  constexpr double tol = 1e-8;
  const unsigned threads = opts.compute.threads;

  Tally tori{"oracle", "torus spectral == definition (N <= 200)"};
  std::vector<std::vector<std::uint64_t>> shapes;
  std::vector<std::uint64_t> cur;
  enumerate_sides(cur, 3, 14, 200, 4, shapes);
  for (const auto& sides : shapes) {
    const auto g = GraphFamily::torus(sides);
    const double spectral = rave_torus(sides, opts.compute).value;
    const double oracle = rave_definition_oracle(g, threads).value;
    const double d = rel_diff(spectral, oracle);
    tori.observe(d <= tol, d, g.describe());
  }
  out.push_back(tori.done("max rel diff"));

  Tally cubes{"oracle", "hypercube spectral == definition (d <= 7)"};
  for (unsigned d = 0; d <= 7; ++d) {
    const auto g = GraphFamily::hypercube(d);
    const double spectral = rave_spectral(g, opts.compute).value;
    const double oracle = rave_definition_oracle(g, threads).value;
    const double diff = rel_diff(spectral, oracle);
    cubes.observe(diff <= tol, diff, g.describe());
  }
  out.push_back(cubes.done("max rel diff"));

  Tally graphs{"oracle", "random graph spectral == definition (50 graphs, n <= 50)"};
  Tally symmetry{"oracle", "pairwise resistance symmetry"};
  Tally metric{"oracle", "pairwise resistance triangle inequality"};
  std::mt19937_64 rng(opts.seed);
  for (int i = 0; i < 50; ++i) {
    const auto n = std::uniform_int_distribution<std::size_t>(2, 50)(rng);
    const double p = std::uniform_real_distribution<double>(0.0, 0.3)(rng);
    const auto g = random_connected_graph(n, p, rng);
    const double spectral = rave_spectral(g, opts.compute).value;
    const double oracle = rave_definition_oracle(g, threads).value;
    const double diff = rel_diff(spectral, oracle);
    graphs.observe(diff <= tol, diff, g.describe());

    if (i < 10 && n >= 3) {
      const Node u = 0, v = n / 2, w = n - 1;
      const double uv = pairwise_reff(g, u, v), vu = pairwise_reff(g, v, u);
      symmetry.observe(std::abs(uv - vu) <= 1e-10, std::abs(uv - vu), g.describe());
      const double uw = pairwise_reff(g, u, w), vw = pairwise_reff(g, v, w);
      const double slack = uv + vw - uw;
      metric.observe(slack >= -1e-10, -slack, g.describe());
    }
  }
  out.push_back(graphs.done("max rel diff"));
  out.push_back(symmetry.done("max |R(u,v) - R(v,u)|"));
  out.push_back(metric.done("max violation"));
}

void bounds_suite(const VerifyOptions& opts, std::vector<CheckResult>& out) {
  const std::vector<std::uint64_t> grid{4, 5, 8, 16, 32, 64, 128};
  Tally t2{"bounds", "2-D torus sandwich on {4,5,8,16,32,64,128}^2"};
  for (auto m1 : grid) {
    for (auto m2 : grid) {
      if (m1 > m2) continue;
      auto b = bounds_torus2(static_cast<double>(m1), static_cast<double>(m2));
      b.check(rave_torus({m1, m2}, opts.compute).value);
      const double margin = std::min(*b.computed - b.lower, b.upper - *b.computed);
      t2.observe(*b.sandwich_ok, -margin, b.parameters);
    }
  }
  out.push_back(t2.done("tightest (negated) margin"));

  Tally td{"bounds", "d-torus sandwich, (M,d) in {4,5,8}x{3,4,5} + (4,6)"};
  std::vector<std::pair<std::uint64_t, unsigned>> cases;
  for (std::uint64_t m : {4, 5, 8})
    for (unsigned d : {3u, 4u, 5u}) cases.emplace_back(m, d);
  cases.emplace_back(4, 6);
  for (auto [m, d] : cases) {
    auto b = bounds_torusd(static_cast<double>(m), d);
    b.check(rave_torus(std::vector<std::uint64_t>(d, m), opts.compute).value);
    const double margin = std::min(*b.computed - b.lower, b.upper - *b.computed);
    td.observe(*b.sandwich_ok, -margin, b.parameters);
  }
  out.push_back(td.done("tightest (negated) margin"));

  Tally hc{"bounds", "hypercube sandwich, d in [2,30]"};
  for (unsigned d = 2; d <= 30; ++d) {
    auto b = bounds_hypercube(d);
    b.check(rave_hypercube_binomial(d).value);
    const double margin = std::min(*b.computed - b.lower, b.upper - *b.computed);
    hc.observe(*b.sandwich_ok, -margin, b.parameters);
  }
  out.push_back(hc.done("tightest (negated) margin"));

  // Equal sides: the log branch overtakes the constant 1/24 once ln(M)/(2 pi) > 5/8, i.e. from M = 51.
  Tally branch{"bounds", "2-D lower bound: ratio branch wins for M2/M1 >= 20 and M1 = M2 <= 50, log branch for M1 = M2 >= 51"};
  for (double m1 : {4.0, 5.0, 8.0, 16.0, 32.0, 1024.0}) {
    for (double ratio : {20.0, 32.0, 100.0}) {
      const auto b = bounds_torus2(m1, m1 * ratio);
      const double first = ratio / 12 - 1.0 / 24;
      const double second = std::log(m1) / (2 * std::numbers::pi) - ratio / 12 - 0.5;
      branch.observe(first > second && b.lower == first, second - first,
                     "M1=" + format_double(m1, 6) + ",M2=" + format_double(m1 * ratio, 6));
    }
  }
  for (double m = 4; m <= 1e12; m = m < 64 ? m + 1 : m * 4) {
    const auto b = bounds_torus2(m, m);
    const double first = 1.0 / 12 - 1.0 / 24;
    const double second = std::log(m) / (2 * std::numbers::pi) - 1.0 / 12 - 0.5;
    const bool log_wins = m >= 51;
    const bool ok = log_wins ? (second > first && b.lower == second) : (first >= second && b.lower == first);
    branch.observe(ok, log_wins ? first - second : second - first, "M1=M2=" + format_double(m, 6));
  }
  out.push_back(branch.done("worst (negated) gap"));

  Tally sc{"bounds", "2-D scaling scenarios 1 (c=4) and 3 (c=1)"};
  auto scenario = [&](int s, double c, std::uint64_t n) {
    const auto sides = scenario_sides(s, c, n);
    auto b = scenario_bounds(s, c, n);
    b.check(rave_torus({sides.m1, sides.m2}, opts.compute).value);
    const double margin = std::min(*b.computed - b.lower, b.upper - *b.computed);
    sc.observe(b.applicable && *b.sandwich_ok, -margin, b.parameters);
  };
  for (std::uint64_t n : {64, 256, 1024}) scenario(1, 4, n);
  for (std::uint64_t n : {256, 1024, 4096}) scenario(3, 1, n);
  out.push_back(sc.done("tightest (negated) margin"));

  const double r = rave_torus({4, 1024}, opts.compute).value;
  const double scaled = r * 12 * 16 / 4096;
  out.push_back({"bounds", "scenario 1 leading term: R * 12c^2 / N in [0.9, 1.1] at c=4, N=4096",
                 scaled >= 0.9 && scaled <= 1.1, "observed " + format_double(scaled, 6)});
}

void recursion_suite(const VerifyOptions& opts, std::vector<CheckResult>& out) {
  Tally br{"recursion", "hypercube binomial == recursion (d <= 63)"};
  for (unsigned d = 1; d <= 63; ++d) {
    const double diff = rel_diff(rave_hypercube_binomial(d).value, rave_hypercube_recursive(d).value);
    br.observe(diff <= 1e-12, diff, "d=" + std::to_string(d));
  }
  out.push_back(br.done("max rel diff"));

  Tally bs{"recursion", "hypercube binomial == spectral sum (d <= 30)"};
  for (unsigned d = 1; d <= 30; ++d) {
    const double diff =
        rel_diff(rave_hypercube_binomial(d).value, spectral_rave(hypercube_spectrum(d), opts.compute.threads).value);
    bs.observe(diff <= 1e-12, diff, "d=" + std::to_string(d));
  }
  out.push_back(bs.done("max rel diff"));

  const auto table = hypercube_ad_table(40);
  Tally ad{"recursion", "a_d recursion == direct sum (d <= 40)"};
  Tally above{"recursion", "a_d > 1 for d >= 3"};
  Tally falling{"recursion", "a_{d+1} < a_d for d >= 5"};
  Tally trend{"recursion", "d R(H_d) in [1.0, 1.2] and nonincreasing on [10, 40]"};
  for (const auto& row : table) {
    const double diff = rel_diff(row.a_recursive, row.a_direct);
    ad.observe(diff <= 1e-12, diff, "d=" + std::to_string(row.d));
    if (row.d >= 3) above.observe(row.a_recursive > 1, 1 - row.a_recursive, "d=" + std::to_string(row.d));
    if (row.d >= 5 && row.d + 1 < table.size()) {
      const double next = table[row.d + 1].a_recursive;
      falling.observe(next < row.a_recursive, next - row.a_recursive, "d=" + std::to_string(row.d));
    }
    if (row.d >= 10) {
      bool ok = row.d_times_rave >= 1.0 && row.d_times_rave <= 1.2;
      if (row.d > 10) ok = ok && row.d_times_rave <= table[row.d - 1].d_times_rave;
      trend.observe(ok, row.d_times_rave, "d=" + std::to_string(row.d));
    }
  }
  out.push_back(ad.done("max rel diff"));
  out.push_back(above.done("worst 1 - a_d"));
  out.push_back(falling.done("worst a_{d+1} - a_d"));
  out.push_back(trend.done("max d R(H_d)"));
}

void integral_suite(const VerifyOptions& opts, std::vector<CheckResult>& out) {
  const unsigned threads = opts.compute.threads;
  Tally sandwich{"integral", "integral sandwich [1/(4d), 4/d] for d in [3,8], both estimators"};
  std::vector<IntegralEstimate> riemann(9);
  for (unsigned d = 3; d <= 8; ++d) {
    riemann[d] = estimate_integral(d, IntegralMethod::RiemannRefined, opts.riemann_budget, opts.seed, threads);
    for (const auto& e : {riemann[d], estimate_integral(d, IntegralMethod::MonteCarlo, opts.mc_samples,
                                                        opts.seed, threads)}) {
      const auto b = bounds_integral(d);
      const bool ok = e.value - e.err >= b.lower && e.value + e.err <= b.upper;
      const double margin = std::min(e.value - e.err - b.lower, b.upper - e.value - e.err);
      sandwich.observe(ok, -margin, "d=" + std::to_string(d) + " " + std::string(to_string(e.method)));
    }
  }
  out.push_back(sandwich.done("tightest (negated) margin"));

  Tally dom{"integral", "interior sum <= integral estimate + err, M in {4,8,16}, m in {3,4}"};
  for (unsigned m : {3u, 4u}) {
    for (std::uint64_t side : {4, 8, 16}) {
      const double s = interior_sum(side, m, opts.compute);
      const double bound = riemann[m].value + riemann[m].err;
      dom.observe(s <= bound, s - bound, "M=" + std::to_string(side) + ",m=" + std::to_string(m));
    }
  }
  out.push_back(dom.done("worst (sum - bound)"));

  Tally conv{"integral", "|R(T_{M^3}) - I_3| nonincreasing along M = 8, 16, 32"};
  double prev = INFINITY;
  for (std::uint64_t side : {8, 16, 32}) {
    const double gap = std::abs(rave_torus({side, side, side}, opts.compute).value - riemann[3].value);
    conv.observe(gap <= prev, gap, "M=" + std::to_string(side));
    prev = gap;
  }
  out.push_back(conv.done("largest gap"));
}

}  // namespace

std::optional<VerifySuite> parse_verify_suite(std::string_view name) {
  if (name == "oracle") return VerifySuite::Oracle;
  if (name == "bounds") return VerifySuite::Bounds;
  if (name == "recursion") return VerifySuite::Recursion;
  if (name == "integral") return VerifySuite::Integral;
  if (name == "all") return VerifySuite::All;
  return std::nullopt;
}

std::vector<CheckResult> run_verify(VerifySuite suite, const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  const bool all = suite == VerifySuite::All;
  if (all || suite == VerifySuite::Oracle) oracle_suite(opts, out);
  if (all || suite == VerifySuite::Bounds) bounds_suite(opts, out);
  if (all || suite == VerifySuite::Recursion) recursion_suite(opts, out);
  if (all || suite == VerifySuite::Integral) integral_suite(opts, out);
  return out;
}

}  // namespace rave
