// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// With a criterion number as the only argument, runs and reports just that one
// (criterion 11 still has to run 1-10 to compare their outputs).
//
// Every criterion is a function of the worker count that returns its verdict
// together with every number it computed, so the determinism criterion can
// rerun the others and compare those numbers bit for bit.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rave/bounds.hpp"
#include "rave/harness.hpp"
#include "rave/quadrature.hpp"
#include "rave/resistance.hpp"
#include "rave/spectrum.hpp"

using namespace rave;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool passed = true;
  std::string detail;
  std::vector<double> numbers;
  double seconds = 0.0;

  void expect(bool ok) { passed = passed && ok; }
  double keep(double x) {
    numbers.push_back(x);
    return x;
  }
};

struct Criterion {
  int id;
  const char* title;
  double time_limit;  // seconds
  std::function<Outcome(unsigned)> run;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome ring_exactness(unsigned threads) {
  Outcome o;
  double worst = 0;
  for (std::uint64_t m : {3u, 10u, 100u, 1000u, 10000u}) {
    const double v = o.keep(rave_torus({m}, {threads}).value);
    const double md = static_cast<double>(m);
    worst = std::max(worst, rel(v, md / 12 - 1 / (12 * md)));
  }
  o.expect(worst <= 1e-10);
  o.detail = fmt("worst relative error %.2e", worst);
  return o;
}

Outcome oracle_equivalence(unsigned threads) {
  Outcome o;
  double worst = 0;
  std::size_t cases = 0;
  auto compare = [&](const GraphFamily& g) {
    const double s = o.keep(rave_spectral(g, {threads}).value);
    const double d = o.keep(rave_definition_oracle(g, threads).value);
    worst = std::max(worst, rel(d, s));
    ++cases;
  };
  for (std::uint64_t m1 = 3; m1 <= 14; ++m1)
    for (std::uint64_t m2 = 3; m2 <= 14; ++m2)
      if (m1 * m2 <= 200) compare(GraphFamily::torus({m1, m2}));
  for (unsigned d = 1; d <= 7; ++d) compare(GraphFamily::hypercube(d));
  std::mt19937_64 rng(kSeed);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 2 + rng() % 49;
    compare(random_connected_graph(n, 0.1, rng));
  }
  o.expect(worst <= 1e-8);
  o.detail = fmt("%zu graphs, worst relative gap %.2e", cases, worst);
  return o;
}

Outcome torus2_sandwich(unsigned threads) {
  Outcome o;
  const std::vector<std::uint64_t> sides{4, 8, 16, 32, 64, 128};
  double margin = INFINITY;
  for (auto m1 : sides) {
    for (auto m2 : sides) {
      if (m1 > m2) continue;
      auto b = bounds_torus2(static_cast<double>(m1), static_cast<double>(m2));
      const double v = o.keep(rave_torus({m1, m2}, {threads}).value);
      b.check(v);
      o.expect(b.sandwich_ok == true);
      margin = std::min({margin, v - b.lower, b.upper - v});
    }
  }
  o.detail = fmt("21 tori, smallest margin %.4f", margin);
  return o;
}

Outcome two_d_constant(unsigned threads) {
  Outcome o;
  const auto rows = run_sweep({SweepFamily::Torus2, {64, 128, 256, 512}}, {threads});
  for (const auto& r : rows) o.keep(r.rave);
  const auto f = fit_model(FitModel::Log2d, rows);
  o.keep(f.coefficient);
  o.expect(f.relative_deviation <= 0.15);
  o.detail = fmt("slope %.6f vs %.6f, deviation %.2f%%", f.coefficient, f.target, 100 * f.relative_deviation);
  return o;
}

Outcome torusd_sandwich(unsigned threads) {
  Outcome o;
  std::vector<std::pair<std::uint64_t, unsigned>> cases;
  for (std::uint64_t m : {4u, 5u, 8u})
    for (unsigned d : {3u, 4u, 5u}) cases.emplace_back(m, d);
  cases.emplace_back(4, 6);
  double margin = INFINITY;
  for (auto [m, d] : cases) {
    auto b = bounds_torusd(static_cast<double>(m), d);
    const double v = o.keep(rave_torus(std::vector<std::uint64_t>(d, m), {threads}).value);
    b.check(v);
    o.expect(b.sandwich_ok == true);
    margin = std::min({margin, v - b.lower, b.upper - v});
  }
  o.detail = fmt("%zu tori, smallest margin %.4f", cases.size(), margin);
  return o;
}

Outcome inverse_2d_scale(unsigned threads) {
  Outcome o;
  double lo = INFINITY, hi = -INFINITY;
  for (unsigned d : {5u, 6u, 7u}) {
    for (std::uint64_t m : {3u, 4u}) {
      const double scaled = o.keep(2.0 * d * rave_torus(std::vector<std::uint64_t>(d, m), {threads}).value);
      lo = std::min(lo, scaled);
      hi = std::max(hi, scaled);
    }
  }
  o.expect(lo >= 0.7 && hi <= 1.5);
  o.detail = fmt("2d R in [%.4f, %.4f]", lo, hi);
  return o;
}

Outcome hypercube_checks(unsigned) {
  Outcome o;
  bool sandwich = true, identity = true, ad = true, trend = true;
  for (unsigned d = 2; d <= 30; ++d) {
    const double b = o.keep(rave_hypercube_binomial(d).value);
    const double r = o.keep(rave_hypercube_recursive(d).value);
    const double s = o.keep(spectral_rave(hypercube_spectrum(d), 1).value);
    auto rep = bounds_hypercube(d);
    sandwich = sandwich && rep.check(b).sandwich_ok == true;
    identity = identity && rel(r, b) <= 1e-12 && rel(s, b) <= 1e-12;
  }
  const auto rows = hypercube_ad_table(40);
  double prev = INFINITY, lo = INFINITY, hi = -INFINITY;
  for (const auto& row : rows) {
    o.keep(row.a_recursive);
    o.keep(row.d_times_rave);
    ad = ad && std::abs(row.a_recursive - row.a_direct) <= 1e-12 * std::max(1.0, row.a_direct);
    if (row.d >= 10) {
      trend = trend && row.d_times_rave >= 1.0 && row.d_times_rave <= 1.2 && row.d_times_rave <= prev;
      prev = row.d_times_rave;
      lo = std::min(lo, row.d_times_rave);
      hi = std::max(hi, row.d_times_rave);
    }
  }
  o.expect(sandwich && identity && ad && trend);
  o.detail = fmt("sandwich %s, identities %s, a_d %s, d R in [%.4f, %.4f] %s", sandwich ? "ok" : "FAIL",
                 identity ? "ok" : "FAIL", ad ? "ok" : "FAIL", lo, hi, trend ? "nonincreasing" : "FAIL");
  return o;
}

// The two estimates criteria 8 and 9 share.
IntegralEstimate riemann(unsigned d, unsigned threads) {
  return estimate_integral(d, IntegralMethod::RiemannRefined, 10'000'000, kSeed, threads);
}

Outcome integral_sandwich(unsigned threads) {
  Outcome o;
  std::ostringstream detail;
  for (unsigned d : {3u, 4u, 5u, 8u}) {
    for (auto e : {riemann(d, threads),
                   estimate_integral(d, IntegralMethod::MonteCarlo, 10'000'000, kSeed, threads)}) {
      o.keep(e.value);
      o.keep(e.err);
      const bool inside = e.value - e.err >= 1.0 / (4 * d) && e.value + e.err <= 4.0 / d;
      o.expect(inside);
      if (!inside) detail << " d=" << d << ' ' << to_string(e.method) << " outside";
    }
  }
  o.detail = "d in {3,4,5,8}, both estimators" + (detail.str().empty() ? std::string(", all bands inside") : detail.str());
  return o;
}

Outcome riemann_domination(unsigned threads) {
  Outcome o;
  double margin = INFINITY;
  for (unsigned m : {3u, 4u}) {
    const auto e = riemann(m, threads);
    o.keep(e.value);
    for (std::uint64_t side : {4u, 8u, 16u}) {
      const double s = o.keep(interior_sum(side, m, {threads}));
      o.expect(s <= e.value + e.err);
      margin = std::min(margin, e.value + e.err - s);
    }
  }
  o.detail = fmt("6 cases, smallest margin %.4f", margin);
  return o;
}

Outcome scenario_checks(unsigned threads) {
  Outcome o;
  auto sandwich = [&](int scenario, double c, std::uint64_t n) {
    auto b = scenario_bounds(scenario, c, n);
    const auto s = scenario_sides(scenario, c, n);
    b.check(o.keep(rave_torus({s.m1, s.m2}, {threads}).value));
    o.expect(b.sandwich_ok == true);
  };
  for (std::uint64_t n : {64u, 256u, 1024u}) sandwich(1, 4, n);
  for (std::uint64_t n : {256u, 1024u, 4096u}) sandwich(3, 1, n);
  const double c = 4;
  const double scaled = o.keep(rave_torus({4, 1024}, {threads}).value * 12 * c * c / 4096);
  o.expect(scaled >= 0.9 && scaled <= 1.1);
  o.detail = fmt("6 sandwiches, R 12c^2/N = %.4f at N = 4096", scaled);
  return o;
}

Outcome timed(const Criterion& c, unsigned threads) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.run(threads);
  } catch (const std::exception& e) {
    o.passed = false;
    o.detail = std::string("threw: ") + e.what();
  }
  o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return o;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](double x, double y) {
           return std::bit_cast<std::uint64_t>(x) == std::bit_cast<std::uint64_t>(y);
         });
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > 11) {
      std::fprintf(stderr, "usage: %s [criterion 1-11]\n", argv[0]);
      return 2;
    }
  }

  const std::vector<Criterion> criteria{
      {1, "ring exactness", 1, ring_exactness},
      {2, "oracle equivalence", 60, oracle_equivalence},
      {3, "2-D torus sandwich", 30, torus2_sandwich},
      {4, "2-D logarithmic constant", 60, two_d_constant},
      {5, "d-torus sandwich", 120, torusd_sandwich},
      {6, "inverse-2d scale", 60, inverse_2d_scale},
      {7, "hypercube", 1, hypercube_checks},
      {8, "integral sandwich", 120, integral_sandwich},
      {9, "Riemann domination", 60, riemann_domination},
      {10, "2-D scaling scenarios", 60, scenario_checks},
  };

  bool all = true;
  auto report = [&](int id, const char* title, bool ok, const std::string& detail) {
    std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
    std::fflush(stdout);
    all = all && ok;
  };

  // First pass with 8 workers doubles as the reference for determinism.
  std::vector<Outcome> reference;
  for (const auto& c : criteria) {
    if (only != 0 && only != 11 && only != c.id) continue;
    auto o = timed(c, 8);
    const bool fast = o.seconds < c.time_limit;
    if (only != 11) {
      report(c.id, c.title, o.passed && fast, o.detail + fmt(", %.2f s of %.0f s", o.seconds, c.time_limit));
    }
    reference.push_back(std::move(o));
  }
  if (only != 0 && only != 11) return all ? 0 : 1;

  std::vector<std::string> mismatches;
  for (unsigned threads : {1u, 2u, 8u}) {
    for (std::size_t i = 0; i < criteria.size(); ++i) {
      const auto again = timed(criteria[i], threads);
      if (!same_bits(again.numbers, reference[i].numbers)) {
        mismatches.push_back(fmt("%d@%u", criteria[i].id, threads));
      }
    }
  }
  std::string detail = "criteria 1-10 rerun with 1, 2 and 8 workers against a first 8-worker run";
  if (!mismatches.empty()) {
    detail += "; differing:";
    for (const auto& m : mismatches) detail += " " + m;
  }
  report(11, "determinism", mismatches.empty(), detail);

  std::printf("%s\n", all ? "ALL PASS" : "SOME CRITERIA FAILED");
  return all ? 0 : 1;
}
