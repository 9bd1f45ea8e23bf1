#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "rave/error.hpp"
#include "rave/harness.hpp"
#include "rave/resistance.hpp"

using namespace rave;

namespace {

std::vector<std::uint64_t> range(std::uint64_t from, std::uint64_t to, std::uint64_t step = 1) {
  std::vector<std::uint64_t> v;
  for (auto x = from; x <= to; x += step) v.push_back(x);
  return v;
}

}  // namespace

TEST_CASE("csv round trip is bit exact") {
  std::mt19937_64 rng(42);
  std::vector<SweepRow> rows;
  for (int i = 0; i < 200; ++i) {
    SweepRow r;
    r.family = "torus2";
    r.d = 2;
    r.dims = "5x7";
    r.nodes = 35;
    // arbitrary finite doubles, including subnormal and huge magnitudes
    do r.rave = std::bit_cast<double>(rng()); while (!std::isfinite(r.rave));
    if (i % 3) r.lower = std::ldexp(static_cast<double>(rng() >> 11), -60);
    if (i % 5) r.upper = -1.0 / (i + 1);
    r.method = "spectral";
    rows.push_back(r);
  }
  std::stringstream buf;
  write_csv(buf, rows);
  const auto back = read_csv(buf);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(std::bit_cast<std::uint64_t>(back[i].rave) == std::bit_cast<std::uint64_t>(rows[i].rave));
    CHECK(back[i].lower.has_value() == rows[i].lower.has_value());
    if (rows[i].lower) CHECK(*back[i].lower == *rows[i].lower);
    if (rows[i].upper) CHECK(*back[i].upper == *rows[i].upper);
    CHECK(back[i].dims == rows[i].dims);
    CHECK(back[i].nodes == rows[i].nodes);
    CHECK(back[i].method == rows[i].method);
  }
}

TEST_CASE("csv parse errors") {
  std::istringstream bad_header("family,d\n");
  CHECK_THROWS_AS(read_csv(bad_header), Error);
  std::istringstream short_row(std::string(kCsvHeader) + "\nring,1,5,5\n");
  CHECK_THROWS_AS(read_csv(short_row), Error);
  std::istringstream bad_number(std::string(kCsvHeader) + "\nring,1,5,5,abc,,,spectral\n");
  CHECK_THROWS_AS(read_csv(bad_number), Error);
}

TEST_CASE("atomic csv write leaves no temporary behind") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "rave_csv_test";
  fs::create_directories(dir);
  const auto path = dir / "sweep.csv";
  const auto rows = run_sweep({SweepFamily::Ring, {3, 4, 5}});
  write_csv_atomic(path.string(), rows);
  CHECK(fs::exists(path));
  CHECK_FALSE(fs::exists(dir / "sweep.csv.tmp"));
  std::ifstream in(path);
  CHECK(read_csv(in).size() == 3);
  CHECK_THROWS(write_csv_atomic((dir / "missing" / "x.csv").string(), rows));
  fs::remove_all(dir);
}

TEST_CASE("torus2 sweep") {
  const auto rows = run_sweep({SweepFamily::Torus2, {64, 4, 16, 8, 32}});
  REQUIRE(rows.size() == 5);
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) CHECK(rows[i].rave > rows[i - 1].rave);
    CHECK(rows[i].lower.has_value());
    CHECK(*rows[i].lower <= rows[i].rave);
    CHECK(rows[i].rave <= *rows[i].upper);
    const double centred = rows[i].rave - std::log(static_cast<double>(rows[i].nodes)) / (4 * std::numbers::pi);
    lo = std::min(lo, centred);
    hi = std::max(hi, centred);
  }
  CHECK(rows.front().dims == "4x4");
  CHECK(hi - lo < 0.25);
}

TEST_CASE("hypercube sweep") {
  const auto rows = run_sweep({SweepFamily::Hypercube, range(2, 20)});
  REQUIRE(rows.size() == 19);
  for (const auto& r : rows) {
    const double scaled = r.rave * (r.d + 1);
    CHECK(scaled >= 0.5);
    CHECK(scaled <= 2.0);
    CHECK(r.nodes == (std::uint64_t{1} << r.d));
  }
  CHECK(rows[1].dims == "2x2x2");
}

TEST_CASE("torusd sweep") {
  const auto rows = run_sweep({SweepFamily::TorusD, {6, 3, 5, 4}, 4});
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].d == i + 3);
    REQUIRE(rows[i].lower.has_value());
    CHECK(*rows[i].lower <= rows[i].rave);
    CHECK(rows[i].rave <= *rows[i].upper);
  }
}

TEST_CASE("ring sweep rows carry no bounds") {
  const auto rows = run_sweep({SweepFamily::Ring, {1, 3, 12}});
  CHECK(rows[0].rave == 0.0);
  CHECK(rows[2].rave == doctest::Approx(143.0 / 144).epsilon(1e-14));
  for (const auto& r : rows) CHECK_FALSE(r.lower.has_value());
}

TEST_CASE("fits recover the asymptotic constants") {
  {
    const auto f = fit_model(FitModel::Linear, run_sweep({SweepFamily::Ring, range(100, 6400, 100)}));
    CHECK(f.target == doctest::Approx(1.0 / 12));
    CHECK(f.relative_deviation <= 0.01);
  }
  {
    const auto f = fit_model(FitModel::Log2d, run_sweep({SweepFamily::Torus2, {64, 128, 256, 512}}));
    CHECK(f.target == doctest::Approx(1 / (2 * std::numbers::pi)));
    CHECK(f.relative_deviation <= 0.15);
  }
  {
    const auto f = fit_model(FitModel::InverseD, run_sweep({SweepFamily::TorusD, range(5, 8), 4}));
    CHECK(f.target == 0.5);
    CHECK(f.intercept == 0.0);
    CHECK(f.relative_deviation <= 0.30);
  }
}

TEST_CASE("fits need four matching rows") {
  try {
    fit_model(FitModel::Linear, run_sweep({SweepFamily::Ring, {3, 4, 5}}));
    FAIL("expected InsufficientData");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientData);
  }
  // torus2 rows do not count towards a ring fit
  CHECK_THROWS_AS(fit_model(FitModel::Linear, run_sweep({SweepFamily::Torus2, {4, 5, 6, 7}})), Error);
}

TEST_CASE("least squares on an exact line") {
  const auto [a, b] = least_squares({1, 2, 3, 4}, {3, 5, 7, 9});
  CHECK(a == doctest::Approx(2));
  CHECK(b == doctest::Approx(1));
  CHECK_THROWS_AS(least_squares({2, 2, 2}, {1, 2, 3}), Error);
}

TEST_CASE("a_d sequence") {
  const auto rows = hypercube_ad_table(40);
  REQUIRE(rows.size() == 41);
  CHECK(rows[0].a_recursive == 0.0);
  CHECK(rows[0].a_direct == 0.0);
  for (const auto& r : rows) {
    CHECK(std::abs(r.a_recursive - r.a_direct) <= 1e-12 * std::max(1.0, r.a_direct));
    if (r.d >= 3) CHECK(r.a_direct > 1.0);
    if (r.d >= 5 && r.d < 40) CHECK(rows[r.d + 1].a_direct < r.a_direct);
  }
  CHECK(rows[40].d_times_rave >= 1.0);
  CHECK(rows[40].d_times_rave <= 1.05);
  // d R(H_d) from the exact sum sum_i (2^i - 1) / (i 2^(d+1)), scaled by d
  long double s = 0;
  for (int i = 1; i <= 40; ++i) s += (std::ldexp(1.0L, i) - 1) / (i * std::ldexp(1.0L, 41));
  CHECK(rows[40].d_times_rave == doctest::Approx(static_cast<double>(40 * s)).epsilon(1e-13));
}

TEST_CASE("verify suite names") {
  CHECK(parse_verify_suite("oracle") == VerifySuite::Oracle);
  CHECK(parse_verify_suite("all") == VerifySuite::All);
  CHECK_FALSE(parse_verify_suite("everything").has_value());
  CHECK(parse_sweep_family("torusd") == SweepFamily::TorusD);
  CHECK(parse_fit_model("inverse_d") == FitModel::InverseD);
}

TEST_CASE("recursion verify suite passes") {
  for (const auto& c : run_verify(VerifySuite::Recursion)) {
    INFO(c.name, " ", c.detail);
    CHECK(c.passed);
  }
}
