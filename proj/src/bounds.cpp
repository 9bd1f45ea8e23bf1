#include "rave/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rave/error.hpp"

namespace rave {

namespace {

constexpr double pi = std::numbers::pi;

std::string format_params(std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (auto [k, v] : kv) {
    if (!first) os << ',';
    os << k << '=' << v;
    first = false;
  }
  return os.str();
}

BoundReport inapplicable(BoundKind t, std::string params, std::string reason) {
  BoundReport r;
  r.kind = t;
  r.parameters = std::move(params);
  r.applicable = false;
  r.reason = std::move(reason);
  return r;
}

BoundReport applicable(BoundKind t, std::string params, double lower, double upper) {
  BoundReport r;
  r.kind = t;
  r.parameters = std::move(params);
  r.applicable = true;
  r.lower = lower;
  r.upper = upper;
  return r;
}

bool is_integer(double x) { return std::abs(x - std::round(x)) <= 1e-9 * std::max(1.0, std::abs(x)); }

}  // namespace

std::string_view to_string(BoundKind t) {
  switch (t) {
    case BoundKind::Torus2: return "torus2";
    case BoundKind::TorusD: return "torusd";
    case BoundKind::Hypercube: return "hypercube";
    case BoundKind::Integral: return "integral";
    case BoundKind::FixedSide: return "fixed_side";
    case BoundKind::PowerSplit: return "power_split";
    case BoundKind::Proportional: return "proportional";
  }
  return "unknown";
}

BoundReport& BoundReport::check(double value) {
  computed = value;
  if (applicable) sandwich_ok = lower - kSandwichSlack <= value && value <= upper + kSandwichSlack;
  return *this;
}

BoundReport bounds_torus2(double m1, double m2) {
  auto params = format_params({{"M1", m1}, {"M2", m2}});
  if (!(4 <= m1 && m1 <= m2)) return inapplicable(BoundKind::Torus2, params, "requires 4 <= M1 <= M2");
  const double ratio = m2 / m1;
  const double upper = std::log(m2) / (2 * pi) + ratio / 12 + 1;
  const double lower = std::max(ratio / 12 - 1.0 / 24, std::log(m1) / (2 * pi) - ratio / 12 - 0.5);
  return applicable(BoundKind::Torus2, params, lower, upper);
}

BoundReport bounds_torusd(double m, unsigned d) {
  auto params = format_params({{"M", m}, {"d", static_cast<double>(d)}});
  if (d < 3) return inapplicable(BoundKind::TorusD, params, "requires d >= 3");
  if (m < 4) return inapplicable(BoundKind::TorusD, params, "requires M >= 4");
  const double dd = d;
  const double lower = 1 / (4 * dd);
  const double upper = 8 / (dd + 1) * std::pow(1 + 1 / m, dd + 1) +
                       dd / (4 * std::pow(m, dd - 2)) * (1.0 / 3 + (dd - 1) * std::log(m) / pi);
  return applicable(BoundKind::TorusD, params, lower, upper);
}

BoundReport bounds_hypercube(unsigned d) {
  auto params = format_params({{"d", static_cast<double>(d)}});
  if (d < 2) return inapplicable(BoundKind::Hypercube, params, "requires d >= 2");
  const double dd = d;
  return applicable(BoundKind::Hypercube, params, 1 / (2 * (dd + 1)), 2 / (dd + 1));
}

BoundReport bounds_integral(unsigned d) {
  auto params = format_params({{"d", static_cast<double>(d)}});
  if (d < 3) return inapplicable(BoundKind::Integral, params, "requires d >= 3");
  const double dd = d;
  return applicable(BoundKind::Integral, params, 1 / (4 * dd), 4 / dd);
}

ScenarioSides scenario_sides(int scenario, double c, std::uint64_t n) {
  const double N = static_cast<double>(n);
  auto reject = [&](const std::string& which, double value) {
    std::ostringstream os;
    os.precision(12);
    os << "scenario " << scenario << " with c=" << c << ", N=" << n << ": " << which << " = " << value
       << " is not an integer";
    throw Error(ErrorKind::NonIntegralSides, os.str());
  };
  double m1 = 0, m2 = 0;
  switch (scenario) {
    case 1:
      m1 = c;
      m2 = N / c;
      break;
    case 2:
      m1 = std::pow(N, 1 / c);
      m2 = std::pow(N, (c - 1) / c);
      break;
    case 3:
      m1 = std::sqrt(N / c);
      m2 = std::sqrt(c * N);
      break;
    default:
      throw Error(ErrorKind::InvalidFamily, "scenario must be 1, 2 or 3");
  }
  if (!(c > 0)) throw Error(ErrorKind::InvalidFamily, "scenario constant c must be positive");
  if (!is_integer(m1)) reject("M1", m1);
  if (!is_integer(m2)) reject("M2", m2);
  const auto s1 = static_cast<std::uint64_t>(std::llround(m1));
  const auto s2 = static_cast<std::uint64_t>(std::llround(m2));
  if (s1 * s2 != n) reject("M1*M2", static_cast<double>(s1) * static_cast<double>(s2));
  return {s1, s2};
}

BoundReport scenario_bounds(int scenario, double c, std::uint64_t n) {
  const auto tag = scenario == 1   ? BoundKind::FixedSide
                   : scenario == 2 ? BoundKind::PowerSplit
                                   : BoundKind::Proportional;
  auto params = format_params({{"scenario", static_cast<double>(scenario)}, {"c", c}, {"N", static_cast<double>(n)}});
  if (scenario == 2 && !(c > 2)) return inapplicable(tag, params, "scenario 2 requires c > 2");
  const auto sides = scenario_sides(scenario, c, n);
  if (sides.m1 < 4 || sides.m2 < 4) {
    return inapplicable(tag, params,
                        "sides " + std::to_string(sides.m1) + "x" + std::to_string(sides.m2) + " need both >= 4");
  }
  if (sides.m1 > sides.m2) return inapplicable(tag, params, "requires M1 <= M2");

  const double N = static_cast<double>(n);
  const double logn = std::log(N);
  switch (scenario) {
    case 1: {
      const double lead = N / (12 * c * c);
      return applicable(tag, params, lead - 1.0 / 24, lead + logn / (2 * pi) + 1);
    }
    case 2: {
      const double lead = std::pow(N, (c - 2) / c) / 12;
      return applicable(tag, params, lead - 1.0 / 24, lead + (c - 1) / c * logn / (2 * pi) + 1);
    }
    default: {
      const double logc = std::log(c);
      return applicable(tag, params, logn / (4 * pi) - logc / (4 * pi) - c / 12 - 0.5,
                        logn / (4 * pi) + c / 12 + logc / (4 * pi) + 1);
    }
  }
}

}  // namespace rave
