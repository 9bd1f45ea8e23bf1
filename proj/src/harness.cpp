#include "rave/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "rave/bounds.hpp"
#include "rave/error.hpp"
#include "rave/resistance.hpp"

namespace rave {

std::string format_double(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s, std::size_t line_no) {
  // from_chars, unlike stod, accepts subnormal values
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size() || s.empty()) {
    throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
  return v;
}

std::uint64_t parse_count(const std::string& s, std::size_t line_no) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size() || s.empty()) {
    throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": bad count '" + s + "'");
  }
  return v;
}

std::string dims_string(const std::vector<std::uint64_t>& sides) {
  std::string s;
  for (std::size_t i = 0; i < sides.size(); ++i) {
    if (i) s += 'x';
    s += std::to_string(sides[i]);
  }
  return s;
}

SweepRow make_row(std::string family, const std::vector<std::uint64_t>& sides, const ResistanceResult& r) {
  SweepRow row;
  row.family = std::move(family);
  row.d = static_cast<unsigned>(sides.size());
  row.dims = dims_string(sides);
  row.nodes = 1;
  for (auto m : sides) row.nodes *= m;
  row.rave = r.value;
  row.method = std::string(to_string(r.method));
  return row;
}

void attach(SweepRow& row, const BoundReport& b) {
  if (!b.applicable) return;
  row.lower = b.lower;
  row.upper = b.upper;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.family << ',' << r.d << ',' << r.dims << ',' << r.nodes << ',' << format_double(r.rave) << ','
        << (r.lower ? format_double(*r.lower) : "") << ',' << (r.upper ? format_double(*r.upper) : "") << ','
        << r.method << '\n';
  }
}

std::vector<SweepRow> read_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<SweepRow> rows;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kCsvHeader) throw Error(ErrorKind::Parse, "unexpected CSV header: " + line);
      header_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 8) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected 8 fields, got " +
                                        std::to_string(f.size()));
    }
    SweepRow r;
    r.family = f[0];
    r.d = static_cast<unsigned>(parse_count(f[1], line_no));
    r.dims = f[2];
    r.nodes = parse_count(f[3], line_no);
    r.rave = parse_double(f[4], line_no);
    if (!f[5].empty()) r.lower = parse_double(f[5], line_no);
    if (!f[6].empty()) r.upper = parse_double(f[6], line_no);
    r.method = f[7];
    rows.push_back(std::move(r));
  }
  if (!header_seen) throw Error(ErrorKind::Parse, "empty CSV");
  return rows;
}

void write_csv_atomic(const std::string& path, const std::vector<SweepRow>& rows) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(ErrorKind::Parse, "cannot write " + tmp.string());
    write_csv(out, rows);
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw Error(ErrorKind::Parse, "write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

std::optional<SweepFamily> parse_sweep_family(std::string_view name) {
  if (name == "ring") return SweepFamily::Ring;
  if (name == "torus2") return SweepFamily::Torus2;
  if (name == "torus3") return SweepFamily::Torus3;
  if (name == "torus4") return SweepFamily::Torus4;
  if (name == "hypercube") return SweepFamily::Hypercube;
  if (name == "torusd") return SweepFamily::TorusD;
  return std::nullopt;
}

std::string_view to_string(SweepFamily f) {
  switch (f) {
    case SweepFamily::Ring: return "ring";
    case SweepFamily::Torus2: return "torus2";
    case SweepFamily::Torus3: return "torus3";
    case SweepFamily::Torus4: return "torus4";
    case SweepFamily::Hypercube: return "hypercube";
    case SweepFamily::TorusD: return "torusd";
  }
  return "unknown";
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, ComputeOptions opts) {
  std::vector<SweepRow> rows;
  const std::string tag(to_string(spec.family));
  for (const auto v : spec.values) {
    switch (spec.family) {
      case SweepFamily::Ring: {
        const auto r = v == 1 ? rave_ring_exact(1) : rave_torus({v}, opts);
        rows.push_back(make_row(tag, {v}, r));
        break;
      }
      case SweepFamily::Torus2:
      case SweepFamily::Torus3:
      case SweepFamily::Torus4: {
        const unsigned d = spec.family == SweepFamily::Torus2 ? 2 : spec.family == SweepFamily::Torus3 ? 3 : 4;
        const std::vector<std::uint64_t> sides(d, v);
        auto row = make_row(tag, sides, rave_torus(sides, opts));
        const double m = static_cast<double>(v);
        attach(row, d == 2 ? bounds_torus2(m, m) : bounds_torusd(m, d));
        rows.push_back(std::move(row));
        break;
      }
      case SweepFamily::Hypercube: {
        const auto d = static_cast<unsigned>(v);
        auto row = make_row(tag, std::vector<std::uint64_t>(d, 2), rave_hypercube_binomial(d));
        attach(row, bounds_hypercube(d));
        rows.push_back(std::move(row));
        break;
      }
      case SweepFamily::TorusD: {
        const auto d = static_cast<unsigned>(v);
        const std::vector<std::uint64_t> sides(d, spec.side);
        auto row = make_row(tag, sides, rave_torus(sides, opts));
        attach(row, bounds_torusd(static_cast<double>(spec.side), d));
        rows.push_back(std::move(row));
        break;
      }
    }
  }
  if (spec.family == SweepFamily::TorusD) {
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) { return a.d < b.d; });
  } else {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const SweepRow& a, const SweepRow& b) { return a.nodes < b.nodes; });
  }
  return rows;
}

std::optional<FitModel> parse_fit_model(std::string_view name) {
  if (name == "linear") return FitModel::Linear;
  if (name == "log2d") return FitModel::Log2d;
  if (name == "inverse_d") return FitModel::InverseD;
  return std::nullopt;
}

std::string_view to_string(FitModel m) {
  switch (m) {
    case FitModel::Linear: return "linear";
    case FitModel::Log2d: return "log2d";
    case FitModel::InverseD: return "inverse_d";
  }
  return "unknown";
}

std::pair<double, double> least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorKind::InsufficientData, "all abscissae coincide");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

FitResult fit_model(FitModel model, const std::vector<SweepRow>& rows) {
  const char* family = model == FitModel::Linear ? "ring" : model == FitModel::Log2d ? "torus2" : "torusd";
  std::vector<double> x, y;
  for (const auto& r : rows) {
    if (r.family != family) continue;
    switch (model) {
      case FitModel::Linear: x.push_back(static_cast<double>(r.nodes)); break;
      case FitModel::Log2d: x.push_back(std::log(static_cast<double>(r.nodes)) / 2); break;
      case FitModel::InverseD: x.push_back(1.0 / r.d); break;
    }
    y.push_back(r.rave);
  }
  if (x.size() < 4) {
    throw Error(ErrorKind::InsufficientData, "model " + std::string(to_string(model)) + " needs at least 4 " +
                                                 family + " rows, got " + std::to_string(x.size()));
  }

  FitResult f;
  f.model = model;
  f.rows_used = x.size();
  if (model == FitModel::InverseD) {
    // through the origin: a = sum(x y) / sum(x^2)
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sxy += x[i] * y[i];
      sxx += x[i] * x[i];
    }
    f.coefficient = sxy / sxx;
    f.target = 0.5;
  } else {
    std::tie(f.coefficient, f.intercept) = least_squares(x, y);
    f.target = model == FitModel::Linear ? 1.0 / 12 : 1 / (2 * std::numbers::pi);
  }
  f.relative_deviation = std::abs(f.coefficient - f.target) / f.target;
  return f;
}

std::vector<HypercubeAdRow> hypercube_ad_table(unsigned dmax) {
  std::vector<HypercubeAdRow> rows;
  double a = 0.0;
  for (unsigned d = 0; d <= dmax; ++d) {
    if (d == 1) {
      a = 0.5;  // the d = 0 step multiplies a_0 = 0 by (1 + 1/0)
    } else if (d > 1) {
      a = 0.5 * (1.0 + 1.0 / (d - 1)) * a + 0.5;
    }
    double direct = 0.0;
    for (unsigned i = 1; i <= d; ++i) direct += std::ldexp(1.0, static_cast<int>(i) - static_cast<int>(d) - 1) / i;
    direct *= d;
    const double rave = d <= 63 ? rave_hypercube_binomial(d).value : rave_hypercube_recursive(d).value;
    rows.push_back({d, a, direct, d * rave});
  }
  return rows;
}

GraphFamily random_connected_graph(std::size_t n, double extra_edge_probability, std::mt19937_64& rng) {
  std::vector<std::pair<Node, Node>> edges;
  std::vector<std::vector<bool>> present(n, std::vector<bool>(n, false));
  for (std::size_t v = 1; v < n; ++v) {
    const Node u = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
    edges.emplace_back(u, v);
    present[u][v] = present[v][u] = true;
  }
  std::bernoulli_distribution coin(extra_edge_probability);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (!present[u][v] && coin(rng)) edges.emplace_back(u, v);
    }
  }
  return GraphFamily::explicit_graph(n, std::move(edges));
}

}  // namespace rave
