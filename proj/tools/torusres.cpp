// torusres: average effective resistance of rings, tori, hypercubes and
// edge-list graphs, with sweeps, fits and invariant checks.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 computation error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rave/bounds.hpp"
#include "rave/error.hpp"
#include "rave/harness.hpp"
#include "rave/resistance.hpp"
#include "rave/spectrum.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCompute = 3;

struct Globals {
  unsigned threads = 0;
  std::uint64_t seed = 42;
  std::uint64_t max_terms = 100'000'000;

  rave::ComputeOptions compute() const { return {threads, max_terms}; }
};

struct RaveArgs {
  std::uint64_t ring = 0;
  std::vector<std::uint64_t> torus;
  int hypercube = -1;
  std::string graph;
  std::string method = "auto";
};

int cmd_rave(const RaveArgs& a, const Globals& g) {
  using namespace rave;
  const int chosen = (a.ring != 0) + !a.torus.empty() + (a.hypercube >= 0) + !a.graph.empty();
  if (chosen != 1) {
    std::cerr << "error: give exactly one of --ring, --torus, --hypercube, --graph\n";
    return kExitUsage;
  }

  const GraphFamily family = a.ring       ? GraphFamily::ring(a.ring)
                             : !a.torus.empty() ? GraphFamily::torus(a.torus)
                             : a.hypercube >= 0 ? GraphFamily::hypercube(static_cast<unsigned>(a.hypercube))
                                                : read_edge_list(a.graph);

  ResistanceResult r;
  if (a.method == "oracle") {
    r = rave_definition_oracle(family, g.threads);
  } else if (a.method == "recursion") {
    if (a.hypercube < 0) {
      std::cerr << "error: --method recursion applies to --hypercube only\n";
      return kExitUsage;
    }
    r = rave_hypercube_recursive(static_cast<unsigned>(a.hypercube));
  } else if (a.method == "spectral") {
    r = rave_spectral(family, g.compute());
  } else if (a.ring) {
    r = rave_ring_exact(a.ring);
  } else if (a.hypercube >= 0) {
    r = rave_hypercube_binomial(static_cast<unsigned>(a.hypercube));
  } else {
    if (!a.graph.empty() && family.node_count() > 500) {
      std::cerr << "warning: dense eigensolve on " << family.node_count() << " nodes may be slow\n";
    }
    r = rave_spectral(family, g.compute());
  }
  std::cout << format_double(r.value, 15) << '\n'
            << "method=" << to_string(r.method) << " terms=" << r.terms
            << " err_bound=" << format_double(r.err_bound, 3) << '\n';
  return kExitOk;
}

struct SweepArgs {
  std::string family;
  std::vector<std::uint64_t> values;
  std::uint64_t from = 0;
  std::uint64_t to = 0;
  std::uint64_t step = 1;
  std::uint64_t mult = 0;
  std::uint64_t side = 4;
  std::string out;
};

int cmd_sweep(const SweepArgs& a, const Globals& g) {
  using namespace rave;
  const auto family = parse_sweep_family(a.family);
  if (!family) {
    std::cerr << "error: unknown family '" << a.family << "'\n";
    return kExitUsage;
  }
  SweepSpec spec;
  spec.family = *family;
  spec.side = a.side;
  spec.values = a.values;
  if (spec.values.empty()) {
    if (a.to < a.from || (a.mult == 0 && a.step == 0) || a.mult == 1) {
      std::cerr << "error: need --values, or --from/--to with --step > 0 or --mult > 1\n";
      return kExitUsage;
    }
    for (std::uint64_t v = a.from; v <= a.to; v = a.mult ? v * a.mult : v + a.step) {
      spec.values.push_back(v);
      if (a.mult && v == 0) break;
    }
  }
  const auto rows = run_sweep(spec, g.compute());
  if (a.out.empty()) {
    write_csv(std::cout, rows);
  } else {
    write_csv_atomic(a.out, rows);
  }
  return kExitOk;
}

int cmd_verify(const std::string& suite_name, const rave::VerifyOptions& opts) {
  using namespace rave;
  const auto suite = parse_verify_suite(suite_name);
  if (!suite) {
    std::cerr << "error: unknown suite '" << suite_name << "'\n";
    return kExitUsage;
  }
  bool all_ok = true;
  for (const auto& c : run_verify(*suite, opts)) {
    std::cout << (c.passed ? "PASS" : "FAIL") << ' ' << c.suite << ": " << c.name << " (" << c.detail << ")\n";
    all_ok = all_ok && c.passed;
  }
  return all_ok ? kExitOk : kExitVerifyFail;
}

int cmd_fit(const std::string& model_name, const std::string& in_path) {
  using namespace rave;
  const auto model = parse_fit_model(model_name);
  if (!model) {
    std::cerr << "error: unknown model '" << model_name << "'\n";
    return kExitUsage;
  }
  std::ifstream in(in_path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + in_path);
  const auto f = fit_model(*model, read_csv(in));
  std::cout << "model=" << to_string(f.model) << " coefficient=" << format_double(f.coefficient, 10)
            << " intercept=" << format_double(f.intercept, 10) << " target=" << format_double(f.target, 10)
            << " relative_deviation=" << format_double(f.relative_deviation, 6) << " rows=" << f.rows_used << '\n';
  return kExitOk;
}

int cmd_hypercube_ad(unsigned dmax) {
  using namespace rave;
  if (dmax < 1) {
    std::cerr << "error: --dmax must be >= 1\n";
    return kExitUsage;
  }
  bool agree = true;
  std::cout << "d,a_recursive,a_direct,d_rave\n";
  for (const auto& row : hypercube_ad_table(dmax)) {
    std::cout << row.d << ',' << format_double(row.a_recursive) << ',' << format_double(row.a_direct) << ','
              << format_double(row.d_times_rave) << '\n';
    const double scale = std::max(1.0, std::abs(row.a_direct));
    agree = agree && std::abs(row.a_recursive - row.a_direct) <= 1e-12 * scale;
  }
  if (!agree) std::cerr << "error: recursion and direct sum disagree beyond 1e-12\n";
  return agree ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Average effective resistance of rings, toroidal grids and hypercubes"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  app.add_option("--threads", globals.threads, "Worker threads (0 = all cores)");
  app.add_option("--seed", globals.seed, "Seed for Monte-Carlo and random graphs")->capture_default_str();
  app.add_option("--max-terms", globals.max_terms, "Cap on enumerated spectral terms")->capture_default_str();

  RaveArgs rave_args;
  auto* rave_cmd = app.add_subcommand("rave", "Average effective resistance of one graph");
  rave_cmd->add_option("--ring", rave_args.ring, "Ring with M nodes");
  rave_cmd->add_option("--torus", rave_args.torus, "Torus sides M1,M2,...")->delimiter(',');
  rave_cmd->add_option("--hypercube", rave_args.hypercube, "Hypercube dimension d");
  rave_cmd->add_option("--graph", rave_args.graph, "Edge-list file");
  rave_cmd->add_option("--method", rave_args.method, "auto | spectral | oracle | recursion")
      ->check(CLI::IsMember({"auto", "spectral", "oracle", "recursion"}))
      ->capture_default_str();

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep written as CSV");
  sweep_cmd->add_option("--family", sweep_args.family, "ring | torus2 | torus3 | torus4 | hypercube | torusd")
      ->required();
  sweep_cmd->add_option("--values", sweep_args.values, "Explicit side lengths (or d values)")->delimiter(',');
  sweep_cmd->add_option("--from", sweep_args.from, "Range start");
  sweep_cmd->add_option("--to", sweep_args.to, "Range end (inclusive)");
  sweep_cmd->add_option("--step", sweep_args.step, "Additive step")->capture_default_str();
  sweep_cmd->add_option("--mult", sweep_args.mult, "Multiplicative step (overrides --step)");
  sweep_cmd->add_option("--m", sweep_args.side, "Fixed side length for torusd")->capture_default_str();
  sweep_cmd->add_option("--out", sweep_args.out, "Output CSV (stdout when omitted)");

  std::string suite = "all";
  rave::VerifyOptions verify_opts;
  auto* verify_cmd = app.add_subcommand("verify", "Run invariant suites");
  verify_cmd->add_option("--suite", suite, "oracle | bounds | recursion | integral | all")->capture_default_str();
  verify_cmd->add_option("--mc-samples", verify_opts.mc_samples, "Monte-Carlo samples")->capture_default_str();
  verify_cmd->add_option("--riemann-budget", verify_opts.riemann_budget, "Midpoint grid budget")
      ->capture_default_str();

  std::string model, fit_in;
  auto* fit_cmd = app.add_subcommand("fit", "Fit an asymptotic constant to sweep rows");
  fit_cmd->add_option("--model", model, "linear | log2d | inverse_d")->required();
  fit_cmd->add_option("--in", fit_in, "Sweep CSV")->required();

  unsigned dmax = 40;
  auto* ad_cmd = app.add_subcommand("hypercube-ad", "Table of the hypercube auxiliary sequence a_d");
  ad_cmd->add_option("--dmax", dmax, "Largest d")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*rave_cmd) return cmd_rave(rave_args, globals);
    if (*sweep_cmd) return cmd_sweep(sweep_args, globals);
    if (*verify_cmd) {
      verify_opts.compute = globals.compute();
      verify_opts.seed = globals.seed;
      return cmd_verify(suite, verify_opts);
    }
    if (*fit_cmd) return cmd_fit(model, fit_in);
    if (*ad_cmd) return cmd_hypercube_ad(dmax);
  } catch (const rave::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCompute;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCompute;
  }
  return kExitUsage;
}
