// asgo: command-line front end for runs, suites, profiles, sampling studies
// and bound calculations. See README.md for usage.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "asgo/bench.hpp"
#include "asgo/bounds.hpp"
#include "asgo/drivers.hpp"

namespace {

using namespace asgo;

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  std::string grad = "analytic";
  int dim = 100;
  double eps = 1e-3;
};

struct SolverFlags {
  std::optional<int> starts;
  std::optional<double> grad_tol;
  std::optional<double> start_range;

  void apply(SolverOptions& s) const {
    if (starts) s.n_starts = *starts;
    if (grad_tol) s.grad_tol = *grad_tol;
    if (start_range) s.start_halfwidth = *start_range / 2.0;
  }
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
  cmd->add_option("--starts", f.starts, "Multistart count (default min(200, 10d))");
  cmd->add_option("--grad-tol", f.grad_tol, "Local solver gradient tolerance (default 1e-8)");
  cmd->add_option("--start-range", f.start_range,
                  "Total width of the start box per coordinate (default 2)");
}

BaseFunction resolve_function(const std::string& name, std::optional<double> alpha) {
  if (alpha) return alpha_easom(*alpha);
  return find_function(name);
}

// Writes to --out when given, otherwise to stdout.
template <class Write>
void with_output(const std::string& path, Write&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    if (!std::cout) throw std::runtime_error("write to stdout failed");
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write(out);
  out.close();
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string domain_string(const BaseFunction& f) {
  std::ostringstream s;
  for (std::size_t i = 0; i < f.domain.size(); ++i)
    s << (i ? " " : "") << format_double(f.domain[i].lo) << ':' << format_double(f.domain[i].hi);
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active-subspace global optimization toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Seed for objectives and algorithms");
  app.add_option("--out", g.out, "Output file (default stdout)");
  app.add_option("--grad", g.grad, "Gradient mode: analytic or fd")->check(CLI::IsMember({"analytic", "fd"}));
  app.add_option("--dim", g.dim, "Ambient dimension D")->check(CLI::PositiveNumber);
  app.add_option("--eps", g.eps, "Success tolerance")->check(CLI::PositiveNumber);

  // run
  auto* run_cmd = app.add_subcommand("run", "Run one algorithm on one embedded function");
  std::string run_func, run_alg = "asm-1";
  std::optional<double> run_alpha;
  std::optional<int> run_M, run_max_emb;
  bool run_oracle = false, run_raw = false;
  SolverFlags run_solver;
  run_cmd->add_option("--func", run_func, "Function name (see list-functions)");
  run_cmd->add_option("--alpha", run_alpha, "Use alpha-Easom with this alpha instead of --func");
  run_cmd->add_option("--algorithm", run_alg, "asm-go, a-asm, asm-1, a-rego, rego-1, no-embedding");
  run_cmd->add_option("--M", run_M, "Samples (asm-1) or embedding dimension (rego-1); default d_e");
  run_cmd->add_option("--max-embeddings", run_max_emb, "Embedding cap for adaptive algorithms");
  run_cmd->add_flag("--oracle", run_oracle, "asm-1 with the exact effective basis");
  run_cmd->add_flag("--raw-cost", run_raw, "Charge one unit per gradient instead of D + 1");
  add_solver_flags(run_cmd, run_solver);

  // suite
  auto* suite_cmd = app.add_subcommand("suite", "Run a grid of functions x D x algorithms x seeds");
  std::string suite_config, suite_records;
  std::vector<std::string> suite_funcs, suite_algs;
  std::vector<int> suite_dims;
  std::vector<std::uint64_t> suite_seeds;
  SolverFlags suite_solver;
  suite_cmd->add_option("--config", suite_config, "JSON suite definition");
  suite_cmd->add_option("--funcs", suite_funcs, "Function names (default all 16)")->delimiter(',');
  suite_cmd->add_option("--algorithms", suite_algs, "Algorithm names (default all)")->delimiter(',');
  suite_cmd->add_option("--dims", suite_dims, "Ambient dimensions (default --dim)")->delimiter(',');
  suite_cmd->add_option("--seeds", suite_seeds, "Seeds (default --seed)")->delimiter(',');
  suite_cmd->add_option("--records", suite_records, "Also write run records as JSONL here");
  add_solver_flags(suite_cmd, suite_solver);

  // profile
  auto* profile_cmd = app.add_subcommand("profile", "Performance profiles from a results CSV");
  std::string profile_in, profile_metric = "evals";
  profile_cmd->add_option("--in", profile_in, "Results CSV written by suite")->required();
  profile_cmd->add_option("--metric", profile_metric, "evals or time")
      ->check(CLI::IsMember({"evals", "time"}));

  // sampling
  auto* sampling_cmd = app.add_subcommand("sampling", "Minimum samples to recover d_e, per seed");
  std::string sampling_func, sampling_rho = "normal";
  std::optional<double> sampling_alpha;
  int sampling_max_M = 200, sampling_seeds = 5;
  double box_lo = -1.0, box_hi = 1.0;
  sampling_cmd->add_option("--func", sampling_func, "Function name");
  sampling_cmd->add_option("--alpha", sampling_alpha, "Use alpha-Easom with this alpha");
  sampling_cmd->add_option("--max-M", sampling_max_M, "Largest M tried")->check(CLI::PositiveNumber);
  sampling_cmd->add_option("--n-seeds", sampling_seeds, "Seeds --seed .. --seed + n - 1")
      ->check(CLI::PositiveNumber);
  sampling_cmd->add_option("--rho", sampling_rho, "normal or uniform")
      ->check(CLI::IsMember({"normal", "uniform"}));
  sampling_cmd->add_option("--lo", box_lo, "Uniform box lower bound");
  sampling_cmd->add_option("--hi", box_hi, "Uniform box upper bound");

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "Sampling and iteration bounds");
  double b_l1 = 1, b_lde = 1, b_L = 1, b_alpha = 0.1, b_xi = 0.9, b_gamma = 1, b_tau = 0;
  int b_de = 1;
  bounds_cmd->add_option("--lambda1", b_l1, "Largest eigenvalue of C")->required();
  bounds_cmd->add_option("--lambda-de", b_lde, "d_e-th eigenvalue of C")->required();
  bounds_cmd->add_option("--L", b_L, "Gradient norm bound")->required();
  bounds_cmd->add_option("--de", b_de, "Effective dimension")->required();
  bounds_cmd->add_option("--alpha", b_alpha, "Failure probability for M (default 0.1)");
  bounds_cmd->add_option("--xi", b_xi, "Target success probability for K_xi (default 0.9)");
  bounds_cmd->add_option("--gamma", b_gamma, "Subproblem solver success probability (default 1)");
  bounds_cmd->add_option("--tau", b_tau, "Relative eigenvalue perturbation in M (default 0)");

  auto* list_cmd = app.add_subcommand("list-functions", "Catalogue as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const GradMode mode = parse_grad_mode(g.grad);

    if (*run_cmd) {
      if (run_func.empty() && !run_alpha) throw std::invalid_argument("run: --func or --alpha is required");
      const EmbeddedObjective obj = make_embedded(resolve_function(run_func, run_alpha), g.dim, g.seed);
      AlgorithmConfig cfg;
      cfg.algorithm = parse_algorithm(run_alg);
      cfg.grad_mode = mode;
      cfg.eps = g.eps;
      cfg.seed = g.seed;
      cfg.M = run_M;
      cfg.max_embeddings = run_max_emb;
      cfg.oracle_basis = run_oracle;
      if (run_raw) cfg.gradient_cost = GradientCost::raw;
      run_solver.apply(cfg.solver);
      const RunRecord rec = run(obj, cfg);
      with_output(g.out, [&](std::ostream& os) { os << to_json_line(rec) << '\n'; });
      return 0;
    }

    if (*suite_cmd) {
      SuiteSpec spec;
      if (!suite_config.empty()) {
        spec = load_suite_config(suite_config);
      } else {
        for (const auto& f : benchmark_table()) spec.functions.push_back(f.name);
        spec.algorithms = all_algorithms();
        spec.dims = {g.dim};
        spec.seeds = {g.seed};
        spec.config.grad_mode = mode;
        spec.config.eps = g.eps;
      }
      if (!suite_funcs.empty()) spec.functions = suite_funcs;
      if (!suite_algs.empty()) {
        spec.algorithms.clear();
        for (const auto& a : suite_algs) spec.algorithms.push_back(parse_algorithm(a));
      }
      if (!suite_dims.empty()) spec.dims = suite_dims;
      if (!suite_seeds.empty()) spec.seeds = suite_seeds;
      suite_solver.apply(spec.config.solver);

      std::vector<RunRecord> records;
      const ResultTable table = run_suite(spec, &records);
      if (g.out.empty()) {
        with_output("", [&](std::ostream& os) {
          os << "function,D,algorithm,seed,eval_units,wall_s,success,d_est\n";
          for (const auto& r : table)
            os << r.function << ',' << r.D << ',' << r.algorithm << ',' << r.seed << ','
               << format_double(r.eval_units) << ',' << format_double(r.wall_s) << ','
               << (r.success ? 1 : 0) << ',' << r.d_est << '\n';
        });
      } else {
        write_results_csv(table, g.out);
      }
      if (!suite_records.empty()) write_records_jsonl(records, suite_records);
      return 0;
    }

    if (*profile_cmd) {
      const auto curves = perf_profile(read_results_csv(profile_in), parse_profile_metric(profile_metric));
      if (g.out.empty()) {
        std::cout << "algorithm,seed,alpha,pi\n";
        for (const auto& c : curves)
          for (std::size_t i = 0; i < c.alpha.size(); ++i)
            std::cout << c.algorithm << ',' << c.seed << ',' << format_double(c.alpha[i]) << ','
                      << format_double(c.pi[i]) << '\n';
      } else {
        write_profile_csv(curves, g.out);
      }
      return 0;
    }

    if (*sampling_cmd) {
      if (sampling_func.empty() && !sampling_alpha)
        throw std::invalid_argument("sampling: --func or --alpha is required");
      const BaseFunction base = resolve_function(sampling_func, sampling_alpha);
      const SamplingDistribution rho = sampling_rho == "normal"
                                           ? SamplingDistribution::standard_normal()
                                           : SamplingDistribution::uniform(box_lo, box_hi);
      std::vector<std::uint64_t> seeds;
      for (int i = 0; i < sampling_seeds; ++i) seeds.push_back(g.seed + static_cast<std::uint64_t>(i));
      const auto rows = sampling_study(base, g.dim, sampling_max_M, seeds, rho, mode);
      if (g.out.empty()) {
        std::cout << "seed,min_M,censored,max_M\n";
        for (const auto& r : rows)
          std::cout << r.seed << ',' << (r.min_M ? std::to_string(*r.min_M) : "inf") << ','
                    << (r.min_M ? 0 : 1) << ',' << sampling_max_M << '\n';
      } else {
        write_sampling_csv(rows, sampling_max_M, g.out);
      }
      return 0;
    }

    if (*bounds_cmd) {
      const double M = sampling_lower_bound(b_l1, b_lde, b_L, b_de, b_tau, b_alpha);
      const int M0 = m_zero(b_l1, b_lde, b_L, b_de);
      const double tau = tau_const(b_l1, b_lde, b_L);
      const int K = k_xi(b_xi, tau, b_gamma, M0);
      with_output(g.out, [&](std::ostream& os) {
        os << "M,M0,tau,K_xi\n"
           << format_double(M) << ',' << M0 << ',' << format_double(tau) << ',' << K << '\n';
      });
      return 0;
    }

    if (*list_cmd) {
      with_output(g.out, [&](std::ostream& os) {
        os << "name,d_e,domain,f_star\n";
        for (const auto& f : catalogue())
          os << f.name << ',' << f.dim << ',' << domain_string(f) << ','
             << (f.f_star ? format_double(*f.f_star) : "") << '\n';
      });
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
