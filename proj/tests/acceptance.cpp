// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.
#include <Eigen/SVD>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "asgo/bench.hpp"
#include "asgo/bounds.hpp"
#include "asgo/drivers.hpp"
#include "asgo/subspace.hpp"

using namespace asgo;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (pass) detail << "first failure: " << why << "; ";
    pass = false;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

double max_principal_sine(const Matrix& a, const Matrix& b) {
  const Eigen::JacobiSVD<Matrix> svd(a.transpose() * b);
  const double c = std::min(1.0, svd.singularValues().minCoeff());
  return std::sqrt(std::max(0.0, 1.0 - c * c));
}

// Criterion 1: rank(Ĉ) = d_e as soon as M = d_e.
Outcome exact_rank_sampling() {
  Outcome o;
  const auto t0 = Clock::now();
  for (const char* name : {"branin", "hartmann3", "shekel5", "levy", "rosenbrock", "styblinski-tang"}) {
    const auto base = find_function(name);
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto obj = make_embedded(base, 100, seed);
      Rng rng = Rng(seed).split(0x5354);
      EvalTally t;
      const auto est = estimate_C(sample_gradients(obj, base.dim, SamplingDistribution::standard_normal(),
                                                   rng, GradMode::analytic, t));
      if (est.d == base.dim) ++hits;
    }
    o.detail << name << " " << hits << "/5; ";
    if (hits < 4) o.fail(std::string(name) + " below 4/5");
  }
  const double s = seconds_since(t0);
  o.detail << "time " << s << " s";
  if (s >= 30.0) o.fail("over 30 s");
  return o;
}

// Criterion 2: P[Ĉ = 0] = (1/2)^M for uniform samples on [-2, 2].
Outcome polynomial_uniform() {
  Outcome o;
  const auto poly = make_embedded(polynomial_example(), 1, 0);
  const int trials = 100000;
  for (int M = 1; M <= 3; ++M) {
    const auto counts = rank_counts(poly, M, trials, SamplingDistribution::uniform(-2, 2), Rng(100 + M));
    const double p = static_cast<double>(counts[0]) / trials;
    const double expect = std::pow(0.5, M);
    const double sigma = std::sqrt(expect * (1 - expect) / trials);
    o.detail << "M=" << M << " " << p << " (expect " << expect << ", 3sd " << 3 * sigma << "); ";
    if (std::abs(p - expect) > 3 * sigma) o.fail("M=" + std::to_string(M));
  }
  return o;
}

// Criterion 3: P[Ĉ != 0] ≈ 1 - 0.317^M for standard-normal samples.
Outcome polynomial_normal() {
  Outcome o;
  const auto poly = make_embedded(polynomial_example(), 1, 0);
  const int trials = 100000;
  for (int M = 1; M <= 5; ++M) {
    const double p = empirical_rank_probability(poly, M, trials, SamplingDistribution::standard_normal(),
                                                Rng(200 + M));
    const double expect = 1 - std::pow(0.317, M);
    o.detail << "M=" << M << " " << p << " (expect " << expect << "); ";
    if (std::abs(p - expect) > 0.01) o.fail("M=" + std::to_string(M));
  }
  return o;
}

// Criterion 4: bound calculators.
Outcome bound_calculators() {
  Outcome o;
  for (double alpha : {0.5, 0.1, 0.01, 1e-6}) {
    for (double L : {0.3, 1.0, 7.0}) {
      const double got = sampling_lower_bound(L * L, L * L, L, 1, 0.0, alpha);
      if (!rel_close(got, 4 * std::log(1 / alpha), 1e-12)) o.fail("reduction at alpha=" + std::to_string(alpha));
    }
  }
  for (double l1 : {0.5, 1.0, 9.0})
    if (m_zero(l1, l1 / 3, 2.0, 1) != 1) o.fail("m_zero with d_e = 1");

  const double l1 = 3.2, lk = 0.45, L = 2.1;
  for (double beta : {0.01, 1.0, 100.0}) {
    const double b2 = beta * beta;
    for (int k : {1, 2, 5}) {
      if (!rel_close(sampling_lower_bound(b2 * l1, b2 * lk, beta * L, k, 0.3, 0.05),
                     sampling_lower_bound(l1, lk, L, k, 0.3, 0.05), 1e-12))
        o.fail("sampling_lower_bound scale");
    }
    if (m_zero(b2 * l1, b2 * lk, beta * L, 4) != m_zero(l1, lk, L, 4)) o.fail("m_zero scale");
    const double tau = tau_const(l1, lk, L);
    if (!rel_close(tau_const(b2 * l1, b2 * lk, beta * L), tau, 1e-12)) o.fail("tau scale");
    if (k_xi(0.9, tau_const(b2 * l1, b2 * lk, beta * L), 1.0, 3) != k_xi(0.9, tau, 1.0, 3))
      o.fail("k_xi scale");
  }
  o.detail << "reduction, m_zero(d_e=1) and beta in {0.01, 1, 100} checked";
  return o;
}

AlgorithmConfig asm1_config(std::uint64_t seed, bool oracle) {
  AlgorithmConfig c;
  c.algorithm = Algorithm::asm_1;
  c.seed = seed;
  c.oracle_basis = oracle;
  return c;
}

// Criterion 5: ASM-1 on the exact effective basis. The reduced problem is
// solved with a fixed 1000-start budget; the default budget is reported too.
Outcome oracle_embedding() {
  Outcome o;
  const auto t0 = Clock::now();
  int default_hits = 0;
  for (const auto& base : benchmark_table()) {
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto obj = make_embedded(base, 100, seed);
      auto cfg = asm1_config(seed, true);
      if (asm_1(obj, base.dim, cfg).success) ++default_hits;
      cfg.solver.n_starts = 1000;
      if (asm_1(obj, base.dim, cfg).success) ++hits;
    }
    if (hits < 3) {
      o.detail << base.name << " " << hits << "/3; ";
      o.fail(base.name + " below 3/3");
    }
  }
  const double s = seconds_since(t0);
  o.detail << "1000 starts: " << (o.pass ? "48/48" : "see above") << "; default starts: " << default_hits
           << "/48; time " << s << " s";
  if (s >= 600.0) o.fail("over 10 min");
  return o;
}

// Criterion 6: end-to-end ASM-1 with M = d_e.
Outcome end_to_end_asm1() {
  Outcome o;
  for (const auto& base : benchmark_table()) {
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto obj = make_embedded(base, 100, seed);
      if (asm_1(obj, base.dim, asm1_config(seed, false)).success) ++hits;
    }
    const bool exempt = base.name == "levy" || base.name == "styblinski-tang";
    if (hits < 3) o.detail << base.name << " " << hits << "/3" << (exempt ? " (exempt)" : "") << "; ";
    if (!exempt && hits < 2) o.fail(base.name + " below 2/3");
  }
  return o;
}

// Criterion 7: A-ASM recovers d_e.
Outcome dimension_recovery() {
  Outcome o;
  const std::vector<std::string> strict{"beale",     "branin",  "brent",   "camel",
                                        "goldstein-price", "hartmann3", "shekel5", "shekel7",
                                        "shekel10",  "shubert", "zettl"};
  for (const auto& base : benchmark_table()) {
    const bool is_strict = std::find(strict.begin(), strict.end(), base.name) != strict.end();
    int exact = 0, near = 0;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      AlgorithmConfig c;
      c.algorithm = Algorithm::a_asm;
      c.seed = seed;
      const auto r = a_asm(make_embedded(base, 100, seed), c);
      if (r.d_est == base.dim) ++exact;
      if (std::abs(r.d_est - base.dim) <= 1) ++near;
    }
    if (exact < 3) o.detail << base.name << " exact " << exact << "/3; ";
    if (is_strict && exact < 2) o.fail(base.name + " d_est != d_e");
    if (!is_strict && near < 3) o.fail(base.name + " |d_est - d_e| > 1");
  }
  if (o.pass) o.detail << "all 16 functions checked";
  return o;
}

// Criterion 8: structural invariants.
Outcome structural_invariants(const ResultTable& smoke_table) {
  Outcome o;
  std::size_t checks = 0;
  for (const auto& base : catalogue()) {
    for (int D : {100, 1000}) {
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto obj = make_embedded(base, D, seed);
        const Matrix& u = obj.effective_basis();
        Rng rng = Rng(seed).split(0xC8);
        EvalTally t;
        const auto full = sample_gradients(obj, base.dim + 3, SamplingDistribution::standard_normal(), rng,
                                           GradMode::analytic, t);
        const std::string tag = base.name + " D=" + std::to_string(D) + " seed=" + std::to_string(seed);

        // Gradients are orthogonal to the constant subspace.
        for (int j = 0; j < full.M(); ++j) {
          const Vector g = full.gradients.col(j);
          const double gn = g.norm();
          const double leak = D == 100 ? (obj.constant_basis().transpose() * g).norm()
                                       : (g - u * (u.transpose() * g)).norm();
          if (leak > 1e-10 * std::max(gn, std::numeric_limits<double>::min())) o.fail("orthogonality " + tag);
          ++checks;
        }

        for (int M = 1; M <= full.M(); ++M) {
          const auto est = estimate_C(full.prefix(M));
          if (est.d > std::min(M, base.dim)) o.fail("rank cap " + tag);
          const Matrix& b = est.basis.columns;
          if (b.cols() > 0 && (b - u * (u.transpose() * b)).cwiseAbs().maxCoeff() > 1e-8)
            o.fail("range " + tag);
          checks += 2;
        }

        // Direct and Gram routes agree.
        if (D == 100) {
          const auto ens = full.prefix(std::min(5, full.M()));
          const auto direct = estimate_C(ens, 1 << 20);
          const auto gram = estimate_C(ens, 0);
          const double l1 = direct.eigenvalues(0);
          for (Eigen::Index i = 0; i < direct.eigenvalues.size(); ++i)
            if (std::abs(direct.eigenvalues(i) - gram.eigenvalues(i)) > 1e-8 * l1) o.fail("gram spectrum " + tag);
          if (direct.d != gram.d) o.fail("gram rank " + tag);
          else if (direct.d > 0 && max_principal_sine(direct.basis.columns, gram.basis.columns) > 1e-6)
            o.fail("gram subspace " + tag);
          checks += 2;
        }
      }
    }
  }

  // Profile curves are monotone and bounded.
  for (auto metric : {ProfileMetric::evals, ProfileMetric::time}) {
    for (const auto& c : perf_profile(smoke_table, metric)) {
      for (std::size_t i = 0; i < c.pi.size(); ++i) {
        if (c.pi[i] < 0.0 || c.pi[i] > 1.0) o.fail("profile range " + c.algorithm);
        if (i > 0 && c.pi[i] < c.pi[i - 1]) o.fail("profile monotonicity " + c.algorithm);
      }
      ++checks;
    }
  }
  o.detail << checks << " checks over " << catalogue().size() << " functions, 10 seeds, D in {100, 1000}";
  return o;
}

// Criterion 9: αEasom min-M trend.
Outcome alpha_easom_trend() {
  Outcome o;
  const std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
  const int max_M = 60;
  double prev = std::numeric_limits<double>::infinity();
  double last = 0.0;
  for (double alpha : {1.0, 0.5, 0.1}) {
    const auto rows = sampling_study(alpha_easom(alpha), 100, max_M, seeds, SamplingDistribution::standard_normal());
    const double med = median_min_M(rows, max_M);
    o.detail << "alpha=" << alpha << " median " << med << "; ";
    if (med > prev) o.fail("median increased at alpha=" + std::to_string(alpha));
    prev = last = med;
  }
  if (last > 4) o.fail("alpha=0.1 median above 4");
  return o;
}

// Criterion 10: incumbent monotonicity and determinism.
Outcome monotone_and_deterministic(ResultTable& table_out) {
  Outcome o;
  SuiteSpec spec;
  spec.functions = {"branin", "hartmann6", "shekel5", "levy"};
  spec.dims = {100};
  spec.algorithms = all_algorithms();
  spec.seeds = {0, 1};

  std::vector<RunRecord> first, second;
  table_out = run_suite(spec, &first);
  spec.parallel_cells = false;
  run_suite(spec, &second);
  if (first.size() != 48 || second.size() != 48) o.fail("unexpected run count");

  for (std::size_t i = 0; i < first.size() && i < second.size(); ++i) {
    const auto& r = first[i];
    const std::string tag = r.function + "/" + std::string(to_string(r.algorithm)) + "/" + std::to_string(r.seed);
    for (std::size_t k = 1; k < r.entries.size(); ++k)
      if (r.entries[k].f_best > r.entries[k - 1].f_best) o.fail("f_best increased " + tag);
    if (to_json_line(without_timing(r)) != to_json_line(without_timing(second[i])))
      o.fail("non-deterministic " + tag);
  }
  o.detail << first.size() << " runs compared";
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  std::vector<std::pair<int, std::string>> lines;
  auto report = [&](int id, const std::string& title, const std::function<Outcome()>& check) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    char head[160];
    std::snprintf(head, sizeof head, "%s criterion %d: %s [%.1f s] ", o.pass ? "PASS" : "FAIL", id,
                  title.c_str(), seconds_since(t0));
    lines.emplace_back(id, head + o.detail.str());
    std::fprintf(stderr, "%s\n", lines.back().second.c_str());
  };

  ResultTable smoke;
  report(1, "exact rank at M = d_e", exact_rank_sampling);
  report(2, "polynomial example, uniform sampling", polynomial_uniform);
  report(3, "polynomial example, normal sampling", polynomial_normal);
  report(4, "bound calculators", bound_calculators);
  report(5, "ASM-1 with the exact effective basis", oracle_embedding);
  report(6, "ASM-1 with M = d_e", end_to_end_asm1);
  report(7, "A-ASM dimension recovery", dimension_recovery);
  report(10, "incumbent monotonicity and determinism", [&] { return monotone_and_deterministic(smoke); });
  report(8, "structural invariants", [&] { return structural_invariants(smoke); });
  report(9, "alpha-Easom min-M trend", alpha_easom_trend);

  std::sort(lines.begin(), lines.end());
  for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
