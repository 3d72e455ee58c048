#include "asgo/drivers.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace asgo {

namespace {

constexpr std::uint64_t kSamplingStream = 1;
constexpr std::uint64_t kSolverStream = 2;
constexpr std::uint64_t kEmbeddingStream = 3;
constexpr int kZeroGradientRetries = 100;

constexpr std::array<std::pair<Algorithm, std::string_view>, 6> kAlgorithmNames{{
    {Algorithm::asm_go, "asm-go"},
    {Algorithm::a_asm, "a-asm"},
    {Algorithm::asm_1, "asm-1"},
    {Algorithm::a_rego, "a-rego"},
    {Algorithm::rego_1, "rego-1"},
    {Algorithm::no_embedding, "no-embedding"},
}};

constexpr std::array<std::pair<Termination, std::string_view>, 4> kTerminationNames{{
    {Termination::stagnation, "stagnation"},
    {Termination::basis_stalled, "basis_stalled"},
    {Termination::max_embeddings, "max_embeddings"},
    {Termination::single_shot, "single_shot"},
}};

using Clock = std::chrono::steady_clock;

// Shared bookkeeping: incumbent, tally, clock and the record under construction.
class Run {
 public:
  Run(const EmbeddedObjective& obj, const AlgorithmConfig& cfg, Algorithm algorithm)
      : obj_(obj), cfg_(cfg), root_(cfg.seed), start_(Clock::now()) {
    cfg.validate(obj.ambient_dim());
    rec_.function = obj.name();
    rec_.D = obj.ambient_dim();
    rec_.d_e = obj.effective_dim();
    rec_.objective_seed = obj.seed();
    rec_.algorithm = algorithm;
    rec_.seed = cfg.seed;
    rec_.grad_mode = cfg.grad_mode;
    rec_.f_star = obj.f_star();
    rec_.eps = cfg.eps;
    p_ = cfg.p0 ? *cfg.p0 : Vector(Vector::Zero(obj.ambient_dim()));
    f_p_ = eval(obj, p_, tally_);
    sampling_ = root_.split(kSamplingStream);
  }

  const EmbeddedObjective& obj() const { return obj_; }
  const AlgorithmConfig& cfg() const { return cfg_; }
  EvalTally& tally() { return tally_; }
  Rng& sampling() { return sampling_; }
  const Vector& incumbent() const { return p_; }
  double incumbent_value() const { return f_p_; }
  int D() const { return obj_.ambient_dim(); }
  int max_embeddings() const { return cfg_.max_embeddings.value_or(D()); }

  Rng solver_rng(int k) const { return root_.split(kSolverStream).split(static_cast<std::uint64_t>(k)); }
  Rng embedding_rng(int k) const {
    return root_.split(kEmbeddingStream).split(static_cast<std::uint64_t>(k));
  }

  /// Solves around the incumbent with basis A (d may be 0), clips to the
  /// incumbent and records the entry. Returns the clipped f(x^k).
  double embed_and_solve(int k, const Matrix& a) {
    if (cfg_.on_embedding) cfg_.on_embedding(k, a);
    double f_k = f_p_;
    if (a.cols() > 0) {
      const ReducedProblem rp(obj_, a, p_);
      const SolveReport rep = multistart_minimize(rp, cfg_.solver, solver_rng(k), cfg_.grad_mode);
      tally_ += rep.tally;
      if (rep.f_best < f_p_) {
        p_ = rp.lift(rep.y_best);
        f_p_ = rep.f_best;
      }
      f_k = f_p_;
    }
    push(k, static_cast<int>(a.cols()), f_k);
    return f_k;
  }

  void solve_identity(int k) {
    if (cfg_.on_embedding) cfg_.on_embedding(k, Matrix::Identity(D(), D()));
    const ReducedProblem rp = ReducedProblem::identity(obj_, p_);
    const SolveReport rep = multistart_minimize(rp, cfg_.solver, solver_rng(k), cfg_.grad_mode);
    tally_ += rep.tally;
    if (rep.f_best < f_p_) {
      p_ = rp.lift(rep.y_best);
      f_p_ = rep.f_best;
    }
    push(k, D(), f_p_);
  }

  RunRecord finish(int d_est, Termination why) {
    rec_.x_opt = p_;
    rec_.f_opt = f_p_;
    rec_.d_est = d_est;
    rec_.termination = why;
    rec_.eval_units = tally_.units(D(), cfg_.gradient_cost);
    rec_.wall_s = elapsed_ms() / 1000.0;
    rec_.success = rec_.f_star && check_success(rec_, *rec_.f_star, cfg_.eps);
    return std::move(rec_);
  }

 private:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
  }

  void push(int k, int d_k, double f_k) {
    rec_.entries.push_back(
        {k, d_k, f_k, f_p_, tally_.units(D(), cfg_.gradient_cost), elapsed_ms()});
  }

  const EmbeddedObjective& obj_;
  const AlgorithmConfig& cfg_;
  Rng root_;
  Rng sampling_;
  Clock::time_point start_;
  EvalTally tally_;
  Vector p_;
  double f_p_ = 0.0;
  RunRecord rec_;
};

}  // namespace

std::string_view to_string(Algorithm a) {
  for (const auto& [value, name] : kAlgorithmNames)
    if (value == a) return name;
  throw std::invalid_argument("unknown algorithm value");
}

Algorithm parse_algorithm(std::string_view name) {
  for (const auto& [value, n] : kAlgorithmNames)
    if (n == name) return value;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) +
                              "' (expected asm-go, a-asm, asm-1, a-rego, rego-1, no-embedding)");
}

const std::vector<Algorithm>& all_algorithms() {
  static const std::vector<Algorithm> all{Algorithm::asm_go, Algorithm::a_asm,
                                          Algorithm::asm_1,  Algorithm::a_rego,
                                          Algorithm::rego_1, Algorithm::no_embedding};
  return all;
}

std::string_view to_string(Termination t) {
  for (const auto& [value, name] : kTerminationNames)
    if (value == t) return name;
  throw std::invalid_argument("unknown termination value");
}

Termination parse_termination(std::string_view name) {
  for (const auto& [value, n] : kTerminationNames)
    if (n == name) return value;
  throw std::invalid_argument("unknown termination reason '" + std::string(name) + "'");
}

void AlgorithmConfig::validate(int ambient_dim) const {
  if (!(eps > 0.0)) throw std::invalid_argument("config: eps must be > 0");
  if (!(stagnation_gamma > 0.0)) throw std::invalid_argument("config: stagnation_gamma must be > 0");
  if (!(gs_tol > 0.0)) throw std::invalid_argument("config: gs_tol must be > 0");
  if (gs_patience < 1) throw std::invalid_argument("config: gs_patience must be >= 1");
  if (max_embeddings && *max_embeddings < 1)
    throw std::invalid_argument("config: max_embeddings must be >= 1");
  if (M && *M < 1) throw std::invalid_argument("config: M must be >= 1");
  if (p0 && p0->size() != ambient_dim) {
    std::ostringstream msg;
    msg << "config: p0 has dimension " << p0->size() << ", objective has " << ambient_dim;
    throw std::invalid_argument(msg.str());
  }
  rho.validate(ambient_dim);
  solver.validate();
}

RunRecord asm_go(const EmbeddedObjective& obj, const AlgorithmConfig& cfg) {
  Run run(obj, cfg, Algorithm::asm_go);
  int prev_d = -1;
  int unchanged = 0;
  int d_k = 0;
  for (int k = 1; k <= run.max_embeddings(); ++k) {
    Rng rng = run.sampling().split(static_cast<std::uint64_t>(k));
    const auto ens = sample_gradients(obj, k, cfg.rho, rng, cfg.grad_mode, run.tally(),
                                      cfg.solver.parallel);
    const auto est = estimate_C(ens, 500, cfg.solver.parallel);
    d_k = est.d;
    run.embed_and_solve(k, est.basis.columns);
    unchanged = d_k == prev_d ? unchanged + 1 : 0;
    prev_d = d_k;
    if (unchanged >= cfg.gs_patience) return run.finish(d_k, Termination::basis_stalled);
  }
  return run.finish(d_k, Termination::max_embeddings);
}

RunRecord a_asm(const EmbeddedObjective& obj, const AlgorithmConfig& cfg) {
  Run run(obj, cfg, Algorithm::a_asm);
  const int D = run.D();
  auto draw_gradient = [&] {
    const Vector x = cfg.rho.draw(D, run.sampling());
    return sample_gradient(obj, x, cfg.grad_mode, run.tally());
  };

  Vector g = draw_gradient();
  for (int retry = 0; g.norm() == 0.0 && retry < kZeroGradientRetries; ++retry) g = draw_gradient();
  if (g.norm() == 0.0) return run.finish(0, Termination::basis_stalled);

  OrthonormalBasis basis{g / g.norm()};
  run.embed_and_solve(1, basis.columns);
  int small_residuals = 0;
  for (int k = 2; k <= run.max_embeddings(); ++k) {
    if (basis.dim() == D) return run.finish(D, Termination::max_embeddings);
    const AppendResult appended = gram_schmidt_append(basis, draw_gradient(), cfg.gs_tol);
    basis = appended.basis;
    small_residuals = appended.residual_norm < cfg.gs_tol ? small_residuals + 1 : 0;
    run.embed_and_solve(k, basis.columns);
    if (small_residuals >= cfg.gs_patience) return run.finish(basis.dim(), Termination::basis_stalled);
  }
  return run.finish(basis.dim(), Termination::max_embeddings);
}

RunRecord asm_1(const EmbeddedObjective& obj, int M, const AlgorithmConfig& cfg) {
  if (M < 1) throw std::invalid_argument("asm_1: M must be >= 1");
  Run run(obj, cfg, Algorithm::asm_1);
  Matrix a;
  if (cfg.oracle_basis) {
    a = obj.effective_basis();
  } else {
    Rng rng = run.sampling();
    const auto ens = sample_gradients(obj, M, cfg.rho, rng, cfg.grad_mode, run.tally(),
                                      cfg.solver.parallel);
    a = estimate_C(ens, 500, cfg.solver.parallel).basis.columns;
  }
  run.embed_and_solve(1, a);
  return run.finish(static_cast<int>(a.cols()), Termination::single_shot);
}

RunRecord a_rego(const EmbeddedObjective& obj, const AlgorithmConfig& cfg) {
  Run run(obj, cfg, Algorithm::a_rego);
  const int D = run.D();
  const int k_max = std::min(D, run.max_embeddings());
  double f_prev = 0.0;
  for (int k = 1; k <= k_max; ++k) {
    Rng rng = run.embedding_rng(k);
    const double f_k = run.embed_and_solve(k, gaussian_matrix(D, k, rng));
    if (k >= 2 && std::abs(f_k - f_prev) <= cfg.stagnation_gamma)
      return run.finish(k < D ? k - 1 : D, Termination::stagnation);
    f_prev = f_k;
  }
  return run.finish(k_max, k_max == D ? Termination::stagnation : Termination::max_embeddings);
}

RunRecord rego_1(const EmbeddedObjective& obj, int d, const AlgorithmConfig& cfg) {
  if (d < 1) throw std::invalid_argument("rego_1: d must be >= 1");
  if (d > obj.ambient_dim()) throw std::invalid_argument("rego_1: d must not exceed D");
  Run run(obj, cfg, Algorithm::rego_1);
  Rng rng = run.embedding_rng(1);
  run.embed_and_solve(1, gaussian_matrix(run.D(), d, rng));
  return run.finish(d, Termination::single_shot);
}

RunRecord no_embedding(const EmbeddedObjective& obj, const AlgorithmConfig& cfg) {
  Run run(obj, cfg, Algorithm::no_embedding);
  run.solve_identity(1);
  return run.finish(run.D(), Termination::single_shot);
}

RunRecord run(const EmbeddedObjective& obj, const AlgorithmConfig& cfg) {
  const int size = cfg.M.value_or(obj.effective_dim());
  switch (cfg.algorithm) {
    case Algorithm::asm_go: return asm_go(obj, cfg);
    case Algorithm::a_asm: return a_asm(obj, cfg);
    case Algorithm::asm_1: return asm_1(obj, size, cfg);
    case Algorithm::a_rego: return a_rego(obj, cfg);
    case Algorithm::rego_1: return rego_1(obj, size, cfg);
    case Algorithm::no_embedding: return no_embedding(obj, cfg);
  }
  throw std::invalid_argument("run: unknown algorithm");
}

bool check_success(const RunRecord& record, double f_star, double eps) {
  return record.f_opt <= f_star + eps;
}

RunRecord without_timing(RunRecord record) {
  record.wall_s = 0.0;
  for (auto& e : record.entries) e.wall_ms = 0.0;
  return record;
}

}  // namespace asgo
