#pragma once

// Multi-start quasi-Newton minimization of the reduced objective y ↦ f(Ay + p).

#include <optional>
#include <vector>

#include "asgo/objectives.hpp"

namespace asgo {

struct SolverOptions {
  /// Defaults to min(200, 10 d).
  std::optional<int> n_starts;
  /// Starts are uniform in [-h, h]^d around y = 0 (the point p).
  double start_halfwidth = 1.0;
  double grad_tol = 1e-8;
  int max_iters = 500;
  double f_stagnation_tol = 1e-12;
  /// Run starts concurrently. Results do not depend on this flag.
  bool parallel = true;

  int starts_for(int d) const;
  void validate() const;
};

class ReducedProblem {
 public:
  /// Throws when A has the wrong row count, is not finite, or is column-rank
  /// deficient (smallest eigenvalue of AᵀA below 1e-12).
  ReducedProblem(const EmbeddedObjective& obj, Matrix A, Vector p);
  /// A = I_D without forming it.
  static ReducedProblem identity(const EmbeddedObjective& obj, Vector p);

  const EmbeddedObjective& objective() const { return *obj_; }
  int dim() const { return d_; }
  const Vector& shift() const { return p_; }
  bool is_identity() const { return identity_; }
  /// A (materialized as I_D for the identity problem).
  Matrix basis() const;

  /// x = Ay + p
  Vector lift(const Vector& y) const;
  /// Aᵀ g
  Vector pull_back(const Vector& g) const;

 private:
  ReducedProblem(const EmbeddedObjective& obj, Vector p);

  const EmbeddedObjective* obj_;
  Matrix a_;
  Vector p_;
  int d_ = 0;
  bool identity_ = false;
};

/// f(Ay + p); one plain evaluation.
double reduced_eval(const ReducedProblem& rp, const Vector& y, EvalTally& tally);

/// Aᵀ∇f(Ay + p), charged as d + 1 plain evaluations. In fd mode the
/// gradient is a forward difference in y.
Vector reduced_grad(const ReducedProblem& rp, const Vector& y, EvalTally& tally,
                    GradMode mode = GradMode::analytic);

struct LocalResult {
  Vector y;
  double f = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// BFGS with Armijo backtracking. `trace`, when given, receives f at the
/// start point and after every accepted step.
LocalResult local_minimize(const ReducedProblem& rp, const Vector& y0, const SolverOptions& opts,
                           EvalTally& tally, GradMode mode = GradMode::analytic,
                           std::vector<double>* trace = nullptr);

struct SolveReport {
  Vector y_best;
  double f_best = 0.0;
  int starts_run = 0;
  int converged_starts = 0;
  EvalTally tally;
};

/// Start i draws its point from rng.split(i); the best start wins, ties to
/// the lowest index.
SolveReport multistart_minimize(const ReducedProblem& rp, const SolverOptions& opts,
                                const Rng& rng, GradMode mode = GradMode::analytic);

}  // namespace asgo
