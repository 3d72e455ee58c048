#include "asgo/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "asgo/kernels.hpp"

namespace asgo {

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 40;
constexpr int kStagnationRun = 3;

void check_y(const ReducedProblem& rp, const Vector& y, const char* where) {
  if (y.size() != rp.dim()) {
    std::ostringstream msg;
    msg << where << ": y has dimension " << y.size() << ", reduced problem has " << rp.dim();
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

int SolverOptions::starts_for(int d) const { return n_starts.value_or(std::min(200, 10 * d)); }

void SolverOptions::validate() const {
  if (n_starts && *n_starts < 1) throw std::invalid_argument("solver: n_starts must be >= 1");
  if (!(start_halfwidth > 0.0)) throw std::invalid_argument("solver: start half-width must be > 0");
  if (!(grad_tol > 0.0)) throw std::invalid_argument("solver: grad_tol must be > 0");
  if (max_iters < 1) throw std::invalid_argument("solver: max_iters must be >= 1");
  if (!(f_stagnation_tol > 0.0)) throw std::invalid_argument("solver: f_stagnation_tol must be > 0");
}

ReducedProblem::ReducedProblem(const EmbeddedObjective& obj, Vector p)
    : obj_(&obj), p_(std::move(p)) {
  if (p_.size() != obj.ambient_dim()) {
    std::ostringstream msg;
    msg << "ReducedProblem: p has dimension " << p_.size() << ", objective has "
        << obj.ambient_dim();
    throw std::invalid_argument(msg.str());
  }
  if (!p_.allFinite()) throw std::invalid_argument("ReducedProblem: p is not finite");
}

ReducedProblem::ReducedProblem(const EmbeddedObjective& obj, Matrix A, Vector p)
    : ReducedProblem(obj, std::move(p)) {
  if (A.rows() != obj.ambient_dim()) {
    std::ostringstream msg;
    msg << "ReducedProblem: A has " << A.rows() << " rows, objective has " << obj.ambient_dim();
    throw std::invalid_argument(msg.str());
  }
  if (!A.allFinite()) throw std::invalid_argument("ReducedProblem: A is not finite");
  if (A.cols() > 0) {
    const Matrix ata = A.transpose() * A;
    const double smallest = Eigen::SelfAdjointEigenSolver<Matrix>(ata, Eigen::EigenvaluesOnly)
                                .eigenvalues()
                                .minCoeff();
    if (!(smallest >= 1e-12)) {
      std::ostringstream msg;
      msg << "ReducedProblem: A is column-rank deficient (min eigenvalue of A^T A = " << smallest
          << ")";
      throw std::invalid_argument(msg.str());
    }
  }
  a_ = std::move(A);
  d_ = static_cast<int>(a_.cols());
}

ReducedProblem ReducedProblem::identity(const EmbeddedObjective& obj, Vector p) {
  ReducedProblem rp(obj, std::move(p));
  rp.identity_ = true;
  rp.d_ = obj.ambient_dim();
  return rp;
}

Matrix ReducedProblem::basis() const {
  return identity_ ? Matrix(Matrix::Identity(d_, d_)) : a_;
}

Vector ReducedProblem::lift(const Vector& y) const {
  if (identity_) return y + p_;
  if (d_ == 0) return p_;
  return a_ * y + p_;
}

Vector ReducedProblem::pull_back(const Vector& g) const {
  if (identity_) return g;
  return a_.transpose() * g;
}

double reduced_eval(const ReducedProblem& rp, const Vector& y, EvalTally& tally) {
  check_y(rp, y, "reduced_eval");
  return eval(rp.objective(), rp.lift(y), tally);
}

Vector reduced_grad(const ReducedProblem& rp, const Vector& y, EvalTally& tally, GradMode mode) {
  check_y(rp, y, "reduced_grad");
  const Vector x = rp.lift(y);
  if (!x.allFinite()) throw std::invalid_argument("reduced_grad: non-finite point");
  tally.plain_evals += rp.dim() + 1;
  if (mode == GradMode::analytic) return rp.pull_back(rp.objective().gradient(x));

  const double root_eps = std::sqrt(std::numeric_limits<double>::epsilon());
  const double f0 = rp.objective().value(x);
  Vector g(y.size());
  Vector yh = y;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    yh(i) = y(i) + root_eps * (1.0 + std::abs(y(i)));
    const double step = yh(i) - y(i);
    g(i) = (rp.objective().value(rp.lift(yh)) - f0) / step;
    yh(i) = y(i);
  }
  return g;
}

LocalResult local_minimize(const ReducedProblem& rp, const Vector& y0, const SolverOptions& opts,
                           EvalTally& tally, GradMode mode, std::vector<double>* trace) {
  check_y(rp, y0, "local_minimize");
  const int d = rp.dim();
  LocalResult out{y0, 0.0, false, 0};
  if (!y0.allFinite()) {
    out.f = std::numeric_limits<double>::infinity();
    return out;
  }
  out.f = reduced_eval(rp, y0, tally);
  if (trace) trace->push_back(out.f);
  if (d == 0) {
    out.converged = true;
    return out;
  }
  if (!std::isfinite(out.f)) return out;

  Vector y = y0;
  double f = out.f;
  Vector g = reduced_grad(rp, y, tally, mode);
  Matrix h = Matrix::Identity(d, d);
  bool scaled = false;
  int flat_steps = 0;

  for (int it = 0; it < opts.max_iters; ++it) {
    out.iterations = it;
    if (!g.allFinite()) break;
    if (g.norm() <= opts.grad_tol) {
      out.converged = true;
      break;
    }
    Vector dir = -(h * g);
    double slope = g.dot(dir);
    if (!(slope < 0.0)) {
      h.setIdentity();
      scaled = false;
      dir = -g;
      slope = -g.squaredNorm();
    }
    // First step (no curvature yet) is capped at unit length.
    double t = scaled ? 1.0 : std::min(1.0, 1.0 / dir.norm());

    bool accepted = false;
    Vector y_new;
    double f_new = f;
    for (int bt = 0; bt <= kMaxBacktracks; ++bt) {
      y_new = y + t * dir;
      f_new = reduced_eval(rp, y_new, tally);
      if (std::isfinite(f_new) && f_new <= f + kArmijo * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;

    const Vector g_new = reduced_grad(rp, y_new, tally, mode);
    const Vector s = y_new - y;
    const Vector yk = g_new - g;
    const double sy = s.dot(yk);
    if (sy > 1e-10 * s.norm() * yk.norm() && sy > 0.0) {
      if (!scaled) {
        h *= sy / yk.squaredNorm();
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const Vector hy = h * yk;
      const double yhy = yk.dot(hy);
      h += ((1.0 + rho * yhy) * rho) * (s * s.transpose()) -
           rho * (hy * s.transpose() + s * hy.transpose());
    }

    const double df = f - f_new;
    y = y_new;
    f = f_new;
    g = g_new;
    out.iterations = it + 1;
    if (trace) trace->push_back(f);

    flat_steps = std::abs(df) <= opts.f_stagnation_tol ? flat_steps + 1 : 0;
    if (flat_steps >= kStagnationRun) {
      out.converged = true;
      break;
    }
  }
  if (!out.converged && g.allFinite() && g.norm() <= opts.grad_tol) out.converged = true;
  out.y = y;
  out.f = f;
  return out;
}

SolveReport multistart_minimize(const ReducedProblem& rp, const SolverOptions& opts,
                                const Rng& rng, GradMode mode) {
  opts.validate();
  const int d = rp.dim();
  SolveReport report;
  if (d == 0) {
    report.y_best = Vector(0);
    report.f_best = reduced_eval(rp, report.y_best, report.tally);
    report.converged_starts = 0;
    return report;
  }

  const int n = opts.starts_for(d);
  std::vector<LocalResult> results(static_cast<std::size_t>(n));
  std::vector<EvalTally> tallies(static_cast<std::size_t>(n));
  kernels::for_each_index(results.size(), opts.parallel, [&](std::size_t i) {
    Rng start_rng = rng.split(i);
    Vector y0(d);
    for (int j = 0; j < d; ++j) y0(j) = start_rng.uniform(-opts.start_halfwidth, opts.start_halfwidth);
    results[i] = local_minimize(rp, y0, opts, tallies[i], mode);
  });

  std::size_t best = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    report.tally += tallies[i];
    if (results[i].converged) ++report.converged_starts;
    // NaN never wins; strict < keeps the lowest index on ties.
    if (!std::isnan(results[i].f) && (std::isnan(results[best].f) || results[i].f < results[best].f))
      best = i;
  }
  report.starts_run = n;
  report.y_best = results[best].y;
  report.f_best = results[best].f;
  return report;
}

}  // namespace asgo
