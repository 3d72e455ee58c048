#pragma once

// Benchmark functions and their lift into R^D with a hidden rotated
// effective subspace: f(x) = h̄(first d_e components of Qx), where h̄ is the
// base function rescaled so that its box domain becomes [-1, 1]^d_e.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asgo/linops.hpp"

namespace asgo {

struct Interval {
  double lo = -1.0;
  double hi = 1.0;
};

struct BaseFunction {
  std::string name;
  int dim = 0;
  std::vector<Interval> domain;
  /// Global minimum value, to full precision; empty when unknown or unbounded.
  std::optional<double> f_star;
  /// Global minimum as printed in the benchmark table (rounded).
  std::optional<double> table_f_star;
  /// One catalogued global minimizer (in the original, unscaled coordinates).
  Vector minimizer;
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
};

/// The sixteen benchmark functions plus Easom, in catalogue order.
std::vector<BaseFunction> catalogue();

/// The sixteen functions of the benchmark table (catalogue without Easom).
std::vector<BaseFunction> benchmark_table();

/// Case-insensitive lookup by catalogue name ("branin", "shekel5", ...).
/// Throws std::invalid_argument for unknown names.
BaseFunction find_function(std::string_view name);

/// Easom with the change of variables ψ(x) = α(x - π) + π; α = 1 is Easom.
BaseFunction alpha_easom(double alpha);

/// 1-D piecewise polynomial: -x⁴ + 2x² - 1 on [-1, 1], zero outside.
BaseFunction polynomial_example();

// Test helpers.
BaseFunction constant_function(int dim, double c);
BaseFunction linear_function(const Vector& c);
/// ‖y‖² with minimum 0 at the origin.
BaseFunction quadratic_function(int dim);

struct EmbedOptions {
  /// Q = I instead of a Haar draw.
  bool identity_rotation = false;
  /// Skip the affine map onto the base domain (h̄ = h).
  bool identity_scaling = false;
};

class EmbeddedObjective {
 public:
  EmbeddedObjective(BaseFunction base, int ambient_dim, std::uint64_t seed,
                    EmbedOptions options = {});

  const BaseFunction& base() const { return base_; }
  const std::string& name() const { return base_.name; }
  int ambient_dim() const { return ambient_dim_; }
  int effective_dim() const { return base_.dim; }
  std::uint64_t seed() const { return seed_; }
  /// Full D x D rotation Q; built on first use.
  const Matrix& rotation() const;
  std::optional<double> f_star() const { return base_.f_star; }

  /// U: D x d_e, the first d_e rows of Q transposed (effective subspace).
  const Matrix& effective_basis() const { return u_; }
  /// V: D x (D - d_e), the remaining rows of Q transposed (constant subspace).
  Matrix constant_basis() const;

  /// Maps x to the scaled effective coordinates z ∈ R^d_e (z ∈ [-1,1]^d_e on the base domain).
  Vector effective_coordinates(const Vector& x) const;
  /// Base-domain point y = center + half_width ⊙ z.
  Vector unscale(const Vector& z) const;
  /// Scaled coordinates of a base-domain point.
  Vector scale(const Vector& y) const;

  /// Qᵀ (scaled minimizer ; 0).
  Vector lifted_minimizer() const;

  /// Uncounted evaluations; the counted entry points are eval / grad_analytic / grad_fd.
  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;

 private:
  BaseFunction base_;
  int ambient_dim_;
  std::uint64_t seed_;
  EmbedOptions options_;
  Matrix u_;
  struct LazyRotation;
  std::shared_ptr<LazyRotation> full_;
  Vector center_;
  Vector half_width_;
};

EmbeddedObjective make_embedded(const BaseFunction& base, int ambient_dim, std::uint64_t seed,
                                EmbedOptions options = {});

/// How sampled gradients are charged: D + 1 units each (the cost of forward
/// differences), or a single unit.
enum class GradientCost { per_coordinate, raw };

/// Per-task evaluation tally; tallies from concurrent tasks merge with +=.
struct EvalTally {
  std::int64_t plain_evals = 0;
  std::int64_t gradient_samples = 0;

  EvalTally& operator+=(const EvalTally& other) {
    plain_evals += other.plain_evals;
    gradient_samples += other.gradient_samples;
    return *this;
  }

  std::int64_t units(int ambient_dim, GradientCost cost = GradientCost::per_coordinate) const {
    const std::int64_t per_sample = cost == GradientCost::per_coordinate ? ambient_dim + 1 : 1;
    return plain_evals + per_sample * gradient_samples;
  }
};

enum class GradMode { analytic, fd };

GradMode parse_grad_mode(std::string_view name);
std::string_view to_string(GradMode mode);

/// f(x); one plain evaluation. Throws on dimension mismatch or non-finite x.
double eval(const EmbeddedObjective& obj, const Vector& x, EvalTally& tally);

/// Exact gradient via the chain rule; one gradient sample.
Vector grad_analytic(const EmbeddedObjective& obj, const Vector& x, EvalTally& tally);

/// Forward differences with step √ε(1 + |x_i|); one gradient sample (its
/// D + 1 evaluations are covered by the unit rule, not counted again).
Vector grad_fd(const EmbeddedObjective& obj, const Vector& x, EvalTally& tally);

Vector sample_gradient(const EmbeddedObjective& obj, const Vector& x, GradMode mode,
                       EvalTally& tally);

}  // namespace asgo
