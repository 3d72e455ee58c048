#pragma once

// Monte-Carlo estimation of the gradient second-moment matrix
// Ĉ = (1/M) Σ ∇f(x_j) ∇f(x_j)ᵀ and the basis of its range.

#include <cstdint>
#include <vector>

#include "asgo/linops.hpp"
#include "asgo/objectives.hpp"

namespace asgo {

struct SamplingDistribution {
  enum class Kind { standard_normal, uniform_box };
  Kind kind = Kind::standard_normal;
  /// Per-coordinate bounds for uniform_box; a single interval applies to every coordinate.
  std::vector<Interval> box;

  static SamplingDistribution standard_normal() { return {}; }
  static SamplingDistribution uniform(double lo, double hi) {
    return {Kind::uniform_box, {Interval{lo, hi}}};
  }

  /// Throws std::invalid_argument on an empty/inverted box or a box of the wrong size.
  void validate(int ambient_dim) const;
  Vector draw(int ambient_dim, Rng& rng) const;
};

/// Sample points and gradients stored as columns; M = number of columns.
struct GradientEnsemble {
  Matrix points;
  Matrix gradients;

  int M() const { return static_cast<int>(gradients.cols()); }
  int ambient_dim() const { return static_cast<int>(gradients.rows()); }
  /// The first m samples.
  GradientEnsemble prefix(int m) const;
};

struct ActiveSubspaceEstimate {
  /// Leading eigenvalues of Ĉ, descending, length min(M, D).
  Vector eigenvalues;
  int d = 0;
  OrthonormalBasis basis;
  int M = 0;
};

/// Draws all M points from `rng` in order, then evaluates the gradients
/// (concurrently when `parallel`). Tallies merge into `tally`.
GradientEnsemble sample_gradients(const EmbeddedObjective& obj, int M,
                                  const SamplingDistribution& rho, Rng& rng, GradMode mode,
                                  EvalTally& tally, bool parallel = false);

/// Eigendecomposes Ĉ directly when D ≤ direct_limit, otherwise through the
/// M x M Gram matrix GᵀG / M.
ActiveSubspaceEstimate estimate_C(const GradientEnsemble& ens, int direct_limit = 500,
                                  bool parallel = false);

inline const OrthonormalBasis& basis_for_rp(const ActiveSubspaceEstimate& est) {
  return est.basis;
}

/// counts[r] = number of trials whose Ĉ had numeric rank r (r = 0..min(M, D)).
/// Trial t samples from rng.split(t), so the result does not depend on `parallel`.
std::vector<std::int64_t> rank_counts(const EmbeddedObjective& obj, int M, int trials,
                                      const SamplingDistribution& rho, const Rng& rng,
                                      GradMode mode = GradMode::analytic, bool parallel = true);

/// Fraction of trials with numeric rank equal to d_e.
double empirical_rank_probability(const EmbeddedObjective& obj, int M, int trials,
                                  const SamplingDistribution& rho, const Rng& rng,
                                  GradMode mode = GradMode::analytic, bool parallel = true);

/// Same, embedding `base` in R^D with the seed of `rng`.
double empirical_rank_probability(const BaseFunction& base, int D, int M, int trials,
                                  const SamplingDistribution& rho, const Rng& rng,
                                  GradMode mode = GradMode::analytic, bool parallel = true);

/// L̂ = max ‖∇f‖₂ over `pilot` sampled points.
double estimate_gradient_bound(const EmbeddedObjective& obj, const SamplingDistribution& rho,
                               Rng& rng, int pilot = 100, GradMode mode = GradMode::analytic);

}  // namespace asgo
