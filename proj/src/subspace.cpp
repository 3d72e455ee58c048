#include "asgo/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "asgo/kernels.hpp"

namespace asgo {

void SamplingDistribution::validate(int ambient_dim) const {
  if (kind == Kind::standard_normal) return;
  if (box.empty()) throw std::invalid_argument("uniform sampling distribution needs a box");
  if (box.size() != 1 && static_cast<int>(box.size()) != ambient_dim) {
    std::ostringstream msg;
    msg << "uniform box has " << box.size() << " intervals, expected 1 or " << ambient_dim;
    throw std::invalid_argument(msg.str());
  }
  for (const auto& b : box)
    if (!(b.lo < b.hi) || !std::isfinite(b.lo) || !std::isfinite(b.hi))
      throw std::invalid_argument("uniform box interval must be finite with lo < hi");
}

Vector SamplingDistribution::draw(int ambient_dim, Rng& rng) const {
  Vector x(ambient_dim);
  if (kind == Kind::standard_normal) {
    for (int i = 0; i < ambient_dim; ++i) x(i) = rng.normal();
  } else {
    for (int i = 0; i < ambient_dim; ++i) {
      const Interval& b = box.size() == 1 ? box[0] : box[static_cast<std::size_t>(i)];
      x(i) = rng.uniform(b.lo, b.hi);
    }
  }
  return x;
}

GradientEnsemble GradientEnsemble::prefix(int m) const {
  if (m < 1 || m > M()) throw std::invalid_argument("GradientEnsemble::prefix: m out of range");
  return {points.leftCols(m), gradients.leftCols(m)};
}

GradientEnsemble sample_gradients(const EmbeddedObjective& obj, int M,
                                  const SamplingDistribution& rho, Rng& rng, GradMode mode,
                                  EvalTally& tally, bool parallel) {
  if (M < 1) throw std::invalid_argument("sample_gradients: M must be >= 1");
  const int D = obj.ambient_dim();
  rho.validate(D);

  GradientEnsemble ens{Matrix(D, M), Matrix(D, M)};
  for (int j = 0; j < M; ++j) ens.points.col(j) = rho.draw(D, rng);

  std::vector<EvalTally> tallies(static_cast<std::size_t>(M));
  kernels::for_each_index(static_cast<std::size_t>(M), parallel, [&](std::size_t j) {
    const auto c = static_cast<Eigen::Index>(j);
    ens.gradients.col(c) = sample_gradient(obj, ens.points.col(c), mode, tallies[j]);
  });
  for (const auto& t : tallies) tally += t;
  return ens;
}

namespace {

// Orthonormalizes columns with Householder QR, keeping each column's direction.
Matrix orthonormalize(const Matrix& a) {
  const Eigen::Index n = a.rows(), k = a.cols();
  if (k == 0) return Matrix(n, 0);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ() * Matrix::Identity(n, k);
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index i = 0; i < k; ++i)
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  return q;
}

}  // namespace

ActiveSubspaceEstimate estimate_C(const GradientEnsemble& ens, int direct_limit, bool parallel) {
  const int D = ens.ambient_dim();
  const int M = ens.M();
  if (M < 1 || D < 1) throw std::invalid_argument("estimate_C: empty ensemble");
  const int keep = std::min(M, D);

  ActiveSubspaceEstimate est;
  est.M = M;
  if (ens.gradients.isZero(0.0)) {
    est.eigenvalues = Vector::Zero(keep);
    est.basis = OrthonormalBasis::empty(D);
    return est;
  }

  // Work with unit-scale gradients so tiny magnitudes do not underflow in the rotations.
  const double g_scale = ens.gradients.cwiseAbs().maxCoeff();
  const Matrix g = ens.gradients / g_scale;
  const double c_scale = g_scale * g_scale;

  if (D <= direct_limit) {
    const Matrix c = kernels::outer_product_sum(g, parallel) / M;
    const SpectrumSummary s = sym_eig(c);
    est.eigenvalues = c_scale * s.eigenvalues.head(keep);
    est.d = numeric_rank(est.eigenvalues, D);
    // One pass through G puts the basis back in range(G), removing the
    // round-off that forming G G^T leaves in directions of tiny eigenvalues.
    Matrix mapped = g * (g.transpose() * s.eigenvectors.leftCols(est.d));
    for (int i = 0; i < est.d; ++i) mapped.col(i).normalize();
    est.basis.columns = orthonormalize(mapped);
  } else {
    const Matrix k = kernels::gram(g, parallel) / M;
    const SpectrumSummary s = sym_eig(k);
    est.eigenvalues = c_scale * s.eigenvalues.head(keep);
    est.d = numeric_rank(est.eigenvalues, D);
    Matrix mapped = g * s.eigenvectors.leftCols(est.d);
    for (int i = 0; i < est.d; ++i) mapped.col(i).normalize();
    est.basis.columns = orthonormalize(mapped);
  }
  return est;
}

std::vector<std::int64_t> rank_counts(const EmbeddedObjective& obj, int M, int trials,
                                      const SamplingDistribution& rho, const Rng& rng,
                                      GradMode mode, bool parallel) {
  if (trials < 1) throw std::invalid_argument("rank_counts: trials must be >= 1");
  if (M < 1) throw std::invalid_argument("rank_counts: M must be >= 1");
  rho.validate(obj.ambient_dim());

  std::vector<int> ranks(static_cast<std::size_t>(trials));
  kernels::for_each_index(ranks.size(), parallel, [&](std::size_t t) {
    Rng trial_rng = rng.split(t);
    EvalTally unused;
    const auto ens = sample_gradients(obj, M, rho, trial_rng, mode, unused);
    ranks[t] = estimate_C(ens).d;
  });

  std::vector<std::int64_t> counts(static_cast<std::size_t>(std::min(M, obj.ambient_dim()) + 1), 0);
  for (int r : ranks) ++counts[static_cast<std::size_t>(r)];
  return counts;
}

double empirical_rank_probability(const EmbeddedObjective& obj, int M, int trials,
                                  const SamplingDistribution& rho, const Rng& rng,
                                  GradMode mode, bool parallel) {
  const auto counts = rank_counts(obj, M, trials, rho, rng, mode, parallel);
  const auto de = static_cast<std::size_t>(obj.effective_dim());
  return de < counts.size() ? static_cast<double>(counts[de]) / trials : 0.0;
}

double empirical_rank_probability(const BaseFunction& base, int D, int M, int trials,
                                  const SamplingDistribution& rho, const Rng& rng,
                                  GradMode mode, bool parallel) {
  return empirical_rank_probability(make_embedded(base, D, rng.seed()), M, trials, rho, rng, mode,
                                    parallel);
}

double estimate_gradient_bound(const EmbeddedObjective& obj, const SamplingDistribution& rho,
                               Rng& rng, int pilot, GradMode mode) {
  if (pilot < 1) throw std::invalid_argument("estimate_gradient_bound: pilot must be >= 1");
  EvalTally unused;
  const auto ens = sample_gradients(obj, pilot, rho, rng, mode, unused);
  return ens.gradients.colwise().norm().maxCoeff();
}

}  // namespace asgo
