#include "asgo/linops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace asgo {

namespace {

constexpr int kMaxSweeps = 100;

void rotate(Matrix& a, Matrix& v, Eigen::Index p, Eigen::Index q) {
  const double apq = a(p, q);
  const double theta = 0.5 * (a(q, q) - a(p, p)) / apq;
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Eigen::Index n = a.rows();

  for (Eigen::Index k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = a(p, k) = c * akp - s * akq;
    a(k, q) = a(q, k) = s * akp + c * akq;
  }
  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = a(q, p) = 0.0;

  for (Eigen::Index k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

}  // namespace

double OrthonormalBasis::orthonormality_error() const {
  if (dim() == 0) return 0.0;
  const Matrix gram = columns.transpose() * columns;
  return (gram - Matrix::Identity(dim(), dim())).cwiseAbs().maxCoeff();
}

SpectrumSummary sym_eig(const Matrix& S) {
  if (S.rows() != S.cols()) {
    std::ostringstream msg;
    msg << "sym_eig: matrix is " << S.rows() << "x" << S.cols() << ", expected square";
    throw std::invalid_argument(msg.str());
  }
  const Eigen::Index n = S.rows();
  if (n == 0) return {Vector(0), Matrix(0, 0)};

  const double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
  const double asym = (S - S.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= 1e-12 * scale)) {
    std::ostringstream msg;
    msg << "sym_eig: input not symmetric (max |S - S^T| = " << asym << ")";
    throw std::invalid_argument(msg.str());
  }

  Matrix a = 0.5 * (S + S.transpose());
  Matrix v = Matrix::Identity(n, n);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index q = 1; q < n; ++q)
      for (Eigen::Index p = 0; p < q; ++p) off += a(p, q) * a(p, q);
    if (off == 0.0) break;

    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // An off-diagonal entry that no longer perturbs either diagonal
        // entry at working precision is dropped.
        const double g = 100.0 * std::abs(apq);
        if (sweep > 3 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
            std::abs(a(q, q)) + g == std::abs(a(q, q))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        rotate(a, v, p, q);
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });

  SpectrumSummary out{Vector(n), Matrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.eigenvalues(i) = a(order[i], order[i]);
    out.eigenvectors.col(i) = v.col(order[i]);
  }
  return out;
}

Matrix haar_orthogonal(int D, Rng& rng) {
  if (D < 1) throw std::invalid_argument("haar_orthogonal: D must be >= 1");
  const Matrix g = gaussian_matrix(D, D, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(D, D);
  const Matrix& r = qr.matrixQR();
  for (int i = 0; i < D; ++i)
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  return q;
}

Matrix gaussian_matrix(int D, int d, Rng& rng) {
  if (D < 1 || d < 1) throw std::invalid_argument("gaussian_matrix: dimensions must be >= 1");
  Matrix g(D, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < D; ++i) g(i, j) = rng.normal();
  return g;
}

AppendResult gram_schmidt_append(const OrthonormalBasis& basis, const Vector& v,
                                 double residual_tol) {
  if (v.size() != basis.ambient_dim()) {
    std::ostringstream msg;
    msg << "gram_schmidt_append: vector has dimension " << v.size() << ", basis has "
        << basis.ambient_dim();
    throw std::invalid_argument(msg.str());
  }
  if (!(residual_tol > 0.0)) throw std::invalid_argument("gram_schmidt_append: residual_tol must be > 0");

  const Matrix& b = basis.columns;
  Vector r = v;
  if (basis.dim() > 0) {
    r -= b * (b.transpose() * v);
    if (r.norm() < 0.5 * v.norm()) r -= b * (b.transpose() * r);
  }
  const double norm = r.norm();

  AppendResult out{basis, false, norm};
  if (norm >= residual_tol) {
    out.basis.columns.conservativeResize(Eigen::NoChange, basis.dim() + 1);
    out.basis.columns.col(basis.dim()) = r / norm;
    out.accepted = true;
  }
  return out;
}

int numeric_rank(const Vector& eigenvalues, int D) {
  if (eigenvalues.size() == 0) return 0;
  const double top = std::max(eigenvalues.maxCoeff(), 0.0);
  const double tol = D * std::numeric_limits<double>::epsilon() * top;
  int rank = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    if (std::max(eigenvalues(i), 0.0) > tol) ++rank;
  return rank;
}

}  // namespace asgo
