#pragma once

#include <Eigen/Dense>

#include "asgo/rng.hpp"

namespace asgo {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// D x d matrix with orthonormal columns. d == 0 is the empty basis.
struct OrthonormalBasis {
  Matrix columns;

  static OrthonormalBasis empty(int ambient_dim) { return {Matrix(ambient_dim, 0)}; }

  int ambient_dim() const { return static_cast<int>(columns.rows()); }
  int dim() const { return static_cast<int>(columns.cols()); }

  /// max |BᵀB - I|
  double orthonormality_error() const;
};

/// Eigenvalues sorted descending; column i of `eigenvectors` pairs with eigenvalue i.
struct SpectrumSummary {
  Vector eigenvalues;
  Matrix eigenvectors;
};

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Throws std::invalid_argument when S is not square or not symmetric to
/// 1e-12 relative.
SpectrumSummary sym_eig(const Matrix& S);

/// Haar-distributed D x D orthogonal matrix: QR of a standard-normal matrix
/// with columns sign-corrected so R has a positive diagonal.
Matrix haar_orthogonal(int D, Rng& rng);

/// D x d matrix of i.i.d. standard normal entries, filled column by column.
Matrix gaussian_matrix(int D, int d, Rng& rng);

struct AppendResult {
  OrthonormalBasis basis;
  bool accepted = false;
  double residual_norm = 0.0;
};

/// Orthogonalizes v against the basis (classical Gram-Schmidt, with a second
/// pass when the first one removes more than half of ‖v‖) and appends the
/// normalized residual if its norm is at least residual_tol.
AppendResult gram_schmidt_append(const OrthonormalBasis& basis, const Vector& v,
                                 double residual_tol);

/// Number of eigenvalues strictly above D * eps_machine * max(λ₁, 0).
/// Negative eigenvalues are treated as zero.
int numeric_rank(const Vector& eigenvalues, int D);

}  // namespace asgo
