#include "asgo/kernels.hpp"

namespace asgo::kernels {

namespace {

// Entry (i, k) of Σ_j c_j c_jᵀ, summed over j in increasing order.
inline double outer_entry(const Matrix& c, Eigen::Index i, Eigen::Index k) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < c.cols(); ++j) s += c(i, j) * c(k, j);
  return s;
}

inline double gram_entry(const Matrix& c, Eigen::Index a, Eigen::Index b) {
  double s = 0.0;
  for (Eigen::Index r = 0; r < c.rows(); ++r) s += c(r, a) * c(r, b);
  return s;
}

}  // namespace

namespace serial {

Matrix outer_product_sum(const Matrix& columns) {
  const Eigen::Index n = columns.rows();
  Matrix out(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = k; i < n; ++i) out(i, k) = out(k, i) = outer_entry(columns, i, k);
  return out;
}

Matrix gram(const Matrix& columns) {
  const Eigen::Index m = columns.cols();
  Matrix out(m, m);
  for (Eigen::Index b = 0; b < m; ++b)
    for (Eigen::Index a = b; a < m; ++a) out(a, b) = out(b, a) = gram_entry(columns, a, b);
  return out;
}

}  // namespace serial

namespace omp {

Matrix outer_product_sum(const Matrix& columns) {
  const long n = static_cast<long>(columns.rows());
  Matrix out(n, n);
#pragma omp parallel for schedule(dynamic, 8)
  for (long k = 0; k < n; ++k)
    for (long i = k; i < n; ++i) out(i, k) = out(k, i) = outer_entry(columns, i, k);
  return out;
}

Matrix gram(const Matrix& columns) {
  const long m = static_cast<long>(columns.cols());
  Matrix out(m, m);
#pragma omp parallel for schedule(dynamic, 1)
  for (long b = 0; b < m; ++b)
    for (long a = b; a < m; ++a) out(a, b) = out(b, a) = gram_entry(columns, a, b);
  return out;
}

}  // namespace omp

}  // namespace asgo::kernels
