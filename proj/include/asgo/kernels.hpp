#pragma once

// Data-parallel kernels. Each kernel has a plain serial reference and an
// OpenMP version; both accumulate every output entry in the same order, so
// their results are bitwise identical.

#include <cstddef>
#include <exception>
#include <mutex>

#include "asgo/linops.hpp"

namespace asgo::kernels {

namespace serial {
/// Σ_j c_j c_jᵀ over the columns of `columns`.
Matrix outer_product_sum(const Matrix& columns);
/// columnsᵀ · columns
Matrix gram(const Matrix& columns);
}  // namespace serial

namespace omp {
Matrix outer_product_sum(const Matrix& columns);
Matrix gram(const Matrix& columns);
}  // namespace omp

inline Matrix outer_product_sum(const Matrix& columns, bool parallel) {
  return parallel ? omp::outer_product_sum(columns) : serial::outer_product_sum(columns);
}

inline Matrix gram(const Matrix& columns, bool parallel) {
  return parallel ? omp::gram(columns) : serial::gram(columns);
}

/// Runs body(i) for every i in [0, n). Iterations must be independent.
/// The first exception thrown by any iteration is rethrown after the loop.
template <class Body>
void for_each_index(std::size_t n, bool parallel, Body&& body) {
  if (!parallel || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex guard;
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace asgo::kernels
