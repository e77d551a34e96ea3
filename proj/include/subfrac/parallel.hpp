#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace subfrac {

// Deterministic two-phase reduction: row values are produced (possibly in
// parallel), then accumulated in index order. The result is bit-identical
// for any thread count, and bit-identical to sum_rows_serial.
template <class RowFn>
double sum_rows(std::size_t m, const RowFn& row, bool parallel = true) {
  std::vector<double> partial(m);
#ifdef _OPENMP
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(m); ++i)
      partial[static_cast<std::size_t>(i)] = row(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < m; ++i) partial[i] = row(i);
  }
#else
  (void)parallel;
  for (std::size_t i = 0; i < m; ++i) partial[i] = row(i);
#endif
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) total += partial[i];
  return total;
}

// Serial reference for the same two-phase order.
template <class RowFn>
double sum_rows_serial(std::size_t m, const RowFn& row) {
  return sum_rows(m, row, false);
}

// Element-wise parallel map with deterministic output placement.
template <class Fn>
void parallel_for(std::size_t m, const Fn& fn, bool parallel = true) {
#ifdef _OPENMP
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(m); ++i) fn(static_cast<std::size_t>(i));
    return;
  }
#else
  (void)parallel;
#endif
  for (std::size_t i = 0; i < m; ++i) fn(i);
}

}  // namespace subfrac
