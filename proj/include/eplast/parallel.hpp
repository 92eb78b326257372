#pragma once

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

namespace eplast {

// Worker count used by every data-parallel kernel; 0 keeps the OpenMP default.
void set_thread_count(int n);
int thread_count();

// Runs body(j) for j in [0, n) with a static schedule so each index is
// always written by exactly one worker. An exception thrown by any row is
// rethrown after the loop; the lowest failing row wins, independent of the
// worker count.
template <class Body>
void parallel_rows(int n, Body&& body) {
  std::exception_ptr failure;
  int failed_row = n;
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    try {
      body(j);
    } catch (...) {
#pragma omp critical(eplast_parallel_rows)
      if (j < failed_row) {
        failed_row = j;
        failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
}

// Fixed-order pairwise summation; the result depends only on the input order.
double pairwise_sum(std::span<const double> values);

}  // namespace eplast
