#pragma once

#include <omp.h>

#include <cstddef>
#include <exception>
#include <vector>

namespace lfdkit {

/// Runs fn(i) for i in [0, n) on up to `workers` threads (0 = OpenMP default).
/// Each index is written independently by the caller, so results do not depend
/// on scheduling. The first exception (lowest index) is rethrown after the loop.
template <class Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for num_threads(threads) schedule(dynamic, 1)
  for (long i = 0; i < static_cast<long>(n); ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace lfdkit
