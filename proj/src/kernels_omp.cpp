#include <omp.h>

#include <cassert>

#include "lfdkit/kernels.hpp"

namespace lfdkit::kernels {

namespace omp {

void l1_path(std::span<const double> g, std::span<const double> weights, std::span<double> out,
             int threads) {
  assert(out.size() == g.size());
  const long m = static_cast<long>(g.size());
  const int nt = threads > 0 ? threads : omp_get_max_threads();
  out[0] = 0.0;
  // Node cost grows linearly with n; dynamic chunks keep threads balanced.
#pragma omp parallel for num_threads(nt) schedule(dynamic, 64)
  for (long n = 1; n < m; ++n) {
    out[n] = serial::l1_point(g, weights, static_cast<std::size_t>(n));
  }
}

}  // namespace omp

void l1_path(std::span<const double> g, std::span<const double> weights, std::span<double> out) {
  if (g.size() >= kParallelPathThreshold && !omp_in_parallel() && omp_get_max_threads() > 1) {
    omp::l1_path(g, weights, out);
  } else {
    serial::l1_path(g, weights, out);
  }
}

}  // namespace lfdkit::kernels
