#include <cassert>
#include <cmath>

#include "lfdkit/kernels.hpp"

namespace lfdkit::kernels {

std::vector<double> l1_weights(double beta, std::size_t count) {
  std::vector<double> w(count);
  const double e = 1.0 - beta;
  double prev = 0.0;  // 0^(1-beta)
  for (std::size_t j = 0; j < count; ++j) {
    const double next = std::pow(static_cast<double>(j + 1), e);
    w[j] = next - prev;
    prev = next;
  }
  return w;
}

namespace serial {

double l1_point(std::span<const double> g, std::span<const double> weights, std::size_t node) {
  assert(node < g.size() && node <= weights.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < node; ++j) {
    acc += weights[j] * (g[node - j] - g[node - j - 1]);
  }
  return acc;
}

void l1_path(std::span<const double> g, std::span<const double> weights, std::span<double> out) {
  assert(out.size() == g.size());
  out[0] = 0.0;
  for (std::size_t n = 1; n < g.size(); ++n) out[n] = l1_point(g, weights, n);
}

}  // namespace serial
}  // namespace lfdkit::kernels
