#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "lfdkit/kernels.hpp"

using namespace lfdkit;

namespace {

std::vector<double> random_path(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> u(0.0, 1.0);
  std::vector<double> g(n);
  g[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i) g[i] = g[i - 1] + u(rng);
  return g;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("L1 weights") {
  const auto w = kernels::l1_weights(0.4, 50);
  REQUIRE(w.size() == 50);
  CHECK(w[0] == 1.0);
  for (std::size_t j = 1; j < w.size(); ++j) {
    CHECK(w[j] > 0.0);
    CHECK(w[j] < w[j - 1]);
  }
  // Telescoping: sum of the first J weights is J^(1 - beta).
  double sum = 0.0;
  for (double x : w) sum += x;
  CHECK(sum == doctest::Approx(std::pow(50.0, 0.6)).epsilon(1e-12));
}

TEST_CASE("serial point and path agree") {
  const auto g = random_path(400, 1);
  const auto w = kernels::l1_weights(0.3, g.size());
  std::vector<double> out(g.size());
  kernels::serial::l1_path(g, w, out);
  CHECK(out[0] == 0.0);
  for (std::size_t n = 1; n < g.size(); n += 37) CHECK(out[n] == kernels::serial::l1_point(g, w, n));
}

TEST_CASE("parallel path is bit-identical to the serial reference") {
  for (std::size_t n : {3u, 65u, 1000u, 5000u}) {
    const auto g = random_path(n, static_cast<unsigned>(n));
    const auto w = kernels::l1_weights(0.7, n);
    std::vector<double> ref(n);
    kernels::serial::l1_path(g, w, ref);
    for (int threads : {1, 2, 4, 8}) {
      std::vector<double> par(n, -1.0);
      kernels::omp::l1_path(g, w, par, threads);
      CAPTURE(n);
      CAPTURE(threads);
      CHECK(bitwise_equal(ref, par));
    }
    std::vector<double> dispatched(n);
    kernels::l1_path(g, w, dispatched);
    CHECK(bitwise_equal(ref, dispatched));
  }
}
