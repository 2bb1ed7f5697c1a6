#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "lfdkit/engine.hpp"
#include "lfdkit/kernels.hpp"

using namespace lfdkit;

namespace {

std::vector<double> weierstrass_path(std::size_t m) {
  const WeierstrassParams p(2, 1.5);
  std::vector<double> g(m + 1);
  for (std::size_t j = 0; j <= m; ++j) g[j] = p.sum(0.3 + 0.1 * static_cast<double>(j) / m) - p.sum(0.3);
  return g;
}

void BM_L1PathSerial(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto g = weierstrass_path(m);
  const auto w = kernels::l1_weights(0.5, m);
  std::vector<double> out(m + 1);
  for (auto _ : state) {
    kernels::serial::l1_path(g, w, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(state.range(0));
}

void BM_L1PathOmp(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto g = weierstrass_path(m);
  const auto w = kernels::l1_weights(0.5, m);
  std::vector<double> out(m + 1);
  for (auto _ : state) {
    kernels::omp::l1_path(g, w, out, static_cast<int>(state.range(1)));
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_CriticalOrder(benchmark::State& state) {
  const auto f = FunctionSpec::weierstrass_1d(WeierstrassParams(2, 1.5));
  const WindowSchedule sched(0.1, 0.5, 12, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(critical_order(f, 0.3, Side::Right, sched).alpha);
}

}  // namespace

BENCHMARK(BM_L1PathSerial)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Complexity(benchmark::oNSquared);
BENCHMARK(BM_L1PathOmp)->ArgsProduct({{1 << 10, 1 << 12, 1 << 14}, {1, 2, 4, 8}})->UseRealTime();
BENCHMARK(BM_CriticalOrder)->Arg(128)->Arg(256)->Arg(512);

BENCHMARK_MAIN();
