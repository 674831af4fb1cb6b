#include <benchmark/benchmark.h>

#include "unext/bounds.hpp"

using namespace unext;

static void BM_DepolarizingBound(benchmark::State& state) {
  const auto params = ChannelParams::make(ChannelKind::Depolarizing, 0.15, state.range(0), 0.05, 3);
  for (auto _ : state) benchmark::DoNotOptimize(depolarizing_bound(params));
}
BENCHMARK(BM_DepolarizingBound)->Arg(1)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

// LP solve plus witness refinement.
static void BM_ErasureBound(benchmark::State& state) {
  const auto params = ChannelParams::make(ChannelKind::Erasure, 0.35, state.range(0), 0.05, state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(erasure_bound(params));
}
BENCHMARK(BM_ErasureBound)
    ->Args({2, 2})
    ->Args({10, 3})
    ->Args({20, 2})
    ->Args({30, 6})
    ->Args({50, 10})
    ->Unit(benchmark::kMillisecond);

static void BM_ErasureLpOnly(benchmark::State& state) {
  const auto built = erasure_lp_build(ChannelParams::make(ChannelKind::Erasure, 0.35, state.range(0), 0.05, 2));
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp(built.program));
}
BENCHMARK(BM_ErasureLpOnly)->Arg(3)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
