#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "unext/hyptest.hpp"

using namespace unext;

// Type-class evaluation of D_h for n-fold Bernoulli products.
static void BM_BernoulliProduct(benchmark::State& state) {
  const auto n = state.range(0);
  const auto inst = BernoulliProductInstance::make(n, 0.15, 0.6, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(dh_eps_bernoulli_product(inst));
  state.SetComplexityN(n);
}
BENCHMARK(BM_BernoulliProduct)->RangeMultiplier(4)->Range(4, 4096)->Complexity();

static void BM_GeneralGreedy(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  std::vector<double> r(size), s(size);
  double sr = 0.0, ss = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    sr += r[i] = u(rng);
    ss += s[i] = u(rng);
  }
  for (std::size_t i = 0; i < size; ++i) {
    r[i] /= sr;
    s[i] /= ss;
  }
  const auto inst = HypothesisInstance::make(FiniteDist::from_linear(r), FiniteDist::from_linear(s), 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(dh_eps_general(inst));
}
BENCHMARK(BM_GeneralGreedy)->RangeMultiplier(8)->Range(8, 32768);
