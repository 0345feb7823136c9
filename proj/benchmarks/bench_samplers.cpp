#include <benchmark/benchmark.h>

#include "critwalk/rng.hpp"

using namespace critwalk;

static void BM_Uniform(benchmark::State& state) {
  RngStream s = derive_stream(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(s.uniform());
}
BENCHMARK(BM_Uniform);

static void BM_Binomial(benchmark::State& state) {
  RngStream s = derive_stream(1, 1);
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const double p = 1.0 / static_cast<double>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(sample_binomial(n, p, s));
}
BENCHMARK(BM_Binomial)->Args({10, 2})->Args({100000, 100000})->Args({100000, 100})->Args({1000000, 2});

static void BM_Poisson(benchmark::State& state) {
  RngStream s = derive_stream(1, 2);
  const double mean = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_poisson(mean, s));
}
BENCHMARK(BM_Poisson)->Arg(1)->Arg(50)->Arg(10000);

static void BM_CutGamma(benchmark::State& state) {
  RngStream s = derive_stream(1, 3);
  const CutGammaParams cut(3.72);
  for (auto _ : state) benchmark::DoNotOptimize(sample_cut_gamma(cut, s));
}
BENCHMARK(BM_CutGamma);

BENCHMARK_MAIN();
