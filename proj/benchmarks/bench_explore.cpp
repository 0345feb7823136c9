#include <benchmark/benchmark.h>

#include "critwalk/er.hpp"
#include "critwalk/intersection.hpp"
#include "critwalk/quantum.hpp"
#include "critwalk/regular.hpp"

using namespace critwalk;

static void BM_ExploreEr(benchmark::State& state) {
  const er::ErParams params(static_cast<std::uint64_t>(state.range(0)), 0.0);
  std::uint64_t i = 0;
  for (auto _ : state) {
    RngStream s = derive_stream(2, i++);
    benchmark::DoNotOptimize(er::explore(params, s).cmax());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExploreEr)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_ExploreRegular(benchmark::State& state) {
  const regular::RegParams params(static_cast<std::uint64_t>(state.range(0)), 3, 0.0);
  std::uint64_t i = 0;
  for (auto _ : state) {
    RngStream s = derive_stream(3, i++);
    benchmark::DoNotOptimize(regular::explore(params, s).cmax());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExploreRegular)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_ExploreIntersection(benchmark::State& state) {
  const intersection::IntersectionParams params(static_cast<std::uint64_t>(state.range(0)), 1.0, 1.0);
  std::uint64_t i = 0;
  for (auto _ : state) {
    RngStream s = derive_stream(4, i++);
    benchmark::DoNotOptimize(intersection::explore(params, s).cmax());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExploreIntersection)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_ReducedQuantum(benchmark::State& state) {
  const quantum::QuantumParams params(static_cast<std::uint64_t>(state.range(0)), 2.0, 1.8617908066319777);
  std::uint64_t i = 0;
  for (auto _ : state) {
    RngStream s = derive_stream(5, i++);
    benchmark::DoNotOptimize(quantum::reduced_explore(params, s).cmax());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ReducedQuantum)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
