#include <benchmark/benchmark.h>

#include "critwalk/er.hpp"
#include "critwalk/oracle.hpp"
#include "critwalk/quantum.hpp"

using namespace critwalk;

static void BM_UnionFindEr(benchmark::State& state) {
  RngStream s = derive_stream(6, 0);
  const SimpleGraph g = er::materialize(er::ErParams(static_cast<std::uint64_t>(state.range(0)), 0.0), s);
  for (auto _ : state) benchmark::DoNotOptimize(union_find_components(g));
}
BENCHMARK(BM_UnionFindEr)->Arg(1000)->Arg(10000);

static void BM_MaterializeEr(benchmark::State& state) {
  const er::ErParams params(static_cast<std::uint64_t>(state.range(0)), 0.0);
  RngStream s = derive_stream(6, 1);
  for (auto _ : state) benchmark::DoNotOptimize(er::materialize(params, s).edges.size());
}
BENCHMARK(BM_MaterializeEr)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_FullQuantum(benchmark::State& state) {
  const quantum::QuantumParams params(static_cast<std::uint64_t>(state.range(0)), 2.0, 1.8617908066319777);
  RngStream s = derive_stream(6, 2);
  for (auto _ : state) {
    const QuantumInstance inst = quantum::materialize_quantum(params, s);
    benchmark::DoNotOptimize(quantum::full_explore(inst).cmax());
  }
}
BENCHMARK(BM_FullQuantum)->Arg(24)->Arg(128);

BENCHMARK_MAIN();
