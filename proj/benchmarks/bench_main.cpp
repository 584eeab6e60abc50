#include <benchmark/benchmark.h>
#include "sbmr/sbm.hpp"
static void BM_SampleSbm(benchmark::State& state) {
  const sbmr::SbmParams params{static_cast<int>(state.range(0)), 2, 10.0, 2.0};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto [g, p] = sbmr::sample_sbm(params, seed++);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_SampleSbm)->Arg(100)->Arg(250);
BENCHMARK_MAIN();
