#include <benchmark/benchmark.h>

#include "modgamma/sampling.hpp"

using namespace modgamma;

static void BM_SampleLaguerre(benchmark::State& state) {
  const EnsembleSpec e = EnsembleSpec::laguerre(2.0, int(state.range(0)), int(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_log_statistic(e, 100, ++seed));
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_SampleLaguerre)->Arg(10)->Arg(1000);

static void BM_CfOracleCdf(benchmark::State& state) {
  const CfOracle o(EnsembleSpec::laguerre(1.0, int(state.range(0)), int(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(o.standardized_cdf(0.7));
}
BENCHMARK(BM_CfOracleCdf)->Arg(50)->Arg(5000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
