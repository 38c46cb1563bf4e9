#include <benchmark/benchmark.h>

#include "modgamma/expansion.hpp"
#include "modgamma/modphi.hpp"

using namespace modgamma;

static void BM_LogMgfLaguerre(benchmark::State& state) {
  const EnsembleSpec e = EnsembleSpec::laguerre(1.0, int(state.range(0)), int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(log_mgf(e, Complex(0.3, 1.0)));
}
BENCHMARK(BM_LogMgfLaguerre)->Arg(100)->Arg(10000)->Arg(1000000);

static void BM_LogMgfJacobi(benchmark::State& state) {
  const int n = int(state.range(0));
  const EnsembleSpec e = EnsembleSpec::jacobi(2.0, n, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(log_mgf(e, Complex(0.3, 1.0)));
}
BENCHMARK(BM_LogMgfJacobi)->Arg(100)->Arg(10000);

static void BM_ExpansionTerms(benchmark::State& state) {
  const LParams params{int(state.range(0)), 0.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(expansion_terms(params, Complex(1.0, 0.5)));
}
BENCHMARK(BM_ExpansionTerms)->Arg(32)->Arg(1024);

static void BM_PhiAlpha(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(phi_alpha(2.0, Complex(1.0, 0.5)));
}
BENCHMARK(BM_PhiAlpha);

static void BM_PreciseDeviation(benchmark::State& state) {
  const ModPhiData d = laguerre_modphi(2.0, 10000, Regime::full());
  for (auto _ : state) benchmark::DoNotOptimize(precise_deviation(d, 0.5));
}
BENCHMARK(BM_PreciseDeviation);

BENCHMARK_MAIN();
