#include <benchmark/benchmark.h>

#include "modgamma/specfun.hpp"

using modgamma::Complex;

static void BM_LogGamma(benchmark::State& state) {
  Complex z(3.7, 2.1);
  for (auto _ : state) benchmark::DoNotOptimize(modgamma::log_gamma(z));
}
BENCHMARK(BM_LogGamma);

static void BM_LogGammaDiff(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(modgamma::log_gamma_diff(1e6, Complex(0.5, 0.25)));
}
BENCHMARK(BM_LogGammaDiff);

static void BM_BinetLogGamma(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(modgamma::binet_log_gamma(Complex(3.7, 2.1)));
}
BENCHMARK(BM_BinetLogGamma);

static void BM_LogBarnesG(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(modgamma::log_barnes_g(Complex(1.5, 0.5)));
}
BENCHMARK(BM_LogBarnesG);

static void BM_LogBarnesRatio(benchmark::State& state) {
  const double n = double(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(modgamma::log_barnes_ratio(n, Complex(1.0, 0.5)));
}
BENCHMARK(BM_LogBarnesRatio)->Arg(100)->Arg(1000000);

BENCHMARK_MAIN();
