#include <benchmark/benchmark.h>

#include "mfwr/finite_volume.hpp"
#include "mfwr/landscape.hpp"
#include "mfwr/phase_diagram.hpp"
#include "mfwr/special_functions.hpp"

namespace {

void BM_mean_density(benchmark::State& state) {
  double x = -20.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mfwr::mean_density(1.0, x));
    x = x < 20.0 ? x + 0.37 : -20.0;
  }
}
BENCHMARK(BM_mean_density);

void BM_landscape_solve(benchmark::State& state) {
  const mfwr::ModelParams p{1.0, 2.0, 2.0};
  for (auto _ : state) benchmark::DoNotOptimize(mfwr::landscape::solve(p));
}
BENCHMARK(BM_landscape_solve);

void BM_log_partition_series(benchmark::State& state) {
  const mfwr::ModelParams p{1.0, 2.0, 2.0};
  const double V = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mfwr::fv::log_partition_series(p, V));
}
BENCHMARK(BM_log_partition_series)->Arg(25)->Arg(100)->Arg(400);

void BM_log_partition_integral(benchmark::State& state) {
  const mfwr::ModelParams p{1.0, 2.0, 2.0};
  const double V = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mfwr::fv::log_partition_integral(p, V));
}
BENCHMARK(BM_log_partition_integral)->Arg(25)->Arg(100)->Arg(400);

void BM_maxwell_residual(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mfwr::phase::maxwell_residual(10.0, 1.0));
}
BENCHMARK(BM_maxwell_residual);

}  // namespace

BENCHMARK_MAIN();
