#include <benchmark/benchmark.h>

#include "radplap/conditions.hpp"
#include "radplap/presets.hpp"
#include "radplap/quadrature.hpp"

using namespace radplap;

static void BM_PowerLogClosedForm(benchmark::State& state) {
  const auto w = WeightModel::power_log(1.0, kInfinity, 1.0, -0.5, -3.0);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_exact_powerlog(w, 1.0, kInfinity).value);
}
BENCHMARK(BM_PowerLogClosedForm);

static void BM_PowerLogWithLog(benchmark::State& state) {
  const auto w = WeightModel::power_log(1.0, kInfinity, 1.0, 0.0, -1.0, -2.0);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_exact_powerlog(w, 3.0, kInfinity).value);
}
BENCHMARK(BM_PowerLogWithLog);

static void BM_CheckA(benchmark::State& state) {
  const auto ps = degenerate_exterior();
  for (auto _ : state) benchmark::DoNotOptimize(check_A(ps).verdict);
}
BENCHMARK(BM_CheckA);
