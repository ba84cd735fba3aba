#include <benchmark/benchmark.h>

#include "radplap/degiorgi.hpp"

using namespace radplap;

static void BM_Simulate(benchmark::State& state) {
  RecursionParams p;
  p.K = 3.0;
  p.eta = 4.0;
  p.delta1 = 0.5;
  p.delta2 = 1.5;
  p.log_J0 = log_threshold(p).second;
  p.n_max = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(simulate(p).log_J.back());
}
BENCHMARK(BM_Simulate)->Arg(100)->Arg(10000);

static void BM_Sweep(benchmark::State& state) {
  const unsigned threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep(1000, 1, ThresholdChoice::second, 10000, threads).counterexamples);
  }
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
