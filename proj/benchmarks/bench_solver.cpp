#include <benchmark/benchmark.h>

#include "radplap/presets.hpp"
#include "radplap/solver.hpp"

using namespace radplap;

static void BM_ShootAnnulus(benchmark::State& state) {
  const auto ps = annulus(3);
  SolveOptions o;
  o.mesh.nodes = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(find_lambda1(ps, o).lambda);
}
BENCHMARK(BM_ShootAnnulus)->Arg(500)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

static void BM_ShootExteriorLadder(benchmark::State& state) {
  const auto ps = degenerate_exterior();
  for (auto _ : state) benchmark::DoNotOptimize(find_lambda1(ps).lambda);
}
BENCHMARK(BM_ShootExteriorLadder)->Unit(benchmark::kMillisecond);

static void BM_RayleighMinimize(benchmark::State& state) {
  const auto ps = degenerate_exterior();
  const auto mesh = Mesh::graded(ps, 64.0, {static_cast<std::size_t>(state.range(0))});
  for (auto _ : state) benchmark::DoNotOptimize(rayleigh_minimize(ps, mesh).lambda);
}
BENCHMARK(BM_RayleighMinimize)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
