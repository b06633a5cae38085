#include <benchmark/benchmark.h>

#include "aclab/geometry.hpp"
#include "aclab/measures.hpp"
#include "aclab/solver.hpp"

namespace {

using namespace aclab;

PhaseField circle(int n) {
  const Potential pot;
  const auto grid = Grid::cube(2, n, 1.4, Boundary::periodic, -0.7);
  const double eps = 4.0 * 1.4 / n;
  return prepare_initial_data(Shape::ball({0, 0, 0}, 0.3), eps, grid, pot);
}

void BM_Rhs(benchmark::State& state) {
  const AllenCahnSolver solver;
  const auto phase = circle(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solver.rhs(phase));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_Rhs)->Arg(128)->Arg(256)->Arg(512);

void BM_Step(benchmark::State& state) {
  const AllenCahnSolver solver;
  auto phase = circle(static_cast<int>(state.range(0)));
  const double dt = solver.stable_dt(phase);
  for (auto _ : state) phase = solver.step(phase, dt);
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_Step)->Arg(128)->Arg(256)->Arg(512);

void BM_DensitySnapshot(benchmark::State& state) {
  const Potential pot;
  const auto phase = circle(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(density_snapshot(phase, pot));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_DensitySnapshot)->Arg(128)->Arg(256)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
