#include <benchmark/benchmark.h>

#include <random>

#include "axivisc/biot_savart.hpp"
#include "axivisc/evolution.hpp"
#include "axivisc/initial_data.hpp"
#include "axivisc/norms.hpp"

using namespace axivisc;

namespace {

GridSpec grid_for(int n_r) { return make_grid(2.0, -2.0, 2.0, n_r, 2 * n_r); }

ScalarField random_field(const GridSpec& g) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> dist;
  ScalarField f(g, FieldRole::derived);
  for (double& v : f.values()) v = dist(rng);
  return f;
}

void BM_Rearrange(benchmark::State& state) {
  const ScalarField f = random_field(grid_for(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(rearrange(f));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(f.values().size()));
}
BENCHMARK(BM_Rearrange)->Arg(48)->Arg(96)->Arg(192);

void BM_LorentzNorm(benchmark::State& state) {
  const ScalarField f = random_field(grid_for(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(lorentz_norm(f, {1.5, 1.0}));
}
BENCHMARK(BM_LorentzNorm)->Arg(48)->Arg(96);

void BM_KernelCache(benchmark::State& state) {
  const GridSpec g = grid_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(KernelTable(64, g));
  state.SetLabel("precompute");
}
BENCHMARK(BM_KernelCache)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

void BM_Reconstruct(benchmark::State& state) {
  const GridSpec g = grid_for(static_cast<int>(state.range(0)));
  const KernelTable kt(64, g);
  const ScalarField w = omega_from_q(build_initial(InitialData{}, g));
  for (auto _ : state) benchmark::DoNotOptimize(velocity_from_vorticity(w, kt));
}
BENCHMARK(BM_Reconstruct)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

void BM_ReconstructDirect(benchmark::State& state) {
  const GridSpec g = grid_for(static_cast<int>(state.range(0)));
  const KernelTable kt(64);
  const ScalarField w = omega_from_q(build_initial(InitialData{}, g));
  for (auto _ : state) benchmark::DoNotOptimize(velocity_from_vorticity_direct(w, kt));
}
BENCHMARK(BM_ReconstructDirect)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_Step(benchmark::State& state) {
  SimConfig c;
  c.grid = grid_for(static_cast<int>(state.range(0)));
  const KernelTable kt(c.n_theta, c.grid);
  const SimState s0 = make_initial_state(build_initial(InitialData{}, c.grid), kt);
  for (auto _ : state) benchmark::DoNotOptimize(step(s0, c, kt, c.t_end));
}
BENCHMARK(BM_Step)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
