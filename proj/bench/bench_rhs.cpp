// Serial reference right-hand side against the fused OpenMP kernel.

#include <benchmark/benchmark.h>

#include <cmath>

#include "faddeev/reference.hpp"

using namespace faddeev;

namespace {

FieldState gaussian(const RadialGrid& grid) {
  return {RadialField::from_function(grid, Parity::even, [](double r) { return 0.5 * std::exp(-r * r); }),
          RadialField::from_function(grid, Parity::even, [](double r) { return 0.1 * std::exp(-r * r); }), 0.0};
}

Evolver make(const RadialGrid& grid, Exec exec) {
  EvolverOptions o;
  o.sponge_start = 0.85 * grid.r_max;
  o.sponge_strength = 1.0;
  o.exec = exec;
  return Evolver(grid, KernelParams{}, o);
}

void BM_rhs_reference(benchmark::State& st) {
  const RadialGrid grid(static_cast<std::size_t>(st.range(0)), 40.0, 4);
  const Evolver ev = make(grid, Exec::serial);
  const FieldState s = gaussian(grid);
  std::vector<double> dv(grid.n_nodes()), dvt(grid.n_nodes());
  for (auto _ : st) {
    reference::rhs(ev, s, dv, dvt);
    benchmark::DoNotOptimize(dvt.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(grid.n_nodes()));
}

void BM_rhs_fused(benchmark::State& st, Exec exec) {
  const RadialGrid grid(static_cast<std::size_t>(st.range(0)), 40.0, 4);
  const Evolver ev = make(grid, exec);
  const FieldState s = gaussian(grid);
  std::vector<double> dv(grid.n_nodes()), dvt(grid.n_nodes());
  for (auto _ : st) {
    benchmark::DoNotOptimize(ev.rhs(s, dv, dvt));
    benchmark::DoNotOptimize(dvt.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(grid.n_nodes()));
}

void BM_step(benchmark::State& st, Exec exec) {
  const RadialGrid grid(static_cast<std::size_t>(st.range(0)), 40.0, 4);
  const Evolver ev = make(grid, exec);
  const FieldState s = gaussian(grid);
  for (auto _ : st) benchmark::DoNotOptimize(ev.step(s, 0.25 * grid.dr()).finite);
}

}  // namespace

BENCHMARK(BM_rhs_reference)->RangeMultiplier(4)->Range(512, 32768);
BENCHMARK_CAPTURE(BM_rhs_fused, serial, Exec::serial)->RangeMultiplier(4)->Range(512, 32768);
BENCHMARK_CAPTURE(BM_rhs_fused, openmp, Exec::parallel)->RangeMultiplier(4)->Range(512, 32768);
BENCHMARK_CAPTURE(BM_step, serial, Exec::serial)->RangeMultiplier(4)->Range(512, 32768);
BENCHMARK_CAPTURE(BM_step, openmp, Exec::parallel)->RangeMultiplier(4)->Range(512, 32768);

BENCHMARK_MAIN();
