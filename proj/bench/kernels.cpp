// Parallel kernels against the serial dense references.

#include "shallowwell/perturbation.hpp"
#include "shallowwell/quadrature.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

#include <cmath>

using namespace shallowwell;

namespace {

const Potential gauss = Potential::gaussian(1.0);

QuadratureGrid grid_for(benchmark::State &state) {
  return default_grid(gauss, static_cast<int>(state.range(0)), 8);
}

GridFunction ones(const QuadratureGrid &g) {
  return GridFunction(g.size(), 1.0);
}

void contract_parallel(benchmark::State &state) {
  const QuadratureGrid g = grid_for(state);
  omp_set_num_threads(static_cast<int>(state.range(1)));
  const GridFunction f = ones(g);
  for (auto _ : state)
    benchmark::DoNotOptimize(contract(g, gauss, 2, 1, f));
  omp_set_num_threads(omp_get_num_procs());
  state.counters["nodes"] = static_cast<double>(g.size());
}

void contract_reference(benchmark::State &state) {
  const QuadratureGrid g = grid_for(state);
  const GridFunction f = ones(g);
  for (auto _ : state)
    benchmark::DoNotOptimize(reference::contract(g, gauss, 2, 1, f));
  state.counters["nodes"] = static_cast<double>(g.size());
}

void abs_kernel_parallel(benchmark::State &state) {
  const QuadratureGrid g = grid_for(state);
  omp_set_num_threads(static_cast<int>(state.range(1)));
  const GridFunction u = sample(g, gauss);
  for (auto _ : state)
    benchmark::DoNotOptimize(apply_abs_kernel(g, 3, u));
  omp_set_num_threads(omp_get_num_procs());
}

void abs_kernel_reference(benchmark::State &state) {
  const QuadratureGrid g = grid_for(state);
  const GridFunction u = sample(g, gauss);
  for (auto _ : state)
    benchmark::DoNotOptimize(reference::apply_abs_kernel(g, 3, u));
}

void sixth_order_table(benchmark::State &state) {
  const QuadratureGrid g = default_grid(gauss);
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(evaluate_table(term_table(6), gauss, g));
  omp_set_num_threads(omp_get_num_procs());
}

} // namespace

// Wall time, so thread scaling is visible.
BENCHMARK(contract_parallel)
    ->ArgsProduct({{32, 128}, {1, 2, 4}})
    ->UseRealTime()
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(contract_reference)
    ->Arg(32)
    ->Arg(128)
    ->UseRealTime()
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(abs_kernel_parallel)
    ->ArgsProduct({{32, 128}, {1, 2, 4}})
    ->UseRealTime()
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(abs_kernel_reference)
    ->Arg(32)
    ->Arg(128)
    ->UseRealTime()
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(sixth_order_table)
    ->Arg(1)
    ->Arg(2)
    ->Arg(4)
    ->UseRealTime()
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
