// SPDX-License-Identifier: Apache-2.0
//
// Serial reference vs OpenMP realization loop, plus the per-receiver solve.

#include <benchmark/benchmark.h>

#include "hetnet/linalg.hpp"
#include "hetnet/random.hpp"
#include "hetnet/simulation.hpp"

namespace {

hetnet::SimulationConfig bench_config() {
  hetnet::SimulationConfig c;
  c.n_realizations = 16;
  c.seed = 11;
  return c;
}

void BM_MonteCarloSerial(benchmark::State& state) {
  const auto c = bench_config();
  for (auto _ : state) benchmark::DoNotOptimize(hetnet::run_monte_carlo_serial(c, 0.1));
  state.SetItemsProcessed(state.iterations() * c.n_realizations);
}

void BM_MonteCarloParallel(benchmark::State& state) {
  const auto c = bench_config();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hetnet::run_monte_carlo(c, 0.1, threads));
  state.SetItemsProcessed(state.iterations() * c.n_realizations);
}

void BM_CholeskySolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  hetnet::RandomStream rng(3);
  auto q = hetnet::HermitianMatrix::scaled_identity(n, 1e-3);
  for (std::size_t k = 0; k < n; ++k) {
    hetnet::CVector v(n);
    for (auto& x : v) x = rng.complex_normal();
    q.add_outer(1.0, v);
  }
  hetnet::CVector b(n);
  for (auto& x : b) x = rng.complex_normal();
  for (auto _ : state) benchmark::DoNotOptimize(hetnet::hermitian_solve(q, b));
}

}  // namespace

BENCHMARK(BM_MonteCarloSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloParallel)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CholeskySolve)->Arg(4)->Arg(20)->Arg(100);

BENCHMARK_MAIN();
