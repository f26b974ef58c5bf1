#include <benchmark/benchmark.h>

#include <vector>

#include "hcrystal/observables.hpp"
#include "hcrystal/spectrum.hpp"
#include "hcrystal/symmetrization.hpp"
#include "hcrystal/wavefunctions.hpp"

using namespace hcrystal;

static void BM_HermiteFill(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const HermiteEvaluator h(degree);
  std::vector<double> row(degree + 1);
  double x = -4.9;
  for (auto _ : state) {
    h.fill(x, row);
    benchmark::DoNotOptimize(row.data());
    x = x > 4.9 ? -4.9 : x + 0.14;
  }
  state.SetItemsProcessed(state.iterations() * (degree + 1));
}
BENCHMARK(BM_HermiteFill)->Arg(64)->Arg(1024)->Arg(5000);

static void BM_LevelTable(benchmark::State& state) {
  const auto s = diagonalize(CrystalParams(static_cast<int>(state.range(0)), 1.0, 1.0, 1.0));
  for (auto _ : state) {
    auto t = build_level_table(s, static_cast<std::size_t>(state.range(1)));
    benchmark::DoNotOptimize(t.size());
  }
}
BENCHMARK(BM_LevelTable)->Args({4, 5000})->Args({5, 5000})->Unit(benchmark::kMillisecond);

// One quadrature pass over a small grid; the per-node cost is what matters.
static void BM_Overlaps(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CrystalParams p(n, 0.0, 1.0, 0.1);
  const auto s = diagonalize(p);
  const auto t = build_level_table(s, static_cast<std::size_t>(state.range(1)));
  const auto perms = enumerate_permutations(n, 2);
  const QuadratureGrid grid(n == 4 ? 21 : 41, n == 4 ? 0.48 : 0.24, n);
  SymmetrizationOptions o;
  o.workers = 1;
  for (auto _ : state) {
    auto r = compute_overlaps(t, perms, grid, s, p, o);
    benchmark::DoNotOptimize(r.overlap(0, 0));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.total_points()));
}
BENCHMARK(BM_Overlaps)->Args({3, 500})->Args({4, 1000})->Unit(benchmark::kMillisecond);

static void BM_ThermalSweep(benchmark::State& state) {
  const auto t = build_level_table(diagonalize(CrystalParams(4, 1.0, 1.0, 1.0)), 5000);
  const std::vector<double> chi(t.size(), 1.0);
  const auto betas = log_spaced(0.05, 10.0, 60);
  for (auto _ : state) {
    for (double b : betas) benchmark::DoNotOptimize(thermal_point(t, chi, chi, b));
  }
}
BENCHMARK(BM_ThermalSweep)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
