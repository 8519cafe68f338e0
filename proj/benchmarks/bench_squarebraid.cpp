#include <benchmark/benchmark.h>

#include "squarebraid/hnn.hpp"
#include "squarebraid/homology.hpp"
#include "squarebraid/morse.hpp"
#include "squarebraid/tietze.hpp"

using namespace squarebraid;

static void BM_EnumerateCells(benchmark::State& state) {
  GridGraph g = build_grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  int n = g.p * g.q - 2;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_cells(g, n));
}
BENCHMARK(BM_EnumerateCells)->Args({4, 3})->Args({5, 4})->Args({5, 5})->Args({6, 6});

static void BM_Homology(benchmark::State& state) {
  GridGraph g = build_grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  CubeComplex c = enumerate_cells(g, g.p * g.q - 2);
  for (auto _ : state) benchmark::DoNotOptimize(homology(c));
}
BENCHMARK(BM_Homology)->Args({4, 3})->Args({5, 4})->Args({5, 5})->Args({6, 6});

static void BM_GradientField(benchmark::State& state) {
  GridGraph g = build_grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  CubeComplex c = enumerate_cells(g, g.p * g.q - 2);
  SpanningTree t = build_tree(g);
  for (auto _ : state) benchmark::DoNotOptimize(gradient_field(c, t));
}
BENCHMARK(BM_GradientField)->Args({5, 4})->Args({6, 6});

static void BM_MorseHomology(benchmark::State& state) {
  GridGraph g = build_grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  CubeComplex c = enumerate_cells(g, g.p * g.q - 2);
  GradientField f = gradient_field(c, build_tree(g));
  for (auto _ : state) benchmark::DoNotOptimize(morse_homology(f, c));
}
BENCHMARK(BM_MorseHomology)->Args({5, 4})->Args({6, 6});

static void BM_Pipeline(benchmark::State& state) {
  int p = static_cast<int>(state.range(0)), q = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(p, q));
}
BENCHMARK(BM_Pipeline)->Args({5, 3})->Args({8, 3})->Args({5, 5});

static void BM_VerifyTheorem(benchmark::State& state) {
  int p = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_theorem(p));
}
BENCHMARK(BM_VerifyTheorem)->Arg(6)->Arg(8)->Arg(10);

BENCHMARK_MAIN();
