#include <benchmark/benchmark.h>

#include "fcat/matrix.hpp"

using namespace fcat;

namespace {

Mat random_matrix(Rng& rng, int n, int m) {
  Mat a(n, m);
  for (Rat& x : a.a) x = rat(rng.range(-9, 9), rng.range(1, 4));
  return a;
}

void bm_rref(benchmark::State& state) {
  Rng rng(7);
  const int n = static_cast<int>(state.range(0));
  const Mat a = random_matrix(rng, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(rref(a));
}

void bm_solve(benchmark::State& state) {
  Rng rng(11);
  const int n = static_cast<int>(state.range(0));
  const Mat a = random_matrix(rng, n, n);
  const Mat x = random_matrix(rng, n, 2);
  const Mat b = a * x;
  for (auto _ : state) benchmark::DoNotOptimize(solve(a, b));
}

void bm_subspace_ops(benchmark::State& state) {
  Rng rng(13);
  const int n = static_cast<int>(state.range(0));
  const Subspace u = Subspace::span(n, random_matrix(rng, n, n / 2));
  const Subspace v = Subspace::span(n, random_matrix(rng, n, n / 2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(subspace_sum(u, v));
    benchmark::DoNotOptimize(subspace_intersection(u, v));
  }
}

}  // namespace

BENCHMARK(bm_rref)->Arg(8)->Arg(24)->Arg(64);
BENCHMARK(bm_solve)->Arg(8)->Arg(24)->Arg(64);
BENCHMARK(bm_subspace_ops)->Arg(8)->Arg(32);

BENCHMARK_MAIN();
