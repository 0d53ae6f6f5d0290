#include <benchmark/benchmark.h>

#include "fcat/realization.hpp"

using namespace fcat;

namespace {

QuiverPtr a2() {
  static QuiverPtr q = make_quiver({"1", "2"}, {{"1", "2", "a"}});
  return q;
}

Rep p1_rep() {
  Rep m;
  m.q = a2();
  m.dims = {1, 1};
  m.maps = {Mat::identity(1)};
  return m;
}

TStructureSpec pos_t() {
  return TStructureSpec::tilted(
      TorsionPair{{Rep::simple(a2(), 0), p1_rep()}, {"S1", "P1"}});
}

HeartComplex extension_complex() {
  const Complex cs1 = Complex::concentrated(Rep::simple(a2(), 0), 0);
  const Complex cs2_1 = Complex::concentrated(Rep::simple(a2(), 1), -1);
  HeartComplex k;
  k.t = pos_t();
  k.lo = 0;
  k.terms = {make_heart_object(cs1, k.t), make_heart_object(cs2_1, k.t)};
  k.diffs = {derived_hom_basis(cs1, cs2_1, 0).at(0)};
  return k;
}

void bm_cellular_replacement(benchmark::State& state) {
  const Complex x = Complex::concentrated(Rep::simple(a2(), 0), 0);
  for (auto _ : state) benchmark::DoNotOptimize(cellular_replacement(x));
}

void bm_derived_hom(benchmark::State& state) {
  const Complex cs1 = Complex::concentrated(Rep::simple(a2(), 0), 0);
  const Complex cs2 = Complex::concentrated(Rep::simple(a2(), 1), 0);
  for (auto _ : state)
    benchmark::DoNotOptimize(derived_hom_basis(cs1, cs2, 1));
}

void bm_cellularize_random(benchmark::State& state) {
  const CellularFiltered s =
      gen_random_cellular(a2(), static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(cellularize_filtered(s.fc));
}

void bm_real_extension(benchmark::State& state) {
  const HeartComplex k = extension_complex();
  for (auto _ : state) benchmark::DoNotOptimize(real_functor(k));
}

void bm_eta_round_trip(benchmark::State& state) {
  const HeartComplex k = extension_complex();
  for (auto _ : state) {
    const Tower tw = eta_inverse(k);
    benchmark::DoNotOptimize(eta(tw.cell.fc, k.t));
  }
}

}  // namespace

BENCHMARK(bm_cellular_replacement);
BENCHMARK(bm_derived_hom);
BENCHMARK(bm_cellularize_random)->Arg(1)->Arg(5);
BENCHMARK(bm_real_extension);
BENCHMARK(bm_eta_round_trip);
