#pragma once

#include "fcat/filtered.hpp"
#include "fcat/linsys.hpp"
#include "fcat/morvar.hpp"

// Shared desk fixtures over the A2 quiver 1 -> 2 and the linear A3 quiver.
namespace fix {

using namespace fcat;

inline QuiverPtr a2() {
  static QuiverPtr q = make_quiver({"1", "2"}, {{"1", "2", "a"}});
  return q;
}

inline QuiverPtr a3() {
  static QuiverPtr q =
      make_quiver({"1", "2", "3"}, {{"1", "2", "a"}, {"2", "3", "b"}});
  return q;
}

inline Rep s1() { return Rep::simple(a2(), 0); }
inline Rep s2() { return Rep::simple(a2(), 1); }

inline Rep p1() {
  Rep m;
  m.q = a2();
  m.dims = {1, 1};
  m.maps = {Mat::identity(1)};
  return m;
}

inline TorsionPair tilt_pos() {
  return TorsionPair{{s1(), p1()}, {"S1", "P1"}};
}

inline TorsionPair tilt_neg() { return TorsionPair{{s2()}, {"S2"}}; }

// P1 in degree 0 filtered by F^0 = P1, F^1 = (0, Q), F^2 = 0.
inline FilteredComplex x_filt() {
  FilteredComplex f;
  f.underlying = Complex::concentrated(p1(), 0);
  f.flo = 0;
  SubRep mid{p1(), {Subspace::zero(1), Subspace::full(1)}};
  f.layers = {{SubRep::full(p1())}, {mid}, {SubRep::zero(p1())}};
  return f;
}

// Random representation with dims <= max_dim, arrow maps solved to be
// arbitrary (any matrices commute; reps have no constraints).
inline Rep random_rep(const QuiverPtr& q, Rng& rng, int max_dim) {
  Rep m;
  m.q = q;
  for (int v = 0; v < q->num_vertices(); ++v)
    m.dims.push_back(static_cast<int>(rng.range(0, max_dim)));
  for (int a = 0; a < q->num_arrows(); ++a) {
    const auto& ar = q->arrows[a];
    Mat mm(m.dims[ar.dst], m.dims[ar.src]);
    for (Rat& x : mm.a) x = Rat(rng.range(-2, 2));
    m.maps.push_back(std::move(mm));
  }
  return m;
}

inline Mat random_mat(Rng& rng, int rows, int cols, long lo = -4, long hi = 4) {
  Mat m(rows, cols);
  for (Rat& x : m.a) x = Rat(rng.range(lo, hi));
  return m;
}

// Morphisms src -> dst with f * prev == 0 (prev: W -> src), as a basis.
inline std::vector<RepMor> relative_hom_basis(const Rep& src, const Rep& dst,
                                              const RepMor* prev) {
  VarPack vp;
  MorVarSet mv;
  const int slot = mv.add_slot(vp, src, dst);
  LinearSystem ls(vp.total);
  mv.add_morphism_constraints(ls, vp, slot);
  if (prev) {
    const int nv = src.q->num_vertices();
    for (int v = 0; v < nv; ++v) {
      const int rows = dst.dims[v] * prev->src.dims[v];
      if (rows == 0) continue;
      const int base = ls.add_rows(rows);
      ls.add_xc(base, vp, mv.slots[slot].blocks[v], prev->comps[v], Rat(1));
    }
  }
  const Subspace sols = ls.homogeneous_solutions();
  std::vector<RepMor> out;
  for (int c = 0; c < sols.dim(); ++c)
    out.push_back(mv.unpack(slot, vp, sols.basis.col(c)));
  return out;
}

// Random bounded complex: terms at degrees lo..lo+len-1, differentials
// sampled from the d^2 = 0 solution spaces.
inline Complex random_complex(const QuiverPtr& q, Rng& rng, int max_dim,
                              int len, int lo = 0) {
  Complex x;
  x.q = q;
  x.lo = lo;
  for (int i = 0; i < len; ++i) x.terms.push_back(random_rep(q, rng, max_dim));
  const RepMor* prev = nullptr;
  for (int i = 0; i + 1 < len; ++i) {
    auto basis = relative_hom_basis(x.terms[i], x.terms[i + 1], prev);
    RepMor d = RepMor::zero(x.terms[i], x.terms[i + 1]);
    for (const RepMor& b : basis) d = d + b.scaled(Rat(rng.range(-2, 2)));
    x.diffs.push_back(d);
    prev = &x.diffs.back();
  }
  return x;
}

}  // namespace fix
