#include "fcat/cellular.hpp"

#include "fcat/linsys.hpp"
#include "fcat/morvar.hpp"

#include <algorithm>

namespace fcat {

bool all_terms_projective(const Complex& x) {
  for (const Rep& m : x.terms)
    if (!projectivity_certificate(m)) return false;
  return true;
}

namespace {

// Two-term resolution of a single representation placed in degree n.
Replacement resolve_single(const Rep& m, int n) {
  Replacement out;
  const CoverEpi cover = projective_cover(m);
  auto fact = factor_morphism(cover.epi);
  if (fact.kernel.is_zero()) {
    out.cell = Complex::concentrated(cover.cover, n);
    out.qis = ChainMap{out.cell, Complex::concentrated(m, n), {}};
    if (!out.cell.terms.empty()) out.qis.comps.push_back(cover.epi);
    return out;
  }
  auto cert = projectivity_certificate(fact.kernel);
  if (!cert)
    throw InternalError("resolve_single: kernel not projective (hereditary?)");
  // cert : standard sum -> kernel iso; differential = incl o cert.
  const Rep q1 = cert->src;
  out.cell.q = m.q;
  out.cell.lo = n - 1;
  out.cell.terms = {q1, cover.cover};
  out.cell.diffs = {fact.kernel_incl * (*cert)};
  out.qis = ChainMap{out.cell, Complex::concentrated(m, n), {}};
  out.qis.comps = {RepMor::zero(q1, Rep::zero(m.q)), cover.epi};
  return out;
}

// Stupid truncation to degrees >= k.
Complex upper_part(const Complex& x, int k) {
  Complex a;
  a.q = x.q;
  a.lo = k;
  for (int n = k; n <= x.hi(); ++n) a.terms.push_back(x.term(n));
  for (int n = k; n < x.hi(); ++n) a.diffs.push_back(x.diff(n));
  return a;
}

}  // namespace

Replacement cellular_replacement(const Complex& x_in) {
  const Complex x = x_in.trimmed();
  Replacement out;
  if (x.terms.empty()) {
    out.cell = x;
    out.qis = ChainMap::identity(x);
    return out;
  }
  if (all_terms_projective(x)) {
    out.cell = x;
    out.qis = ChainMap::identity(x);
    return out;
  }
  if (x.terms.size() == 1) return resolve_single(x.terms[0], x.lo);

  // Split off the bottom term and glue resolutions along the connecting map.
  const int lo = x.lo;
  const Complex b = Complex::concentrated(x.term(lo), lo);
  const Complex a = upper_part(x, lo + 1);
  const Replacement rb = cellular_replacement(b);
  const Replacement ra = cellular_replacement(a);

  // gamma : B -> A[1] is d^lo in the single overlapping degree.
  const Complex a1 = shift(a, 1);
  ChainMap gamma{b, a1, {}};
  for (int n = b.lo; n <= b.hi(); ++n) {
    RepMor c = RepMor::zero(b.term(n), a1.term(n));
    if (n == lo) c = RepMor{b.term(lo), a1.term(lo), x.diff(lo).comps};
    gamma.comps.push_back(std::move(c));
  }

  const Lift lift = lift_along_qis(gamma * rb.qis, shift(ra.qis, 1));
  // lift.map : PB -> PA[1]; retype as the twisting map.
  const Complex pa1 = shift(ra.cell, 1);
  TwistResult tw = twist(rb.cell, ra.cell, retarget(lift.map, rb.cell, pa1));

  // Comparison into x: q_B on the bottom, q_A - h correction above.
  ChainMap phi{tw.total, x, {}};
  for (int k = tw.total.lo; k <= tw.total.hi(); ++k) {
    const RepSum parts = direct_sum({rb.cell.term(k), ra.cell.term(k)});
    RepMor comp = RepMor::zero(parts.sum, x.term(k));
    if (k == lo) {
      comp = comp + RepMor{rb.cell.term(k), x.term(k), rb.qis.comp(k).comps} *
                        parts.proj[0];
    } else if (k > lo) {
      comp = comp + RepMor{ra.cell.term(k), x.term(k), ra.qis.comp(k).comps} *
                        parts.proj[1];
      // homotopy component h^k : PB^k -> A[1]^{k-1} = A^k.
      comp = comp - RepMor{rb.cell.term(k), x.term(k),
                           lift.homotopy.comp(k).comps} *
                        parts.proj[0];
    }
    phi.comps.push_back(RepMor{tw.total.term(k), x.term(k), comp.comps});
  }
  out.cell = tw.total;
  out.qis = std::move(phi);
  return out;
}

Lift lift_along_qis(const ChainMap& u, const ChainMap& v) {
  const Complex& w = u.src;
  const Complex& z = u.dst;
  const Complex& vv = v.src;
  VarPack vp;
  MorVarSet mv;
  std::vector<int> gslot, hslot;
  for (int n = w.lo; n <= w.hi(); ++n) {
    gslot.push_back(mv.add_slot(vp, w.term(n), vv.term(n)));
    hslot.push_back(mv.add_slot(vp, w.term(n), z.term(n - 1)));
  }
  LinearSystem ls(vp.total);
  for (std::size_t i = 0; i < mv.slots.size(); ++i)
    mv.add_morphism_constraints(ls, vp, static_cast<int>(i));
  const int nv = w.q->num_vertices();
  auto gs = [&](int n) { return gslot[n - w.lo]; };
  auto hs = [&](int n) { return hslot[n - w.lo]; };
  for (int n = w.lo; n <= w.hi(); ++n) {
    // Chain-map condition for g: g^{n+1} d_W - d_V g^n = 0.
    for (int v_i = 0; v_i < nv; ++v_i) {
      const int rows = vv.term(n + 1).dims[v_i] * w.term(n).dims[v_i];
      if (rows > 0) {
        const int base = ls.add_rows(rows);
        if (n + 1 <= w.hi())
          ls.add_xc(base, vp, mv.slots[gs(n + 1)].blocks[v_i],
                    w.diff(n).comps[v_i], Rat(1));
        ls.add_ax(base, vv.diff(n).comps[v_i], vp, mv.slots[gs(n)].blocks[v_i],
                  Rat(-1));
      }
      // v g - u = d_Z h + h d_W, per degree and vertex.
      const int rows2 = z.term(n).dims[v_i] * w.term(n).dims[v_i];
      if (rows2 > 0) {
        const int base = ls.add_rows(rows2);
        ls.add_ax(base, v.comp(n).comps[v_i], vp, mv.slots[gs(n)].blocks[v_i],
                  Rat(1));
        ls.add_ax(base, z.diff(n - 1).comps[v_i], vp,
                  mv.slots[hs(n)].blocks[v_i], Rat(-1));
        if (n + 1 <= w.hi())
          ls.add_xc(base, vp, mv.slots[hs(n + 1)].blocks[v_i],
                    w.diff(n).comps[v_i], Rat(-1));
        ls.add_rhs_mat(base, u.comp(n).comps[v_i], Rat(1));
      }
    }
  }
  auto sol = ls.solve_full();
  if (!sol) throw InternalError("lift_along_qis: infeasible system");
  Lift out{ChainMap{w, vv, {}}, Homotopy{}};
  std::vector<RepMor> hcomps;
  for (int n = w.lo; n <= w.hi(); ++n) {
    out.map.comps.push_back(mv.unpack(gs(n), vp, sol->first));
    hcomps.push_back(mv.unpack(hs(n), vp, sol->first));
  }
  out.homotopy = Homotopy{v * out.map, u, hcomps};
  return out;
}

bool DerivedMor::is_zero() const { return find_null_homotopy(rep).has_value(); }

DerivedMor DerivedMor::operator+(const DerivedMor& o) const {
  DerivedMor r = *this;
  r.rep = rep + o.rep;
  return r;
}

DerivedMor DerivedMor::operator-() const {
  DerivedMor r = *this;
  r.rep = -rep;
  return r;
}

DerivedMor DerivedMor::scaled(const Rat& c) const {
  DerivedMor r = *this;
  r.rep = rep.scaled(c);
  return r;
}

DerivedMor derived_from_chain(const ChainMap& f) {
  DerivedMor d;
  d.src = f.src;
  d.dst = f.dst;
  d.shift_amt = 0;
  Replacement r = cellular_replacement(f.src);
  d.cell = r.cell;
  d.cell_qis = r.qis;
  d.rep = f * r.qis;
  return d;
}

DerivedMor derived_from_chain_shifted(const ChainMap& f, const Complex& dst,
                                      int shift_amt) {
  DerivedMor d;
  d.src = f.src;
  d.dst = dst;
  d.shift_amt = shift_amt;
  Replacement r = cellular_replacement(f.src);
  d.cell = r.cell;
  d.cell_qis = r.qis;
  d.rep = f * r.qis;
  return d;
}

DerivedMor derived_zero(const Complex& src, const Complex& dst, int shift_amt) {
  DerivedMor d;
  d.src = src;
  d.dst = dst;
  d.shift_amt = shift_amt;
  Replacement r = cellular_replacement(src);
  d.cell = r.cell;
  d.cell_qis = r.qis;
  d.rep = ChainMap::zero(d.cell, shift(dst, shift_amt));
  return d;
}

bool derived_equal(const DerivedMor& f, const DerivedMor& g) {
  return find_null_homotopy(f.rep - g.rep).has_value();
}

DerivedMor derived_compose(const DerivedMor& g, const DerivedMor& f) {
  // g : Y -> Z[t], f : X -> Y[s]; result X -> Z[s+t].
  const int s = f.shift_amt;
  DerivedMor out;
  out.src = f.src;
  out.dst = g.dst;
  out.shift_amt = s + g.shift_amt;
  out.cell = f.cell;
  out.cell_qis = f.cell_qis;
  const ChainMap qy_s = shift(g.cell_qis, s);          // cell_Y[s] -> Y[s]
  const Lift lf = lift_along_qis(f.rep, qy_s);         // cell_X -> cell_Y[s]
  const ChainMap grep_s = shift(g.rep, s);             // cell_Y[s] -> Z[t+s]
  out.rep = retarget(grep_s * lf.map, out.cell, shift(out.dst, out.shift_amt));
  return out;
}

DerivedMor derived_shift(const DerivedMor& f, int k) {
  DerivedMor out;
  out.src = shift(f.src, k);
  out.dst = shift(f.dst, k);
  out.shift_amt = f.shift_amt;
  Replacement r = cellular_replacement(out.src);
  out.cell = r.cell;
  out.cell_qis = r.qis;
  // Lift the new replacement against the shifted old one.
  const ChainMap old_q = shift(f.cell_qis, k);  // cell[k] -> src[k]
  const Lift lf = lift_along_qis(r.qis, old_q);
  out.rep = retarget(shift(f.rep, k) * lf.map, out.cell,
                     shift(out.dst, out.shift_amt));
  return out;
}

std::vector<DerivedMor> derived_hom_basis(const Complex& x, const Complex& y,
                                          int shift_amt) {
  Replacement r = cellular_replacement(x);
  const Complex& cell = r.cell;
  const Complex ys = shift(y, shift_amt);
  const int nv = x.q->num_vertices();

  VarPack vp;
  MorVarSet mv;
  std::vector<int> slot;
  for (int n = cell.lo; n <= cell.hi(); ++n)
    slot.push_back(mv.add_slot(vp, cell.term(n), ys.term(n)));
  LinearSystem ls(vp.total);
  for (std::size_t i = 0; i < mv.slots.size(); ++i)
    mv.add_morphism_constraints(ls, vp, static_cast<int>(i));
  for (int n = cell.lo; n <= cell.hi(); ++n) {
    // f^{n+1} d - d f^n = 0.
    for (int v = 0; v < nv; ++v) {
      const int rows = ys.term(n + 1).dims[v] * cell.term(n).dims[v];
      if (rows == 0) continue;
      const int base = ls.add_rows(rows);
      if (n + 1 <= cell.hi())
        ls.add_xc(base, vp, mv.slots[slot[n + 1 - cell.lo]].blocks[v],
                  cell.diff(n).comps[v], Rat(1));
      ls.add_ax(base, ys.diff(n).comps[v], vp,
                mv.slots[slot[n - cell.lo]].blocks[v], Rat(-1));
    }
  }
  const Subspace chain_maps = ls.homogeneous_solutions();

  // Boundaries of degreewise morphism families.
  Subspace boundaries = Subspace::zero(vp.total);
  for (int n = cell.lo; n <= cell.hi(); ++n) {
    for (const RepMor& b : hom_basis(cell.term(n), ys.term(n - 1))) {
      Mat col(vp.total, 1);
      auto put = [&](int at_deg, const RepMor& m) {
        if (at_deg < cell.lo || at_deg > cell.hi()) return;
        const auto& blocks = mv.slots[slot[at_deg - cell.lo]].blocks;
        for (int v = 0; v < nv; ++v)
          for (int i = 0; i < m.comps[v].rows; ++i)
            for (int j = 0; j < m.comps[v].cols; ++j)
              col.at(vp.index(blocks[v], i, j), 0) += m.comps[v].at(i, j);
      };
      put(n, ys.diff(n - 1) * b);
      put(n - 1, b * cell.diff(n - 1));
      boundaries = subspace_sum(boundaries, Subspace::span(vp.total, col));
    }
  }

  // Extend the boundary space to the chain-map space; the added columns
  // are the basis of the quotient.
  std::vector<DerivedMor> out;
  Subspace span = boundaries;
  for (int c = 0; c < chain_maps.dim(); ++c) {
    const Mat col = chain_maps.basis.col(c);
    const Subspace grown = subspace_sum(span, Subspace::span(vp.total, col));
    if (grown.dim() == span.dim()) continue;
    span = grown;
    DerivedMor d;
    d.src = x;
    d.dst = y;
    d.shift_amt = shift_amt;
    d.cell = cell;
    d.cell_qis = r.qis;
    d.rep = ChainMap{cell, ys, {}};
    for (int n = cell.lo; n <= cell.hi(); ++n)
      d.rep.comps.push_back(mv.unpack(slot[n - cell.lo], vp, col));
    out.push_back(std::move(d));
  }
  return out;
}

std::optional<DerivedMor> derived_find_iso(const Complex& x, const Complex& y) {
  const auto basis = derived_hom_basis(x, y, 0);
  if (basis.empty()) {
    if (x.is_zero_object() && y.is_zero_object())
      return derived_zero(x, y, 0);
    return std::nullopt;
  }
  auto good = [&](const DerivedMor& f) {
    // rep : cell(x) -> y; iso in D^b iff it is a quasi-isomorphism.
    return is_qis(f.rep).ok;
  };
  for (const DerivedMor& f : basis)
    if (good(f)) return f;
  DerivedMor sum = basis.front();
  for (std::size_t i = 1; i < basis.size(); ++i) sum = sum + basis[i];
  if (good(sum)) return sum;
  Rng rng(0x150dULL ^ static_cast<std::uint64_t>(basis.size()));
  for (int draw = 0; draw < 96; ++draw) {
    DerivedMor f = basis.front().scaled(Rat(rng.range(-20, 20)));
    for (std::size_t i = 1; i < basis.size(); ++i)
      f = f + basis[i].scaled(Rat(rng.range(-20, 20)));
    if (good(f)) return f;
  }
  return std::nullopt;
}

std::vector<std::vector<Rat>> derived_relation_space(
    const std::vector<DerivedMor>& mors) {
  if (mors.empty()) return {};
  const Complex& cell = mors.front().cell;
  const Complex ys = shift(mors.front().dst, mors.front().shift_amt);
  const int nv = cell.q->num_vertices();
  VarPack vp;
  std::vector<int> coef;
  for (std::size_t i = 0; i < mors.size(); ++i) coef.push_back(vp.add(1, 1));
  MorVarSet mv;
  std::vector<int> hslot;
  for (int n = cell.lo; n <= cell.hi(); ++n)
    hslot.push_back(mv.add_slot(vp, cell.term(n), ys.term(n - 1)));
  LinearSystem ls(vp.total);
  for (std::size_t i = 0; i < mv.slots.size(); ++i)
    mv.add_morphism_constraints(ls, vp, static_cast<int>(i));
  for (int n = cell.lo; n <= cell.hi(); ++n) {
    for (int v = 0; v < nv; ++v) {
      const int rows = ys.term(n).dims[v] * cell.term(n).dims[v];
      if (rows == 0) continue;
      const int base = ls.add_rows(rows);
      for (std::size_t i = 0; i < mors.size(); ++i) {
        const Mat bm = mors[i].rep.comp(n).comps[v];
        for (int r = 0; r < bm.rows; ++r)
          for (int c = 0; c < bm.cols; ++c)
            ls.coeff(base + r * bm.cols + c, vp.index(coef[i], 0, 0),
                     bm.at(r, c));
      }
      ls.add_ax(base, ys.diff(n - 1).comps[v], vp,
                mv.slots[hslot[n - cell.lo]].blocks[v], Rat(1));
      if (n + 1 <= cell.hi())
        ls.add_xc(base, vp, mv.slots[hslot[n + 1 - cell.lo]].blocks[v],
                  cell.diff(n).comps[v], Rat(1));
    }
  }
  const Subspace sols = ls.homogeneous_solutions();
  // Project the solutions onto the coefficient coordinates.
  Mat proj(static_cast<int>(mors.size()), sols.dim());
  for (std::size_t i = 0; i < mors.size(); ++i)
    for (int c = 0; c < sols.dim(); ++c)
      proj.at(static_cast<int>(i), c) =
          sols.basis.at(vp.index(coef[i], 0, 0), c);
  const Subspace cspace = column_space(proj);
  std::vector<std::vector<Rat>> out;
  for (int c = 0; c < cspace.dim(); ++c) {
    std::vector<Rat> row;
    for (std::size_t i = 0; i < mors.size(); ++i)
      row.push_back(cspace.basis.at(static_cast<int>(i), c));
    out.push_back(std::move(row));
  }
  return out;
}

std::optional<std::vector<Rat>> derived_class_coords(
    const DerivedMor& f, const std::vector<DerivedMor>& basis) {
  const Complex& cell = f.cell;
  const Complex ys = shift(f.dst, f.shift_amt);
  const int nv = cell.q->num_vertices();
  VarPack vp;
  std::vector<int> coef;
  for (std::size_t i = 0; i < basis.size(); ++i) coef.push_back(vp.add(1, 1));
  MorVarSet mv;
  std::vector<int> hslot;
  for (int n = cell.lo; n <= cell.hi(); ++n)
    hslot.push_back(mv.add_slot(vp, cell.term(n), ys.term(n - 1)));
  LinearSystem ls(vp.total);
  for (std::size_t i = 0; i < mv.slots.size(); ++i)
    mv.add_morphism_constraints(ls, vp, static_cast<int>(i));
  for (int n = cell.lo; n <= cell.hi(); ++n) {
    for (int v = 0; v < nv; ++v) {
      const int rows = ys.term(n).dims[v] * cell.term(n).dims[v];
      if (rows == 0) continue;
      const int base = ls.add_rows(rows);
      // sum_i c_i b_i + d h + h d = f, entrywise.
      for (std::size_t i = 0; i < basis.size(); ++i) {
        const Mat bm = basis[i].rep.comp(n).comps[v];
        for (int r = 0; r < bm.rows; ++r)
          for (int cjj = 0; cjj < bm.cols; ++cjj)
            ls.coeff(base + r * bm.cols + cjj, vp.index(coef[i], 0, 0),
                     bm.at(r, cjj));
      }
      ls.add_ax(base, ys.diff(n - 1).comps[v], vp,
                mv.slots[hslot[n - cell.lo]].blocks[v], Rat(1));
      if (n + 1 <= cell.hi())
        ls.add_xc(base, vp, mv.slots[hslot[n + 1 - cell.lo]].blocks[v],
                  cell.diff(n).comps[v], Rat(1));
      ls.add_rhs_mat(base, f.rep.comp(n).comps[v], Rat(1));
    }
  }
  auto sol = ls.solve_full();
  if (!sol) return std::nullopt;
  std::vector<Rat> out;
  for (std::size_t i = 0; i < basis.size(); ++i)
    out.push_back(sol->first.at(vp.index(coef[i], 0, 0), 0));
  return out;
}

}  // namespace fcat
