#include "fcat/filtered.hpp"

#include "fcat/linsys.hpp"
#include "fcat/morvar.hpp"

#include <algorithm>

namespace fcat {

SubRep FilteredComplex::layer(int p, int k) const {
  const Rep t = underlying.term(k);
  if (p <= flo) return SubRep::full(t);
  if (p >= fhi()) return SubRep::zero(t);
  if (!underlying.in_window(k)) return SubRep::zero(t);
  return layers[p - flo][k - underlying.lo];
}

void FilteredComplex::check() const {
  underlying.check();
  if (layers.size() < 2)
    throw ContractError("FilteredComplex: need at least the full and zero layers");
  const int nv = underlying.q->num_vertices();
  for (int p = flo; p <= fhi(); ++p) {
    for (int k = underlying.lo; k <= underlying.hi(); ++k) {
      const SubRep s = layer(p, k);
      if (!(s.ambient == underlying.term(k)))
        throw ContractError("FilteredComplex: layer ambient mismatch");
      s.check();
      if (p == flo && !s.is_full())
        throw ContractError("FilteredComplex: F^flo must be everything");
      if (p == fhi() && !s.is_zero())
        throw ContractError("FilteredComplex: F^fhi must be zero");
      if (p > flo) {
        const SubRep prev = layer(p - 1, k);
        for (int v = 0; v < nv; ++v)
          if (!prev.spaces[v].contains(s.spaces[v]))
            throw ContractError("FilteredComplex: filtration not decreasing");
      }
      // d preserves the layer.
      const RepMor d = underlying.diff(k);
      const SubRep next = layer(p, k + 1);
      for (int v = 0; v < nv; ++v)
        if (!next.spaces[v].contains_all(d.comps[v] * s.spaces[v].basis))
          throw ContractError("FilteredComplex: layer not a subcomplex");
    }
  }
}

FilteredComplex FilteredComplex::normalized() const {
  FilteredComplex out;
  out.underlying = underlying.trimmed();
  // Re-slice layers onto the trimmed window.
  int a = flo, b = fhi();
  auto layer_full = [&](int p) {
    for (int k = out.underlying.lo; k <= out.underlying.hi(); ++k)
      if (!layer(p, k).is_full()) return false;
    return true;
  };
  auto layer_zero = [&](int p) {
    for (int k = out.underlying.lo; k <= out.underlying.hi(); ++k)
      if (!layer(p, k).is_zero()) return false;
    return true;
  };
  while (a + 1 < b && layer_full(a + 1)) ++a;
  while (b - 1 > a && layer_zero(b - 1)) --b;
  out.flo = a;
  for (int p = a; p <= b; ++p) {
    std::vector<SubRep> row;
    for (int k = out.underlying.lo; k <= out.underlying.hi(); ++k) {
      SubRep s = layer(p, k);
      s.ambient = out.underlying.term(k);
      row.push_back(std::move(s));
    }
    out.layers.push_back(std::move(row));
  }
  return out;
}

bool FilteredComplex::operator==(const FilteredComplex& o) const {
  const FilteredComplex a = normalized(), b = o.normalized();
  return a.underlying == b.underlying && a.flo == b.flo && a.layers == b.layers;
}

FilteredComplex trivially_filtered(const Complex& x, int level) {
  FilteredComplex f;
  f.underlying = x;
  f.flo = level;
  std::vector<SubRep> full_row, zero_row;
  for (int k = x.lo; k <= x.hi(); ++k) {
    full_row.push_back(SubRep::full(x.term(k)));
    zero_row.push_back(SubRep::zero(x.term(k)));
  }
  f.layers = {full_row, zero_row};
  return f;
}

FilteredComplex filt_shift_s(const FilteredComplex& x, int n) {
  FilteredComplex f = x;
  f.flo = x.flo + n;
  return f;
}

void FilteredMap::check() const {
  if (!(chain.src == src.underlying) || !(chain.dst == dst.underlying))
    throw ContractError("FilteredMap: chain endpoints");
  chain.check();
  const int nv = src.underlying.q->num_vertices();
  const int plo = std::min(src.flo, dst.flo);
  const int phi = std::max(src.fhi(), dst.fhi());
  for (int p = plo; p <= phi; ++p)
    for (int k = src.underlying.lo; k <= src.underlying.hi(); ++k) {
      const SubRep s = src.layer(p, k);
      const SubRep d = dst.layer(p, k);
      for (int v = 0; v < nv; ++v)
        if (!d.spaces[v].contains_all(chain.comp(k).comps[v] *
                                      s.spaces[v].basis))
          throw ContractError("FilteredMap: filtration not respected");
    }
}

FilteredMap iota(const FilteredComplex& x) {
  FilteredMap f{x, filt_shift_s(x, 1), ChainMap::identity(x.underlying)};
  return f;
}

Complex omega(const FilteredComplex& x) { return x.underlying; }
ChainMap omega_map(const FilteredMap& f) { return f.chain; }

namespace {

// Canonical subquotient Upper/Lower of the underlying complex, for two
// nested stable families of subrepresentations.
struct SubQuotient {
  Complex sub;    // Upper as a complex
  ChainMap incl;  // sub -> underlying
  Complex quot;   // Upper / Lower
  ChainMap to_quot;  // sub -> quot (degreewise epi)
  std::vector<std::vector<Mat>> sections;  // [degree-offset][vertex]
};

SubQuotient build_subquotient(
    const Complex& x, const std::function<SubRep(int)>& upper,
    const std::function<SubRep(int)>& lower) {
  SubQuotient out;
  const int nv = x.q->num_vertices();
  out.sub.q = x.q;
  out.quot.q = x.q;
  out.sub.lo = x.lo;
  out.quot.lo = x.lo;
  std::vector<SubRepEmbedding> embs;
  std::vector<QuotientRep> quots;
  for (int k = x.lo; k <= x.hi(); ++k) {
    const SubRep up = upper(k);
    auto emb = sub_to_rep(up);
    // Lower expressed inside Upper coordinates.
    SubRep low_in{emb.rep, {}};
    const SubRep low = lower(k);
    for (int v = 0; v < nv; ++v)
      low_in.spaces.push_back(Subspace::span(
          emb.rep.dims[v],
          coordinates_in(up.spaces[v], low.spaces[v].basis)));
    auto q = quotient_rep(emb.rep, low_in);
    out.sub.terms.push_back(emb.rep);
    out.quot.terms.push_back(q.rep);
    embs.push_back(std::move(emb));
    quots.push_back(std::move(q));
  }
  for (int k = x.lo; k < x.hi(); ++k) {
    const int i = k - x.lo;
    // d restricted to Upper.
    RepMor dsub{out.sub.terms[i], out.sub.terms[i + 1], {}};
    for (int v = 0; v < nv; ++v)
      dsub.comps.push_back(coordinates_in(
          upper(k + 1).spaces[v],
          x.diff(k).comps[v] * embs[i].incl.comps[v]));
    // Descend to the quotient.
    RepMor dq{out.quot.terms[i], out.quot.terms[i + 1], {}};
    for (int v = 0; v < nv; ++v)
      dq.comps.push_back(quots[i + 1].proj.comps[v] * dsub.comps[v] *
                         quots[i].sections[v]);
    out.sub.diffs.push_back(std::move(dsub));
    out.quot.diffs.push_back(std::move(dq));
  }
  out.incl = ChainMap{out.sub, x, {}};
  out.to_quot = ChainMap{out.sub, out.quot, {}};
  for (int k = x.lo; k <= x.hi(); ++k) {
    const int i = k - x.lo;
    out.incl.comps.push_back(embs[i].incl);
    out.to_quot.comps.push_back(quots[i].proj);
    out.sections.push_back(quots[i].sections);
  }
  return out;
}

SubQuotient layer_subquotient(const FilteredComplex& x, int a, int b) {
  return build_subquotient(
      x.underlying, [&](int k) { return x.layer(a, k); },
      [&](int k) { return x.layer(b, k); });
}

}  // namespace

Complex gr_complex(const FilteredComplex& x, int n) {
  return layer_subquotient(x, n, n + 1).quot;
}

ChainMap gr_map(const FilteredMap& f, int n) {
  SubQuotient s = layer_subquotient(f.src, n, n + 1);
  SubQuotient d = layer_subquotient(f.dst, n, n + 1);
  ChainMap g{s.quot, d.quot, {}};
  const int nv = f.src.underlying.q->num_vertices();
  for (int k = f.src.underlying.lo; k <= f.src.underlying.hi(); ++k) {
    const int i = k - f.src.underlying.lo;
    RepMor comp{s.quot.term(k), d.quot.term(k), {}};
    for (int v = 0; v < nv; ++v) {
      if (!d.quot.in_window(k)) {
        comp.comps.push_back(
            Mat(d.quot.term(k).dims[v], s.quot.term(k).dims[v]));
        continue;
      }
      const Mat carried = f.chain.comp(k).comps[v] * s.incl.comps[i].comps[v] *
                          s.sections[i][v];
      const Mat in_upper =
          coordinates_in(f.dst.layer(n, k).spaces[v], carried);
      comp.comps.push_back(d.to_quot.comps[k - f.dst.underlying.lo].comps[v] *
                           in_upper);
    }
    g.comps.push_back(std::move(comp));
  }
  return g;
}

bool in_cf_le(const FilteredComplex& x, int n) {
  for (int p = std::max(n + 1, x.gr_lo()); p <= x.gr_hi(); ++p)
    if (!acyclic(gr_complex(x, p))) return false;
  return true;
}

bool in_cf_ge(const FilteredComplex& x, int n) {
  for (int p = x.gr_lo(); p <= std::min(n - 1, x.gr_hi()); ++p)
    if (!acyclic(gr_complex(x, p))) return false;
  return true;
}

SigmaResult sigma(const FilteredComplex& x, int n) {
  SigmaResult out;
  const int nv = x.underlying.q->num_vertices();
  SubQuotient up = build_subquotient(
      x.underlying, [&](int k) { return x.layer(n + 1, k); },
      [&](int k) { return SubRep::zero(x.underlying.term(k)); });
  // ge = F^{n+1} with the induced filtration.
  out.ge.underlying = up.sub;
  out.ge.flo = n + 1;
  {
    const int top = std::max(x.fhi(), n + 2);
    for (int p = n + 1; p <= top; ++p) {
      std::vector<SubRep> row;
      for (int k = up.sub.lo; k <= up.sub.hi(); ++k) {
        SubRep s{up.sub.term(k), {}};
        for (int v = 0; v < nv; ++v) {
          if (p == n + 1) {
            s.spaces.push_back(Subspace::full(up.sub.term(k).dims[v]));
          } else {
            s.spaces.push_back(Subspace::span(
                up.sub.term(k).dims[v],
                coordinates_in(x.layer(n + 1, k).spaces[v],
                               x.layer(p, k).spaces[v].basis)));
          }
        }
        row.push_back(std::move(s));
      }
      out.ge.layers.push_back(std::move(row));
    }
  }
  out.ge_to_x = FilteredMap{out.ge, x, up.incl};

  // le = X / F^{n+1} with the image filtration.
  SubQuotient lq = build_subquotient(
      x.underlying, [&](int k) { return SubRep::full(x.underlying.term(k)); },
      [&](int k) { return x.layer(n + 1, k); });
  out.le.underlying = lq.quot;
  out.le.flo = std::min(x.flo, n);
  {
    for (int p = out.le.flo; p <= n + 1; ++p) {
      std::vector<SubRep> row;
      for (int k = lq.quot.lo; k <= lq.quot.hi(); ++k) {
        SubRep s{lq.quot.term(k), {}};
        const int i = k - x.underlying.lo;
        for (int v = 0; v < nv; ++v)
          s.spaces.push_back(Subspace::span(
              lq.quot.term(k).dims[v],
              lq.to_quot.comps[i].comps[v] * x.layer(p, k).spaces[v].basis));
        row.push_back(std::move(s));
      }
      out.le.layers.push_back(std::move(row));
    }
  }
  // Upper is the full subrepresentation, whose canonical embedding is the
  // identity, so to_quot applies directly to x coordinates.
  ChainMap proj{x.underlying, lq.quot, {}};
  for (int k = x.underlying.lo; k <= x.underlying.hi(); ++k) {
    const int i = k - x.underlying.lo;
    RepMor comp{x.underlying.term(k), lq.quot.term(k), {}};
    for (int v = 0; v < nv; ++v)
      comp.comps.push_back(lq.to_quot.comps[i].comps[v]);
    proj.comps.push_back(std::move(comp));
  }
  out.x_to_le = FilteredMap{x, out.le, proj};
  return out;
}

FilteredComplex filtered_cone(const FilteredMap& f) {
  const ConeResult c = cone(f.chain);
  FilteredComplex out;
  out.underlying = c.cone;
  out.flo = std::min(f.src.flo, f.dst.flo);
  const int top = std::max(f.src.fhi(), f.dst.fhi());
  const int nv = c.cone.q->num_vertices();
  for (int p = out.flo; p <= top; ++p) {
    std::vector<SubRep> row;
    for (int k = c.cone.lo; k <= c.cone.hi(); ++k) {
      const RepSum parts =
          direct_sum({f.src.underlying.term(k + 1), f.dst.underlying.term(k)});
      SubRep s{c.cone.term(k), {}};
      for (int v = 0; v < nv; ++v) {
        const Mat a =
            parts.inj[0].comps[v] * f.src.layer(p, k + 1).spaces[v].basis;
        const Mat b =
            parts.inj[1].comps[v] * f.dst.layer(p, k).spaces[v].basis;
        s.spaces.push_back(Subspace::span(c.cone.term(k).dims[v], hcat(a, b)));
      }
      row.push_back(std::move(s));
    }
    out.layers.push_back(std::move(row));
  }
  return out;
}

bool filtered_is_qis(const FilteredMap& f) {
  const int a = std::min(f.src.gr_lo(), f.dst.gr_lo());
  const int b = std::max(f.src.gr_hi(), f.dst.gr_hi());
  for (int n = a; n <= b; ++n)
    if (!is_qis(gr_map(f, n)).ok) return false;
  return true;
}

TwoStepData two_step(const FilteredComplex& x, int n) {
  TwoStepData out;
  const int nv = x.underlying.q->num_vertices();
  SubQuotient w = layer_subquotient(x, n, n + 2);
  SubQuotient t = layer_subquotient(x, n + 1, n + 2);
  SubQuotient g = layer_subquotient(x, n, n + 1);
  out.w = w.quot;
  // gr^{n+1} -> W : representatives of F^{n+1} mapped into F^n coordinates.
  out.sub_incl = ChainMap{t.quot, w.quot, {}};
  for (int k = x.underlying.lo; k <= x.underlying.hi(); ++k) {
    const int i = k - x.underlying.lo;
    RepMor comp{t.quot.term(k), w.quot.term(k), {}};
    for (int v = 0; v < nv; ++v) {
      const Mat c = coordinates_in(x.layer(n, k).spaces[v],
                                   x.layer(n + 1, k).spaces[v].basis);
      comp.comps.push_back(w.to_quot.comps[i].comps[v] * c *
                           t.sections[i][v]);
    }
    out.sub_incl.comps.push_back(std::move(comp));
  }
  // W -> gr^n : quotient further by F^{n+1}.
  out.quot_proj = ChainMap{w.quot, g.quot, {}};
  for (int k = x.underlying.lo; k <= x.underlying.hi(); ++k) {
    const int i = k - x.underlying.lo;
    RepMor comp{w.quot.term(k), g.quot.term(k), {}};
    for (int v = 0; v < nv; ++v)
      comp.comps.push_back(g.to_quot.comps[i].comps[v] * w.sections[i][v]);
    out.quot_proj.comps.push_back(std::move(comp));
  }
  return out;
}

bool is_cellular(const FilteredComplex& x) {
  for (int n = x.gr_lo(); n <= x.gr_hi(); ++n)
    if (!all_terms_projective(gr_complex(x, n))) return false;
  return true;
}

CellularFiltered make_cellular_checked(const FilteredComplex& x) {
  if (!is_cellular(x))
    throw ContractError("make_cellular_checked: graded terms not projective");
  return CellularFiltered{x};
}

FilteredTwist filtered_twist(const Complex& b, int level,
                             const FilteredComplex& a, const ChainMap& gamma) {
  if (a.flo <= level)
    throw ContractError("filtered_twist: sub must sit strictly above level");
  TwistResult tw = twist(b, a.underlying, gamma);
  FilteredTwist out;
  out.total.underlying = tw.total;
  out.total.flo = level;
  const int nv = b.q->num_vertices();
  const int top = std::max(a.fhi(), level + 1);
  for (int p = level; p <= top; ++p) {
    std::vector<SubRep> row;
    for (int k = tw.total.lo; k <= tw.total.hi(); ++k) {
      SubRep s{tw.total.term(k), {}};
      const RepSum parts = direct_sum({b.term(k), a.underlying.term(k)});
      for (int v = 0; v < nv; ++v) {
        if (p <= level) {
          s.spaces.push_back(Subspace::full(tw.total.term(k).dims[v]));
        } else {
          s.spaces.push_back(Subspace::span(
              tw.total.term(k).dims[v],
              parts.inj[1].comps[v] * a.layer(p, k).spaces[v].basis));
        }
      }
      row.push_back(std::move(s));
    }
    out.total.layers.push_back(std::move(row));
  }
  out.sub_incl = FilteredMap{a, out.total, tw.sub_incl};
  out.quot_proj =
      FilteredMap{out.total, trivially_filtered(b, level), tw.quot_proj};
  return out;
}

namespace {

// Variable layout for filtration-respecting chain maps x -> y[shift] and
// their homotopies; shared by basis and coordinate computations.
struct FiltHomProblem {
  const FilteredComplex& x;
  const FilteredComplex& y;
  int shift_amt;
  Complex ys;
  VarPack vp;
  MorVarSet mv;
  std::vector<int> fslot;  // per degree of x window

  FiltHomProblem(const FilteredComplex& x_, const FilteredComplex& y_, int s)
      : x(x_), y(y_), shift_amt(s), ys(shift(y_.underlying, s)) {
    for (int k = x.underlying.lo; k <= x.underlying.hi(); ++k)
      fslot.push_back(mv.add_slot(vp, x.underlying.term(k), ys.term(k)));
  }

  // Filtration constraints for one unknown slot mapping degree k of x to
  // degree k+delta of y (delta = 0 for map components, -1 for homotopies).
  void add_filtration_rows(LinearSystem& ls, int slot, int k, int delta) {
    const int nv = x.underlying.q->num_vertices();
    const int plo = std::min(x.flo, y.flo);
    const int phi = std::max(x.fhi(), y.fhi());
    for (int p = plo; p <= phi; ++p) {
      // y is consumed in its shifted form: layer at original degree.
      const SubRep sx = x.layer(p, k);
      const SubRep sy = y.layer(p, k + delta + shift_amt);
      for (int v = 0; v < nv; ++v) {
        if (sx.spaces[v].dim() == 0 || sy.spaces[v].is_full()) continue;
        const ComplementData cd = complement(sy.spaces[v]);
        const int rows = cd.proj.rows * sx.spaces[v].dim();
        if (rows == 0) continue;
        const int base = ls.add_rows(rows);
        ls.add_axc(base, cd.proj, vp, mv.slots[slot].blocks[v],
                   sx.spaces[v].basis, Rat(1));
      }
    }
  }
};

}  // namespace

std::vector<ChainMap> filtered_hom_basis(const CellularFiltered& xc,
                                         const FilteredComplex& y,
                                         int shift_amt) {
  const FilteredComplex& x = xc.fc;
  FiltHomProblem pb(x, y, shift_amt);
  const Complex& xu = x.underlying;
  const int nv = xu.q->num_vertices();
  LinearSystem ls(pb.vp.total);
  for (std::size_t i = 0; i < pb.mv.slots.size(); ++i)
    pb.mv.add_morphism_constraints(ls, pb.vp, static_cast<int>(i));
  for (int k = xu.lo; k <= xu.hi(); ++k) {
    pb.add_filtration_rows(ls, pb.fslot[k - xu.lo], k, 0);
    // Chain condition f^{k+1} d - d f^k = 0.
    for (int v = 0; v < nv; ++v) {
      const int rows = pb.ys.term(k + 1).dims[v] * xu.term(k).dims[v];
      if (rows == 0) continue;
      const int base = ls.add_rows(rows);
      if (k + 1 <= xu.hi())
        ls.add_xc(base, pb.vp, pb.mv.slots[pb.fslot[k + 1 - xu.lo]].blocks[v],
                  xu.diff(k).comps[v], Rat(1));
      ls.add_ax(base, pb.ys.diff(k).comps[v], pb.vp,
                pb.mv.slots[pb.fslot[k - xu.lo]].blocks[v], Rat(-1));
    }
  }
  const Subspace chain_maps = ls.homogeneous_solutions();

  // Boundaries of filtration-respecting homotopies, degree by degree.
  Subspace boundaries = Subspace::zero(pb.vp.total);
  for (int k = xu.lo; k <= xu.hi(); ++k) {
    // Basis of filtered Hom_A(x^k, ys^{k-1}).
    VarPack hvp;
    MorVarSet hmv;
    const int hslot = hmv.add_slot(hvp, xu.term(k), pb.ys.term(k - 1));
    LinearSystem hls(hvp.total);
    hmv.add_morphism_constraints(hls, hvp, hslot);
    {
      const int plo = std::min(x.flo, y.flo);
      const int phi = std::max(x.fhi(), y.fhi());
      for (int p = plo; p <= phi; ++p) {
        const SubRep sx = x.layer(p, k);
        const SubRep sy = y.layer(p, k - 1 + shift_amt);
        for (int v = 0; v < nv; ++v) {
          if (sx.spaces[v].dim() == 0 || sy.spaces[v].is_full()) continue;
          const ComplementData cd = complement(sy.spaces[v]);
          const int rows = cd.proj.rows * sx.spaces[v].dim();
          if (rows == 0) continue;
          const int base = hls.add_rows(rows);
          hls.add_axc(base, cd.proj, hvp, hmv.slots[hslot].blocks[v],
                      sx.spaces[v].basis, Rat(1));
        }
      }
    }
    const Subspace hsols = hls.homogeneous_solutions();
    for (int c = 0; c < hsols.dim(); ++c) {
      const RepMor b = hmv.unpack(hslot, hvp, hsols.basis.col(c));
      Mat col(pb.vp.total, 1);
      auto put = [&](int deg, const RepMor& m) {
        if (deg < xu.lo || deg > xu.hi()) return;
        const auto& blocks = pb.mv.slots[pb.fslot[deg - xu.lo]].blocks;
        for (int v = 0; v < nv; ++v)
          for (int i = 0; i < m.comps[v].rows; ++i)
            for (int j = 0; j < m.comps[v].cols; ++j)
              col.at(pb.vp.index(blocks[v], i, j), 0) += m.comps[v].at(i, j);
      };
      put(k, pb.ys.diff(k - 1) * b);
      put(k - 1, b * xu.diff(k - 1));
      boundaries = subspace_sum(boundaries, Subspace::span(pb.vp.total, col));
    }
  }

  std::vector<ChainMap> out;
  Subspace span = boundaries;
  for (int c = 0; c < chain_maps.dim(); ++c) {
    const Mat col = chain_maps.basis.col(c);
    const Subspace grown =
        subspace_sum(span, Subspace::span(pb.vp.total, col));
    if (grown.dim() == span.dim()) continue;
    span = grown;
    ChainMap f{xu, pb.ys, {}};
    for (int k = xu.lo; k <= xu.hi(); ++k)
      f.comps.push_back(pb.mv.unpack(pb.fslot[k - xu.lo], pb.vp, col));
    out.push_back(std::move(f));
  }
  return out;
}

std::optional<std::vector<Rat>> filtered_hom_coords(
    const CellularFiltered& xc, const FilteredComplex& y, int shift_amt,
    const std::vector<ChainMap>& basis, const ChainMap& g) {
  const FilteredComplex& x = xc.fc;
  const Complex& xu = x.underlying;
  const Complex ys = shift(y.underlying, shift_amt);
  const int nv = xu.q->num_vertices();
  VarPack vp;
  std::vector<int> coef;
  for (std::size_t i = 0; i < basis.size(); ++i) coef.push_back(vp.add(1, 1));
  MorVarSet mv;
  std::vector<int> hslot;
  for (int k = xu.lo; k <= xu.hi(); ++k)
    hslot.push_back(mv.add_slot(vp, xu.term(k), ys.term(k - 1)));
  LinearSystem ls(vp.total);
  for (std::size_t i = 0; i < mv.slots.size(); ++i)
    mv.add_morphism_constraints(ls, vp, static_cast<int>(i));
  // Homotopies must respect the filtration too.
  {
    const int plo = std::min(x.flo, y.flo);
    const int phi = std::max(x.fhi(), y.fhi());
    for (int k = xu.lo; k <= xu.hi(); ++k)
      for (int p = plo; p <= phi; ++p) {
        const SubRep sx = x.layer(p, k);
        const SubRep sy = y.layer(p, k - 1 + shift_amt);
        for (int v = 0; v < nv; ++v) {
          if (sx.spaces[v].dim() == 0 || sy.spaces[v].is_full()) continue;
          const ComplementData cd = complement(sy.spaces[v]);
          const int rows = cd.proj.rows * sx.spaces[v].dim();
          if (rows == 0) continue;
          const int base = ls.add_rows(rows);
          ls.add_axc(base, cd.proj, vp, mv.slots[hslot[k - xu.lo]].blocks[v],
                     sx.spaces[v].basis, Rat(1));
        }
      }
  }
  for (int k = xu.lo; k <= xu.hi(); ++k) {
    for (int v = 0; v < nv; ++v) {
      const int rows = ys.term(k).dims[v] * xu.term(k).dims[v];
      if (rows == 0) continue;
      const int base = ls.add_rows(rows);
      for (std::size_t i = 0; i < basis.size(); ++i) {
        const Mat bm = basis[i].comp(k).comps[v];
        for (int r = 0; r < bm.rows; ++r)
          for (int cc = 0; cc < bm.cols; ++cc)
            ls.coeff(base + r * bm.cols + cc, vp.index(coef[i], 0, 0),
                     bm.at(r, cc));
      }
      ls.add_ax(base, ys.diff(k - 1).comps[v], vp,
                mv.slots[hslot[k - xu.lo]].blocks[v], Rat(1));
      if (k + 1 <= xu.hi())
        ls.add_xc(base, vp, mv.slots[hslot[k + 1 - xu.lo]].blocks[v],
                  xu.diff(k).comps[v], Rat(1));
      ls.add_rhs_mat(base, g.comp(k).comps[v], Rat(1));
    }
  }
  auto sol = ls.solve_full();
  if (!sol) return std::nullopt;
  std::vector<Rat> out;
  for (std::size_t i = 0; i < basis.size(); ++i)
    out.push_back(sol->first.at(vp.index(coef[i], 0, 0), 0));
  return out;
}

Cellularization cellularize_filtered(const FilteredComplex& x_in) {
  const FilteredComplex x = x_in.normalized();
  // Single graded layer: a plain cellular replacement, trivially filtered.
  if (x.fhi() - x.flo <= 1) {
    Replacement r = cellular_replacement(x.underlying);
    Cellularization out;
    out.cell = CellularFiltered{trivially_filtered(r.cell, x.flo)};
    out.to_x = FilteredMap{out.cell.fc, x_in,
                           retarget(r.qis, r.cell, x_in.underlying)};
    return out;
  }

  // Split the bottom layer off: Y = F^{flo+1} (filtered), B = gr^{flo}.
  SigmaResult sg = sigma(x, x.flo);
  Cellularization cy = cellularize_filtered(sg.ge);
  const Complex b = sg.le.underlying;  // structurally gr_complex(x, flo)
  const ChainMap& proj_b = sg.x_to_le.chain;
  Replacement rb = cellular_replacement(b);

  const Complex& yu = sg.ge.underlying;      // F^{flo+1} as a complex
  const ChainMap& incl_y = sg.ge_to_x.chain; // into x
  const Complex& pb = rb.cell;
  const Complex& cyu = cy.cell.fc.underlying;
  const ChainMap& q_y = cy.to_x.chain;       // cyu -> yu
  const int nv = x.underlying.q->num_vertices();

  // Degreewise morphism lift phi^k : pb^k -> x^k with proj_b phi = q_B,
  // solvable because pb^k is projective and proj_b is degreewise epi.
  std::vector<RepMor> phi;
  for (int k = pb.lo; k <= pb.hi(); ++k) {
    VarPack vp;
    MorVarSet mv;
    const int slot = mv.add_slot(vp, pb.term(k), x.underlying.term(k));
    LinearSystem ls(vp.total);
    mv.add_morphism_constraints(ls, vp, slot);
    for (int v = 0; v < nv; ++v) {
      const int rows = b.term(k).dims[v] * pb.term(k).dims[v];
      if (rows == 0) continue;
      const int base = ls.add_rows(rows);
      ls.add_ax(base, proj_b.comp(k).comps[v], vp, mv.slots[slot].blocks[v],
                Rat(1));
      ls.add_rhs_mat(base, rb.qis.comp(k).comps[v], Rat(1));
    }
    auto sol = ls.solve_full();
    if (!sol) throw InternalError("cellularize_filtered: lift infeasible");
    phi.push_back(mv.unpack(slot, vp, sol->first));
  }
  auto phi_at = [&](int k) -> RepMor {
    if (k >= pb.lo && k <= pb.hi()) return phi[k - pb.lo];
    return RepMor::zero(pb.term(k), x.underlying.term(k));
  };

  // psi = d phi - phi d lands in Y; express it there.
  const Complex yu1 = shift(yu, 1);
  ChainMap psi_y{pb, yu1, {}};
  for (int k = pb.lo; k <= pb.hi(); ++k) {
    const RepMor psi =
        x.underlying.diff(k) * phi_at(k) - phi_at(k + 1) * pb.diff(k);
    RepMor comp{pb.term(k), yu1.term(k), {}};
    for (int v = 0; v < nv; ++v)
      comp.comps.push_back(
          coordinates_in(x.layer(x.flo + 1, k + 1).spaces[v], psi.comps[v]));
    psi_y.comps.push_back(std::move(comp));
  }

  const Lift lift = lift_along_qis(psi_y, shift(q_y, 1));
  const ChainMap gamma = retarget(lift.map, pb, shift(cyu, 1));
  FilteredTwist ft = filtered_twist(pb, x.flo, cy.cell.fc, gamma);

  // Comparison [phi - incl_y rho, incl_y q_Y] onto x.
  ChainMap cmp{ft.total.underlying, x.underlying, {}};
  for (int k = ft.total.underlying.lo; k <= ft.total.underlying.hi(); ++k) {
    const RepSum parts = direct_sum({pb.term(k), cyu.term(k)});
    RepMor comp = RepMor::zero(parts.sum, x.underlying.term(k));
    comp = comp + phi_at(k) * parts.proj[0];
    RepMor rho{pb.term(k), yu.term(k), lift.homotopy.comp(k).comps};
    comp = comp - RepMor{yu.term(k), x.underlying.term(k),
                         incl_y.comp(k).comps} *
                     rho * parts.proj[0];
    comp = comp + RepMor{yu.term(k), x.underlying.term(k),
                         incl_y.comp(k).comps} *
                     RepMor{cyu.term(k), yu.term(k), q_y.comp(k).comps} *
                     parts.proj[1];
    cmp.comps.push_back(
        RepMor{ft.total.underlying.term(k), x.underlying.term(k), comp.comps});
  }
  Cellularization out;
  out.cell = CellularFiltered{ft.total};
  out.to_x = FilteredMap{ft.total, x_in,
                         retarget(cmp, ft.total.underlying, x_in.underlying)};
  return out;
}

}  // namespace fcat
