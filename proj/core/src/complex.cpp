#include "fcat/complex.hpp"

#include "fcat/linsys.hpp"
#include "fcat/morvar.hpp"

#include <algorithm>

namespace fcat {

Complex Complex::zero(const QuiverPtr& q) {
  Complex x;
  x.q = q;
  return x;
}

Complex Complex::concentrated(const Rep& m, int degree) {
  Complex x;
  x.q = m.q;
  x.lo = degree;
  x.terms.push_back(m);
  return x.trimmed();
}

Rep Complex::term(int n) const {
  if (in_window(n)) return terms[n - lo];
  return Rep::zero(q);
}

RepMor Complex::diff(int n) const {
  if (n >= lo && n <= hi() - 1) return diffs[n - lo];
  return RepMor::zero(term(n), term(n + 1));
}

bool Complex::is_zero_object() const { return total_dim() == 0; }

int Complex::total_dim() const {
  int t = 0;
  for (const Rep& m : terms) t += m.total_dim();
  return t;
}

void Complex::check() const {
  if (!terms.empty() &&
      static_cast<int>(diffs.size()) != static_cast<int>(terms.size()) - 1)
    throw ContractError("Complex: differential count mismatch");
  for (const Rep& m : terms) m.check();
  for (int n = lo; n < hi(); ++n) {
    const RepMor& d = diffs[n - lo];
    if (!(d.src == terms[n - lo]) || !(d.dst == terms[n + 1 - lo]))
      throw ContractError("Complex: differential endpoints");
    d.check();
  }
  for (int n = lo; n + 1 < hi(); ++n)
    if (!(diff(n + 1) * diff(n)).is_zero())
      throw ContractError("Complex: d^2 != 0");
}

Complex Complex::trimmed() const {
  int a = lo, b = hi();
  while (a <= b && term(a).total_dim() == 0) ++a;
  while (b >= a && term(b).total_dim() == 0) --b;
  Complex x;
  x.q = q;
  if (a > b) return x;
  x.lo = a;
  for (int n = a; n <= b; ++n) x.terms.push_back(term(n));
  for (int n = a; n < b; ++n) x.diffs.push_back(diff(n));
  return x;
}

bool Complex::operator==(const Complex& o) const {
  const Complex a = trimmed(), b = o.trimmed();
  if (!(*a.q == *b.q)) return false;
  if (a.terms.empty() && b.terms.empty()) return true;
  return a.lo == b.lo && a.terms == b.terms && a.diffs == b.diffs;
}

Complex shift(const Complex& x, int k) {
  Complex y;
  y.q = x.q;
  y.lo = x.lo - k;
  y.terms = x.terms;
  for (const RepMor& d : x.diffs)
    y.diffs.push_back((k % 2 == 0) ? d : -d);
  return y;
}

Complex direct_sum_complex(const std::vector<Complex>& parts) {
  if (parts.empty()) throw ContractError("direct_sum_complex: empty");
  const QuiverPtr q = parts.front().q;
  int a = parts.front().lo, b = parts.front().hi();
  for (const Complex& p : parts) {
    if (!p.terms.empty()) {
      a = std::min(a, p.lo);
      b = std::max(b, p.hi());
    }
  }
  Complex out;
  out.q = q;
  out.lo = a;
  if (a > b) return out;
  for (int n = a; n <= b; ++n) {
    std::vector<Rep> reps;
    for (const Complex& p : parts) reps.push_back(p.term(n));
    out.terms.push_back(direct_sum(reps).sum);
  }
  for (int n = a; n < b; ++n) {
    std::vector<Rep> srcs, dsts;
    for (const Complex& p : parts) srcs.push_back(p.term(n));
    for (const Complex& p : parts) dsts.push_back(p.term(n + 1));
    auto ssum = direct_sum(srcs);
    auto dsum = direct_sum(dsts);
    RepMor d = RepMor::zero(ssum.sum, dsum.sum);
    for (std::size_t i = 0; i < parts.size(); ++i)
      d = d + dsum.inj[i] * parts[i].diff(n) * ssum.proj[i];
    out.diffs.push_back(std::move(d));
  }
  return out.trimmed();
}

ChainMap ChainMap::identity(const Complex& x) {
  ChainMap f{x, x, {}};
  for (const Rep& m : x.terms) f.comps.push_back(RepMor::identity(m));
  return f;
}

ChainMap ChainMap::zero(const Complex& src, const Complex& dst) {
  ChainMap f{src, dst, {}};
  for (int n = src.lo; n <= src.hi(); ++n)
    f.comps.push_back(RepMor::zero(src.term(n), dst.term(n)));
  return f;
}

RepMor ChainMap::comp(int n) const {
  if (src.in_window(n)) return comps[n - src.lo];
  return RepMor::zero(src.term(n), dst.term(n));
}

void ChainMap::check() const {
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const int n = src.lo + static_cast<int>(i);
    if (!(comps[i].src == src.term(n)) || !(comps[i].dst == dst.term(n)))
      throw ContractError("ChainMap: component endpoints");
    comps[i].check();
  }
  for (int n = src.lo - 1; n <= src.hi(); ++n)
    if (!(comp(n + 1) * src.diff(n) == dst.diff(n) * comp(n)))
      throw ContractError("ChainMap: does not commute with differentials");
}

bool ChainMap::is_zero() const {
  for (const RepMor& c : comps)
    if (!c.is_zero()) return false;
  return true;
}

ChainMap ChainMap::operator*(const ChainMap& g) const {
  ChainMap h{g.src, dst, {}};
  for (int n = g.src.lo; n <= g.src.hi(); ++n)
    h.comps.push_back(comp(n) * g.comp(n));
  return h;
}

ChainMap ChainMap::operator+(const ChainMap& g) const {
  ChainMap h{src, dst, {}};
  for (int n = src.lo; n <= src.hi(); ++n)
    h.comps.push_back(comp(n) + g.comp(n));
  return h;
}

ChainMap ChainMap::operator-(const ChainMap& g) const { return *this + (-g); }

ChainMap ChainMap::operator-() const {
  ChainMap h{src, dst, {}};
  for (const RepMor& c : comps) h.comps.push_back(-c);
  return h;
}

ChainMap ChainMap::scaled(const Rat& c) const {
  ChainMap h{src, dst, {}};
  for (const RepMor& m : comps) h.comps.push_back(m.scaled(c));
  return h;
}

bool ChainMap::operator==(const ChainMap& o) const {
  if (!(src == o.src) || !(dst == o.dst)) return false;
  const int a = std::min(src.lo, o.src.lo);
  const int b = std::max(src.hi(), o.src.hi());
  for (int n = a; n <= b; ++n)
    if (!(comp(n) - o.comp(n)).is_zero()) return false;
  return true;
}

ChainMap shift(const ChainMap& f, int k) {
  ChainMap g{shift(f.src, k), shift(f.dst, k), f.comps};
  return g;
}

ChainMap retarget(const ChainMap& f, const Complex& src, const Complex& dst) {
  ChainMap g{src, dst, {}};
  for (int n = src.lo; n <= src.hi(); ++n) {
    RepMor c = f.comp(n);
    if (c.src.dims != src.term(n).dims || c.dst.dims != dst.term(n).dims)
      throw ContractError("retarget: termwise shape mismatch");
    g.comps.push_back(RepMor{src.term(n), dst.term(n), c.comps});
  }
  return g;
}

RepMor Homotopy::comp(int n) const {
  const Complex& x = from.src;
  if (x.in_window(n)) return comps[n - x.lo];
  return RepMor::zero(x.term(n), from.dst.term(n - 1));
}

void Homotopy::check() const {
  const Complex& x = from.src;
  const Complex& y = from.dst;
  for (int n = x.lo; n <= x.hi(); ++n) {
    const RepMor lhs = from.comp(n) - to.comp(n);
    const RepMor rhs = y.diff(n - 1) * comp(n) + comp(n + 1) * x.diff(n);
    if (!(lhs - rhs).is_zero())
      throw ContractError("Homotopy: relation fails at degree " +
                          std::to_string(n));
  }
}

namespace {

// Builds per-degree direct sums X^{k+1} (+) Y^k used by cone().
struct BlockRow {
  RepSum sum;  // parts: {X^{k+1}, Y^k}
};

}  // namespace

ConeResult cone(const ChainMap& f) {
  const Complex& x = f.src;
  const Complex& y = f.dst;
  const QuiverPtr q = x.q;
  int a = std::min(x.lo - 1, y.lo);
  int b = std::max(x.hi() - 1, y.hi());
  ConeResult out;
  out.cone.q = q;
  out.cone.lo = a;
  if (a > b) {
    out.incl = ChainMap::zero(y, out.cone);
    out.proj = ChainMap::zero(out.cone, shift(x, 1));
    return out;
  }
  std::vector<BlockRow> rows;
  for (int k = a; k <= b; ++k) {
    BlockRow r{direct_sum({x.term(k + 1), y.term(k)})};
    out.cone.terms.push_back(r.sum.sum);
    rows.push_back(std::move(r));
  }
  for (int k = a; k < b; ++k) {
    const BlockRow& cur = rows[k - a];
    const BlockRow& nxt = rows[k + 1 - a];
    RepMor d = RepMor::zero(cur.sum.sum, nxt.sum.sum);
    d = d + nxt.sum.inj[0] * (-x.diff(k + 1)) * cur.sum.proj[0];
    d = d + nxt.sum.inj[1] * f.comp(k + 1) * cur.sum.proj[0];
    d = d + nxt.sum.inj[1] * y.diff(k) * cur.sum.proj[1];
    out.cone.diffs.push_back(std::move(d));
  }
  out.incl = ChainMap{y, out.cone, {}};
  for (int k = y.lo; k <= y.hi(); ++k) {
    if (k < a || k > b) throw InternalError("cone window");
    out.incl.comps.push_back(
        RepMor{y.term(k), out.cone.terms[k - a], rows[k - a].sum.inj[1].comps});
  }
  const Complex x1 = shift(x, 1);
  out.proj = ChainMap{out.cone, x1, {}};
  for (int k = a; k <= b; ++k)
    out.proj.comps.push_back(
        RepMor{out.cone.terms[k - a], x1.term(k), rows[k - a].sum.proj[0].comps});
  return out;
}

TwistResult twist(const Complex& b_cx, const Complex& a_cx,
                  const ChainMap& gamma) {
  const QuiverPtr q = b_cx.q;
  int a = std::min(b_cx.lo, a_cx.lo);
  int b = std::max(b_cx.hi(), a_cx.hi());
  TwistResult out;
  out.total.q = q;
  out.total.lo = a;
  if (a > b) {
    out.sub_incl = ChainMap::zero(a_cx, out.total);
    out.quot_proj = ChainMap::zero(out.total, b_cx);
    return out;
  }
  std::vector<RepSum> rows;
  for (int k = a; k <= b; ++k) {
    rows.push_back(direct_sum({b_cx.term(k), a_cx.term(k)}));
    out.total.terms.push_back(rows.back().sum);
  }
  for (int k = a; k < b; ++k) {
    const RepSum& cur = rows[k - a];
    const RepSum& nxt = rows[k + 1 - a];
    RepMor d = RepMor::zero(cur.sum, nxt.sum);
    d = d + nxt.inj[0] * b_cx.diff(k) * cur.proj[0];
    d = d + nxt.inj[1] * gamma.comp(k) * cur.proj[0];
    d = d + nxt.inj[1] * a_cx.diff(k) * cur.proj[1];
    out.total.diffs.push_back(std::move(d));
  }
  out.sub_incl = ChainMap{a_cx, out.total, {}};
  for (int k = a_cx.lo; k <= a_cx.hi(); ++k)
    out.sub_incl.comps.push_back(
        RepMor{a_cx.term(k), out.total.terms[k - a], rows[k - a].inj[1].comps});
  out.quot_proj = ChainMap{out.total, b_cx, {}};
  for (int k = a; k <= b; ++k)
    out.quot_proj.comps.push_back(
        RepMor{out.total.terms[k - a], b_cx.term(k), rows[k - a].proj[0].comps});
  return out;
}

CohomologyData cohomology(const Complex& x, int n) {
  CohomologyData out;
  const SubRep ker = kernel_subrep(x.diff(n));
  auto emb = sub_to_rep(ker);
  out.ker_rep = emb.rep;
  out.ker_incl = emb.incl;
  const SubRep img = image_subrep(x.diff(n - 1));
  // Image inside kernel coordinates.
  SubRep img_in_ker{out.ker_rep, {}};
  for (int v = 0; v < x.q->num_vertices(); ++v)
    img_in_ker.spaces.push_back(Subspace::span(
        out.ker_rep.dims[v],
        coordinates_in(ker.spaces[v], img.spaces[v].basis)));
  auto quot = quotient_rep(out.ker_rep, img_in_ker);
  out.h = quot.rep;
  out.ker_proj = quot.proj;
  return out;
}

Rep cohomology_rep(const Complex& x, int n) { return cohomology(x, n).h; }

bool acyclic(const Complex& x) {
  for (int n = x.lo; n <= x.hi(); ++n)
    if (cohomology_rep(x, n).total_dim() != 0) return false;
  return true;
}

RepMor induced_cohomology_map(const ChainMap& f, int n) {
  const CohomologyData cx = cohomology(f.src, n);
  const CohomologyData cy = cohomology(f.dst, n);
  // f restricts to kernels.
  RepMor g{cx.ker_rep, cy.ker_rep, {}};
  const SubRep ker_y = kernel_subrep(f.dst.diff(n));
  for (int v = 0; v < f.src.q->num_vertices(); ++v)
    g.comps.push_back(coordinates_in(
        ker_y.spaces[v], f.comp(n).comps[v] * cx.ker_incl.comps[v]));
  // Descend through the projections: H(f) * proj_x = proj_y * g.
  RepMor h{cx.h, cy.h, {}};
  for (int v = 0; v < f.src.q->num_vertices(); ++v) {
    const Mat rhs = (cy.ker_proj.comps[v] * g.comps[v]).transpose();
    auto sol = solve(cx.ker_proj.comps[v].transpose(), rhs);
    if (!sol) throw InternalError("induced_cohomology_map: descent failed");
    h.comps.push_back(sol->first.transpose());
  }
  return h;
}

QisResult is_qis(const ChainMap& f) {
  const int a = std::min(f.src.lo, f.dst.lo);
  const int b = std::max(f.src.hi(), f.dst.hi());
  for (int n = a; n <= b; ++n) {
    const RepMor h = induced_cohomology_map(f, n);
    if (h.src.dims != h.dst.dims || !h.is_iso()) return {false, n};
  }
  return {true, std::nullopt};
}

StdTruncation truncate_std(const Complex& x, int n) {
  StdTruncation out;
  if (n >= x.hi()) {
    out.le = x;
    out.le_to_x = ChainMap::identity(x);
    out.ge = Complex::zero(x.q);
    out.x_to_ge = ChainMap::zero(x, out.ge);
    return out;
  }
  if (n < x.lo) {
    out.le = Complex::zero(x.q);
    out.le_to_x = ChainMap::zero(out.le, x);
    out.ge = x;
    out.x_to_ge = ChainMap::identity(x);
    return out;
  }
  // le: ... -> X^{n-1} -> ker d^n.
  const SubRep ker = kernel_subrep(x.diff(n));
  auto ker_emb = sub_to_rep(ker);
  out.le.q = x.q;
  out.le.lo = x.lo;
  for (int k = x.lo; k < n; ++k) out.le.terms.push_back(x.term(k));
  out.le.terms.push_back(ker_emb.rep);
  for (int k = x.lo; k + 1 < n; ++k) out.le.diffs.push_back(x.diff(k));
  if (n > x.lo) {
    // Corestriction of d^{n-1} to the kernel.
    RepMor d{x.term(n - 1), ker_emb.rep, {}};
    for (int v = 0; v < x.q->num_vertices(); ++v)
      d.comps.push_back(
          coordinates_in(ker.spaces[v], x.diff(n - 1).comps[v]));
    out.le.diffs.push_back(std::move(d));
  }
  out.le_to_x = ChainMap{out.le, x, {}};
  for (int k = x.lo; k < n; ++k)
    out.le_to_x.comps.push_back(RepMor::identity(x.term(k)));
  out.le_to_x.comps.push_back(ker_emb.incl);

  // ge: coker d^n -> X^{n+2} -> ...
  const SubRep img = image_subrep(x.diff(n));
  auto quot = quotient_rep(x.term(n + 1), img);
  out.ge.q = x.q;
  out.ge.lo = n + 1;
  out.ge.terms.push_back(quot.rep);
  for (int k = n + 2; k <= x.hi(); ++k) out.ge.terms.push_back(x.term(k));
  if (n + 1 < x.hi()) {
    RepMor d{quot.rep, x.term(n + 2), {}};
    for (int v = 0; v < x.q->num_vertices(); ++v)
      d.comps.push_back(x.diff(n + 1).comps[v] * quot.sections[v]);
    out.ge.diffs.push_back(std::move(d));
    for (int k = n + 2; k < x.hi(); ++k) out.ge.diffs.push_back(x.diff(k));
  }
  out.x_to_ge = ChainMap{x, out.ge, {}};
  for (int k = x.lo; k < n + 1; ++k)
    out.x_to_ge.comps.push_back(RepMor::zero(x.term(k), out.ge.term(k)));
  out.x_to_ge.comps.push_back(quot.proj);
  for (int k = n + 2; k <= x.hi(); ++k)
    out.x_to_ge.comps.push_back(RepMor::identity(x.term(k)));
  return out;
}

std::optional<Homotopy> find_null_homotopy(const ChainMap& f) {
  const Complex& x = f.src;
  const Complex& y = f.dst;
  VarPack vp;
  MorVarSet mv;
  std::vector<int> slot;  // h^n for n in [x.lo, x.hi]
  for (int n = x.lo; n <= x.hi(); ++n)
    slot.push_back(mv.add_slot(vp, x.term(n), y.term(n - 1)));
  LinearSystem ls(vp.total);
  for (std::size_t i = 0; i < slot.size(); ++i)
    mv.add_morphism_constraints(ls, vp, slot[i]);
  const int nv = x.q->num_vertices();
  for (int n = x.lo; n <= x.hi(); ++n) {
    // d_Y^{n-1} h^n + h^{n+1} d_X^n = f^n, per vertex.
    for (int v = 0; v < nv; ++v) {
      const int rows = y.term(n).dims[v] * x.term(n).dims[v];
      if (rows == 0) continue;
      const int base = ls.add_rows(rows);
      ls.add_ax(base, y.diff(n - 1).comps[v], vp,
                mv.slots[slot[n - x.lo]].blocks[v], Rat(1));
      if (n + 1 <= x.hi())
        ls.add_xc(base, vp, mv.slots[slot[n + 1 - x.lo]].blocks[v],
                  x.diff(n).comps[v], Rat(1));
      ls.add_rhs_mat(base, f.comp(n).comps[v], Rat(1));
    }
  }
  auto sol = ls.solve_full();
  if (!sol) return std::nullopt;
  Homotopy h{f, ChainMap::zero(x, y), {}};
  for (int n = x.lo; n <= x.hi(); ++n)
    h.comps.push_back(mv.unpack(slot[n - x.lo], vp, sol->first));
  return h;
}

bool chain_homotopic(const ChainMap& f, const ChainMap& g) {
  return find_null_homotopy(f - g).has_value();
}

Homotopy zero_homotopy(const ChainMap& f, const ChainMap& g) {
  Homotopy h{f, g, {}};
  for (int n = f.src.lo; n <= f.src.hi(); ++n)
    h.comps.push_back(RepMor::zero(f.src.term(n), f.dst.term(n - 1)));
  return h;
}

ChainMap triangle_comparison(const ChainMap& u, const ChainMap& v,
                             const Homotopy& w) {
  const ConeResult c = cone(u);
  ChainMap phi{c.cone, v.dst, {}};
  for (int k = c.cone.lo; k <= c.cone.hi(); ++k) {
    // cone(u)^k = A^{k+1} (+) X^k; phi = w^{k+1} o proj_A + v^k o proj_X.
    const RepSum parts = direct_sum({u.src.term(k + 1), u.dst.term(k)});
    RepMor comp = w.comp(k + 1) * parts.proj[0] + v.comp(k) * parts.proj[1];
    phi.comps.push_back(RepMor{c.cone.term(k), v.dst.term(k), comp.comps});
  }
  return phi;
}

bool same_qis_class(const Complex& x, const Complex& y) {
  const int a = std::min(x.lo, y.lo);
  const int b = std::max(x.hi(), y.hi());
  for (int n = a; n <= b; ++n)
    if (!rep_iso(cohomology_rep(x, n), cohomology_rep(y, n))) return false;
  return true;
}

Complex formal_model(const Complex& x) {
  Complex out;
  out.q = x.q;
  out.lo = x.lo;
  for (int n = x.lo; n <= x.hi(); ++n) out.terms.push_back(cohomology_rep(x, n));
  for (int n = x.lo; n < x.hi(); ++n)
    out.diffs.push_back(RepMor::zero(out.terms[n - x.lo], out.terms[n + 1 - x.lo]));
  return out.trimmed();
}

}  // namespace fcat
