#include "fcat/faxioms.hpp"

#include "fcat/linsys.hpp"
#include "fcat/morvar.hpp"

#include <algorithm>
#include <sstream>

namespace fcat {

std::string to_string(TriBool t) {
  switch (t) {
    case TriBool::yes:
      return "yes";
    case TriBool::no:
      return "no";
    default:
      return "unknown";
  }
}

namespace {

std::vector<int> cohomology_support(const Complex& x) {
  std::vector<int> out(x.q->num_vertices(), 0);
  for (int n = x.lo; n <= x.hi(); ++n) {
    const Rep h = cohomology_rep(x, n);
    for (int v = 0; v < x.q->num_vertices(); ++v)
      if (h.dims[v] > 0) out[v] = 1;
  }
  return out;
}

// Bounded-depth wide closure of the generators' cohomologies: kernels,
// cokernels, images, extensions by Ext^1 basis classes, small sums. Each
// member is kept up to isomorphism.
std::vector<Rep> wide_closure(const SubcatPredicate& d) {
  std::vector<Rep> members;
  auto add = [&](const Rep& m) {
    if (m.total_dim() == 0) return false;
    for (const Rep& k : members)
      if (rep_iso(k, m)) return false;
    members.push_back(m);
    return true;
  };
  for (const Complex& g : d.generators)
    for (int n = g.lo; n <= g.hi(); ++n) add(cohomology_rep(g, n));
  for (int round = 0; round < d.depth; ++round) {
    bool grew = false;
    const std::vector<Rep> snapshot = members;
    for (const Rep& m : snapshot)
      for (const Rep& n : snapshot) {
        for (const RepMor& f : hom_basis(m, n)) {
          auto fac = factor_morphism(f);
          grew |= add(fac.kernel);
          grew |= add(fac.image);
          grew |= add(fac.cokernel);
        }
        // Middle terms of basis extensions in Ext^1(m, n).
        const Complex cm = Complex::concentrated(m, 0);
        const Complex cn = Complex::concentrated(n, 0);
        for (const DerivedMor& e : derived_hom_basis(cm, cn, 1)) {
          const ConeResult c = cone(shift(e.rep, -1));
          grew |= add(cohomology_rep(c.cone, 0));
        }
        if (members.size() > 40) return members;  // search budget
      }
    if (!grew) break;
  }
  return members;
}

TriBool rep_in_wide(const Rep& m, const std::vector<Rep>& members) {
  if (m.total_dim() == 0) return TriBool::yes;
  for (const Rep& k : members)
    if (rep_iso(k, m)) return TriBool::yes;
  // Direct sums of members are members; try small decompositions by
  // matching dims of pairs.
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i; j < members.size(); ++j) {
      if (members[i].dims.size() != m.dims.size()) continue;
      bool dims_ok = true;
      for (std::size_t v = 0; v < m.dims.size(); ++v)
        if (members[i].dims[v] + members[j].dims[v] != m.dims[v])
          dims_ok = false;
      if (!dims_ok) continue;
      if (rep_iso(direct_sum({members[i], members[j]}).sum, m))
        return TriBool::yes;
    }
  return TriBool::unknown;
}

}  // namespace

TriBool complex_in_subcat(const Complex& x, const SubcatPredicate& d) {
  if (d.kind == SubcatPredicate::Kind::vertex_support) {
    std::vector<int> allowed(x.q->num_vertices(), 0);
    for (int v : d.vertices) allowed[v] = 1;
    const std::vector<int>support = cohomology_support(x);
    for (int v = 0; v < x.q->num_vertices(); ++v)
      if (support[v] && !allowed[v]) return TriBool::no;
    return TriBool::yes;
  }
  // Thick closure: decide per cohomology (hereditary decomposition).
  const std::vector<Rep> members = wide_closure(d);
  bool unknown = false;
  for (int n = x.lo; n <= x.hi(); ++n) {
    const TriBool r = rep_in_wide(cohomology_rep(x, n), members);
    if (r == TriBool::no) return TriBool::no;
    if (r == TriBool::unknown) unknown = true;
  }
  return unknown ? TriBool::unknown : TriBool::yes;
}

SubcatVerdict subcat_membership(const FilteredComplex& x,
                                const SubcatPredicate& d) {
  SubcatVerdict out;
  out.overall = TriBool::yes;
  for (int n = x.gr_lo(); n <= x.gr_hi(); ++n) {
    const TriBool r = complex_in_subcat(gr_complex(x, n), d);
    out.per_level.push_back({n, r});
    if (r == TriBool::no) out.overall = TriBool::no;
    if (r == TriBool::unknown && out.overall == TriBool::yes)
      out.overall = TriBool::unknown;
  }
  return out;
}

namespace {

RepMor random_combination(const std::vector<RepMor>& basis, const Rep& src,
                          const Rep& dst, Rng& rng) {
  RepMor f = RepMor::zero(src, dst);
  for (const RepMor& b : basis) f = f + b.scaled(Rat(rng.range(-2, 2)));
  return f;
}

// Basis of morphisms src -> dst with f * prev = 0 when prev is given.
std::vector<RepMor> constrained_hom(const Rep& src, const Rep& dst,
                                    const RepMor* prev) {
  VarPack vp;
  MorVarSet mv;
  const int slot = mv.add_slot(vp, src, dst);
  LinearSystem ls(vp.total);
  mv.add_morphism_constraints(ls, vp, slot);
  if (prev) {
    for (int v = 0; v < src.q->num_vertices(); ++v) {
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

// Basis of chain maps b -> a[1] (used to draw random twisting maps).
std::vector<ChainMap> chain_map_basis(const Complex& b, const Complex& a1) {
  VarPack vp;
  MorVarSet mv;
  std::vector<int> slot;
  for (int k = b.lo; k <= b.hi(); ++k)
    slot.push_back(mv.add_slot(vp, b.term(k), a1.term(k)));
  LinearSystem ls(vp.total);
  for (std::size_t i = 0; i < mv.slots.size(); ++i)
    mv.add_morphism_constraints(ls, vp, static_cast<int>(i));
  for (int k = b.lo; k <= b.hi(); ++k) {
    for (int v = 0; v < b.q->num_vertices(); ++v) {
      const int rows = a1.term(k + 1).dims[v] * b.term(k).dims[v];
      if (rows == 0) continue;
      const int base = ls.add_rows(rows);
      if (k + 1 <= b.hi())
        ls.add_xc(base, vp, mv.slots[slot[k + 1 - b.lo]].blocks[v],
                  b.diff(k).comps[v], Rat(1));
      ls.add_ax(base, a1.diff(k).comps[v], vp, mv.slots[slot[k - b.lo]].blocks[v],
                Rat(-1));
    }
  }
  const Subspace sols = ls.homogeneous_solutions();
  std::vector<ChainMap> out;
  for (int c = 0; c < sols.dim(); ++c) {
    ChainMap f{b, a1, {}};
    for (int k = b.lo; k <= b.hi(); ++k)
      f.comps.push_back(mv.unpack(slot[k - b.lo], vp, sols.basis.col(c)));
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

Complex gen_random_projective_complex(const QuiverPtr& q, Rng& rng,
                                      const RandomCellularBounds& bounds) {
  const auto projs = standard_projectives(q);
  const int len = static_cast<int>(rng.range(1, bounds.max_degrees));
  const int lo = static_cast<int>(rng.range(-1, 0));
  Complex x;
  x.q = q;
  x.lo = lo;
  for (int i = 0; i < len; ++i) {
    // Sum of distinct standard projectives with multiplicity <= 1, kept
    // within the dimension bound; possibly zero.
    std::vector<Rep> parts;
    std::vector<int> dims(q->num_vertices(), 0);
    for (const auto& p : projs) {
      if (rng.range(0, 2) != 0) continue;
      bool fits = true;
      for (int v = 0; v < q->num_vertices(); ++v)
        if (dims[v] + p.rep.dims[v] > bounds.max_dim) fits = false;
      if (!fits) continue;
      parts.push_back(p.rep);
      for (int v = 0; v < q->num_vertices(); ++v) dims[v] += p.rep.dims[v];
    }
    x.terms.push_back(parts.empty() ? Rep::zero(q) : direct_sum(parts).sum);
  }
  const RepMor* prev = nullptr;
  for (int i = 0; i + 1 < len; ++i) {
    const auto basis = constrained_hom(x.terms[i], x.terms[i + 1], prev);
    x.diffs.push_back(
        random_combination(basis, x.terms[i], x.terms[i + 1], rng));
    prev = &x.diffs.back();
  }
  return x;
}

CellularFiltered gen_random_cellular(const QuiverPtr& q, std::uint64_t seed,
                                     const RandomCellularBounds& bounds) {
  Rng rng(seed * 0x9e3779b97f4a7c15ULL + 0x51ed2701);
  const int steps = static_cast<int>(rng.range(1, bounds.max_filtration_steps));
  const int base_level = static_cast<int>(rng.range(-1, 1));
  std::vector<Complex> pieces;
  for (int i = 0; i < steps; ++i)
    pieces.push_back(gen_random_projective_complex(q, rng, bounds));
  // Assemble from the top level downward.
  FilteredComplex total =
      trivially_filtered(pieces.back(), base_level + steps - 1);
  for (int i = steps - 2; i >= 0; --i) {
    const Complex& g = pieces[i];
    const Complex up1 = shift(total.underlying, 1);
    const auto basis = chain_map_basis(g, up1);
    ChainMap gamma = ChainMap::zero(g, up1);
    for (const ChainMap& b : basis)
      gamma = gamma + b.scaled(Rat(rng.range(-2, 2)));
    total = filtered_twist(g, base_level + i, total, gamma).total;
  }
  return CellularFiltered{total};
}

namespace {

std::string degree_witness(const std::string& what, int n) {
  std::ostringstream os;
  os << what << " at level " << n;
  return os.str();
}

// Square invertible coordinate matrix of the images of `from` expressed in
// `target_basis` classes, or empty on dimension mismatch / failure.
bool iso_in_coords(const CellularFiltered& src, const FilteredComplex& dst,
                   int shift_amt, const std::vector<ChainMap>& target_basis,
                   const std::vector<ChainMap>& images) {
  if (target_basis.size() != images.size()) return false;
  const int n = static_cast<int>(target_basis.size());
  Mat m(n, n);
  for (int j = 0; j < n; ++j) {
    auto coords =
        filtered_hom_coords(src, dst, shift_amt, target_basis, images[j]);
    if (!coords) return false;
    for (int i = 0; i < n; ++i) m.at(i, j) = (*coords)[i];
  }
  return invertible(m);
}

}  // namespace

AxiomReport check_f_axioms(const std::vector<FilteredComplex>& samples) {
  AxiomReport rep;
  for (std::size_t si = 0; si < samples.size(); ++si) {
    const FilteredComplex& x = samples[si];
    const std::string tag = "sample-" + std::to_string(si);
    // (1) lattice + exhaustion over the graded support window.
    {
      bool ok = in_cf_le(x, x.gr_hi()) && in_cf_ge(x, x.gr_lo());
      std::string detail;
      bool seen_le = false;
      for (int n = x.gr_lo() - 1; n <= x.gr_hi() + 1; ++n) {
        const bool le = in_cf_le(x, n);
        if (seen_le && !le) {
          ok = false;
          detail = degree_witness("CF(<=n) not monotone", n);
        }
        seen_le |= le;
      }
      bool seen_ge = false;
      for (int n = x.gr_hi() + 1; n >= x.gr_lo() - 1; --n) {
        const bool ge = in_cf_ge(x, n);
        if (seen_ge && !ge) {
          ok = false;
          detail = degree_witness("CF(>=n) not monotone", n);
        }
        seen_ge |= ge;
      }
      rep.items.push_back({"axiom-1-lattice/" + tag, ok, detail});
    }
    // (2) iota compatibility, exact equality.
    {
      const FilteredMap lhs = iota(x);
      const FilteredMap rhs_inner = iota(filt_shift_s(x, -1));
      const bool ok = lhs.chain == rhs_inner.chain &&
                      filt_shift_s(rhs_inner.src, 1) == lhs.src &&
                      filt_shift_s(rhs_inner.dst, 1) == lhs.dst;
      rep.items.push_back({"axiom-2-iota/" + tag, ok, ""});
    }
    // (4) triangle via sigma at the middle level.
    {
      const int n = (x.gr_lo() + x.gr_hi()) / 2;
      SigmaResult sg = sigma(x, n);
      const ChainMap comp = sg.x_to_le.chain * sg.ge_to_x.chain;
      bool ok = comp.is_zero();
      if (ok) {
        const ChainMap cmp = triangle_comparison(
            sg.ge_to_x.chain, sg.x_to_le.chain,
            zero_homotopy(comp, ChainMap::zero(sg.ge.underlying,
                                               sg.le.underlying)));
        FilteredMap fcmp{filtered_cone(sg.ge_to_x), sg.le, cmp};
        ok = filtered_is_qis(fcmp);
      }
      rep.items.push_back({"axiom-4-triangle/" + tag, ok, ""});
    }
  }
  // (3) on consecutive same-quiver pairs.
  for (std::size_t si = 0; si < samples.size(); ++si) {
    const std::size_t sj = samples.size() == 1 ? si : (si + 1);
    if (sj >= samples.size()) break;
    const FilteredComplex& a = samples[si];
    const FilteredComplex& b = samples[sj];
    if (!(*a.underlying.q == *b.underlying.q)) continue;
    const std::string tag =
        "pair-" + std::to_string(si) + "-" + std::to_string(sj);
    const FilteredComplex xp = sigma(a, 0).ge;  // in CF(>=1)
    const FilteredComplex y = sigma(b, 0).le;   // in CF(<=0)
    bool ok = true;
    std::string detail;
    try {
      const CellularFiltered xc = cellularize_filtered(xp).cell;
      const CellularFiltered yc = cellularize_filtered(y).cell;
      if (!filtered_hom_basis(xc, y, 0).empty()) {
        ok = false;
        detail = "Hom(X, Y) != 0";
      }
      if (ok) {
        // iota_*: Hom(Y, s^{-1}X) -> Hom(Y, X).
        const FilteredComplex xm1 = filt_shift_s(xp, -1);
        const auto b1 = filtered_hom_basis(yc, xm1, 0);
        const auto b2 = filtered_hom_basis(yc, xp, 0);
        std::vector<ChainMap> images;
        for (const ChainMap& f : b1)
          images.push_back(retarget(f, y.underlying, xp.underlying));
        if (!iso_in_coords(yc, xp, 0, b2, images)) {
          ok = false;
          detail = "iota_* not an isomorphism";
        }
        // iota^*: Hom(sY, X) -> Hom(Y, X).
        if (ok) {
          const FilteredComplex sy = filt_shift_s(y, 1);
          const CellularFiltered syc = cellularize_filtered(sy).cell;
          const auto b3 = filtered_hom_basis(syc, xp, 0);
          std::vector<ChainMap> images2;
          for (const ChainMap& f : b3)
            images2.push_back(retarget(f, y.underlying, xp.underlying));
          if (!iso_in_coords(yc, xp, 0, b2, images2)) {
            ok = false;
            detail = "iota^* not an isomorphism";
          }
        }
      }
    } catch (const Error& e) {
      ok = false;
      detail = e.what();
    }
    rep.items.push_back({"axiom-3-hom/" + tag, ok, detail});
    if (samples.size() == 1) break;
  }
  return rep;
}

AxiomReport check_sigma_gr(const std::vector<FilteredComplex>& samples) {
  AxiomReport rep;
  for (std::size_t si = 0; si < samples.size(); ++si) {
    const FilteredComplex& x = samples[si];
    const std::string tag = "sample-" + std::to_string(si);
    // gr^n o s = gr^{n-1}, structurally.
    {
      bool ok = true;
      const FilteredComplex sx = filt_shift_s(x, 1);
      for (int n = x.gr_lo(); n <= x.gr_hi() + 1; ++n)
        if (!(gr_complex(sx, n) == gr_complex(x, n - 1))) ok = false;
      rep.items.push_back({"gr-shift/" + tag, ok, ""});
    }
    // Cone comparison for every sigma cut in the window.
    {
      bool ok = true;
      std::string detail;
      for (int n = x.gr_lo() - 1; n <= x.gr_hi() && ok; ++n) {
        SigmaResult sg = sigma(x, n);
        const ChainMap comp = sg.x_to_le.chain * sg.ge_to_x.chain;
        if (!comp.is_zero()) {
          ok = false;
          detail = degree_witness("nonzero composite", n);
          break;
        }
        const ChainMap cmp = triangle_comparison(
            sg.ge_to_x.chain, sg.x_to_le.chain,
            zero_homotopy(comp,
                          ChainMap::zero(sg.ge.underlying, sg.le.underlying)));
        FilteredMap fcmp{filtered_cone(sg.ge_to_x), sg.le, cmp};
        if (!filtered_is_qis(fcmp)) {
          ok = false;
          detail = degree_witness("cone not filtered-qis", n);
        }
      }
      rep.items.push_back({"sigma-cone/" + tag, ok, detail});
    }
  }
  return rep;
}

AxiomReport check_omega_props(const std::vector<FilteredComplex>& samples) {
  AxiomReport rep;
  for (std::size_t si = 0; si < samples.size(); ++si) {
    const FilteredComplex& x = samples[si];
    const std::string tag = "sample-" + std::to_string(si);
    // omega(iota) is a quasi-isomorphism (it is the identity chain map).
    rep.items.push_back(
        {"omega-iota/" + tag, is_qis(omega_map(iota(x))).ok, ""});
  }
  for (std::size_t si = 0; si < samples.size(); ++si) {
    const std::size_t sj = samples.size() == 1 ? si : (si + 1);
    if (sj >= samples.size()) break;
    const FilteredComplex& a = samples[si];
    const FilteredComplex& b = samples[sj];
    if (!(*a.underlying.q == *b.underlying.q)) continue;
    const std::string tag =
        "pair-" + std::to_string(si) + "-" + std::to_string(sj);
    bool ok = true;
    std::string detail;
    try {
      const FilteredComplex xle = sigma(a, 0).le;    // CF(<=0)
      const FilteredComplex yge = sigma(b, -1).ge;   // CF(>=0)
      const CellularFiltered xc = cellularize_filtered(xle).cell;
      const auto filt_basis = filtered_hom_basis(xc, yge, 0);
      const auto der = derived_hom_basis(omega(xc.fc), omega(yge), 0);
      if (filt_basis.size() != der.size()) {
        ok = false;
        detail = "dim mismatch";
      } else if (!der.empty()) {
        const int n = static_cast<int>(der.size());
        Mat m(n, n);
        for (int j = 0; j < n; ++j) {
          const DerivedMor img = derived_from_chain(filt_basis[j]);
          auto coords = derived_class_coords(img, der);
          if (!coords) {
            ok = false;
            detail = "omega image escaped the basis";
            break;
          }
          for (int i = 0; i < n; ++i) m.at(i, j) = (*coords)[i];
        }
        if (ok && !invertible(m)) {
          ok = false;
          detail = "omega not injective on classes";
        }
      }
    } catch (const Error& e) {
      ok = false;
      detail = e.what();
    }
    rep.items.push_back({"omega-hom/" + tag, ok, detail});

    // Adjunction dimension checks against trivially filtered objects:
    // Hom_CF(X, jM) = Hom_C(omega X, M) for X in CF(<=0), and dually.
    bool adj_ok = true;
    std::string adj_detail;
    try {
      const FilteredComplex xle = sigma(a, 0).le;
      const Complex m = omega(sigma(b, -1).ge);
      const CellularFiltered xc = cellularize_filtered(xle).cell;
      if (filtered_hom_basis(xc, trivially_filtered(m), 0).size() !=
          derived_hom_basis(omega(xc.fc), m, 0).size()) {
        adj_ok = false;
        adj_detail = "left adjunction dimension mismatch";
      }
      const FilteredComplex yge = sigma(b, -1).ge;
      const Replacement rm = cellular_replacement(omega(sigma(a, 0).le));
      const CellularFiltered jm =
          make_cellular_checked(trivially_filtered(rm.cell));
      if (filtered_hom_basis(jm, yge, 0).size() !=
          derived_hom_basis(rm.cell, omega(yge), 0).size()) {
        adj_ok = false;
        adj_detail = "right adjunction dimension mismatch";
      }
    } catch (const Error& e) {
      adj_ok = false;
      adj_detail = e.what();
    }
    rep.items.push_back({"omega-adjunction/" + tag, adj_ok, adj_detail});
    if (samples.size() == 1) break;
  }
  return rep;
}

}  // namespace fcat
