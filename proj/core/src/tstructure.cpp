#include "fcat/tstructure.hpp"

namespace fcat {

namespace {

const TorsionPair& torsion_of(const TStructureSpec& t) {
  if (t.kind != TStructureSpec::Kind::tilt || !t.torsion)
    throw ContractError("t-structure: tilt requires a torsion pair");
  return *t.torsion;
}

bool torsion_full(const TStructureSpec& t, const Rep& m) {
  return torsion_trace(torsion_of(t), m).is_full();
}

bool torsion_zero(const TStructureSpec& t, const Rep& m) {
  return torsion_trace(torsion_of(t), m).is_zero();
}

}  // namespace

bool in_t_le(const Complex& x, int n, const TStructureSpec& t) {
  if (t.kind == TStructureSpec::Kind::standard) {
    for (int k = n + 1; k <= x.hi(); ++k)
      if (!cohomology_rep(x, k).is_zero()) return false;
    return true;
  }
  for (int k = n + 1; k <= x.hi(); ++k)
    if (!cohomology_rep(x, k).is_zero()) return false;
  return torsion_full(t, cohomology_rep(x, n));
}

bool in_t_ge(const Complex& x, int n, const TStructureSpec& t) {
  if (t.kind == TStructureSpec::Kind::standard) {
    for (int k = x.lo; k <= std::min(n - 1, x.hi()); ++k)
      if (!cohomology_rep(x, k).is_zero()) return false;
    return true;
  }
  for (int k = x.lo; k <= std::min(n - 2, x.hi()); ++k)
    if (!cohomology_rep(x, k).is_zero()) return false;
  return torsion_zero(t, cohomology_rep(x, n - 1));
}

bool heart_contains(const Complex& x, const TStructureSpec& t) {
  return in_t_le(x, 0, t) && in_t_ge(x, 0, t);
}

HeartObject make_heart_object(const Complex& x, const TStructureSpec& t) {
  if (!heart_contains(x, t))
    throw ContractError("make_heart_object: not a heart object");
  return HeartObject{x.trimmed(), t};
}

namespace {

// Tilted truncation at level 0: le = cocone(tau_{<=0} x -> H^0 / t H^0).
TTruncation truncate_tilt_at_zero(const Complex& x, const TStructureSpec& t) {
  const StdTruncation st = truncate_std(x, 0);
  const CohomologyData h0 = cohomology(x, 0);
  // Torsion certificate on the relevant cohomology object.
  const TraceResult tr = trace_radical(torsion_of(t), h0.h);
  const Rep q_rep = tr.quotient;

  // q : tau_{<=0} x -> [H^0/tH^0 in degree 0]; the degree-0 term of the
  // standard truncation is ker d^0 in its canonical coordinates.
  const Complex target = Complex::concentrated(q_rep, 0);
  ChainMap q = ChainMap::zero(st.le, target);
  if (st.le.in_window(0) && !q_rep.is_zero()) {
    // st.le.term(0) is the kernel representation used by cohomology(x,0).
    RepMor comp = tr.quotient_proj * h0.ker_proj;
    q.comps[0 - st.le.lo] =
        RepMor{st.le.term(0), q_rep, comp.comps};
  }
  TTruncation out;
  const ConeResult cq = cone(q);
  out.le = shift(cq.cone, -1);
  // Projection cocone -> tau_{<=0} x, then into x.
  const ChainMap pr = shift(cq.proj, -1);  // cocone -> st.le
  out.le_to_x = st.le_to_x * retarget(pr, out.le, st.le);
  const ConeResult cge = cone(out.le_to_x);
  out.ge = cge.cone;
  out.x_to_ge = cge.incl;
  return out;
}

}  // namespace

TTruncation truncate_t(const Complex& x, int n, const TStructureSpec& t) {
  TTruncation out;
  if (t.kind == TStructureSpec::Kind::standard) {
    const StdTruncation st = truncate_std(x, n);
    out = {st.le, st.le_to_x, st.ge, st.x_to_ge};
  } else {
    const TTruncation at0 = truncate_tilt_at_zero(shift(x, n), t);
    out.le = shift(at0.le, -n);
    out.ge = shift(at0.ge, -n);
    out.le_to_x = retarget(shift(at0.le_to_x, -n), out.le, x);
    out.x_to_ge = retarget(shift(at0.x_to_ge, -n), x, out.ge);
  }
  if (!in_t_le(out.le, n, t) || !in_t_ge(out.ge, n + 1, t))
    throw InternalError("truncate_t: membership postcondition failed");
  return out;
}

HeartObject cohomology_t(const Complex& x, int k, const TStructureSpec& t) {
  const TTruncation below = truncate_t(x, k, t);
  const TTruncation sandwich = truncate_t(below.le, k - 1, t);
  return make_heart_object(formal_model(shift(sandwich.ge, k)), t);
}

std::vector<std::pair<int, HeartObject>> t_cohomologies(
    const Complex& x, const TStructureSpec& t) {
  std::vector<std::pair<int, HeartObject>> out;
  const Complex xt = x.trimmed();
  if (xt.terms.empty()) return out;
  for (int k = xt.lo - 1; k <= xt.hi() + 1; ++k) {
    HeartObject h = cohomology_t(xt, k, t);
    if (!h.value.is_zero_object()) out.push_back({k, std::move(h)});
  }
  return out;
}

bool cf_t_membership(const FilteredComplex& x, CfSide side,
                     const TStructureSpec& t) {
  for (int n = x.gr_lo(); n <= x.gr_hi(); ++n) {
    const Complex g = gr_complex(x, n);
    if (side == CfSide::le && !in_t_le(g, n, t)) return false;
    if (side == CfSide::ge && !in_t_ge(g, n, t)) return false;
  }
  return true;
}

CfHeartResult cf_heart_contains(const FilteredComplex& x,
                                const TStructureSpec& t) {
  CfHeartResult out;
  out.ok = true;
  for (int n = x.gr_lo(); n <= x.gr_hi(); ++n) {
    const Complex g = shift(gr_complex(x, n), n);
    if (!heart_contains(g, t)) {
      out.ok = false;
      out.witness_level = n;
      out.pieces.clear();
      return out;
    }
    out.pieces.push_back({n, HeartObject{g.trimmed(), t}});
  }
  return out;
}

}  // namespace fcat
