#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"

using namespace fcat;
using namespace fix;

namespace {

ChainMap chain_from(const Complex& x, const Complex& y, const RepMor& f,
                    int degree) {
  ChainMap c = ChainMap::zero(x, y);
  c.comps[degree - x.lo] = f;
  return c;
}

}  // namespace

TEST_CASE("cone of the identity is acyclic") {
  const Complex x = Complex::concentrated(s1(), 0);
  auto c = cone(ChainMap::identity(x));
  c.cone.check();
  CHECK(acyclic(c.cone));
  CHECK(cohomology_rep(c.cone, 0).is_zero());
  CHECK(cohomology_rep(c.cone, -1).is_zero());
}

TEST_CASE("cone of the zero map splits") {
  const Complex x = Complex::concentrated(s1(), 0);
  const Complex y = Complex::concentrated(s2(), 0);
  auto c = cone(ChainMap::zero(x, y));
  c.cone.check();
  CHECK(c.cone.diff(-1).is_zero());
  CHECK(c.cone.term(-1) == s1());
  CHECK(c.cone.term(0) == s2());
}

TEST_CASE("cone of P2 -> P1 is quasi-isomorphic to S1") {
  const Complex x = Complex::concentrated(s2(), 0);
  const Complex y = Complex::concentrated(p1(), 0);
  const auto basis = hom_basis(s2(), p1());
  REQUIRE(basis.size() == 1);
  auto c = cone(chain_from(x, y, basis[0], 0));
  c.cone.check();
  CHECK(same_qis_class(c.cone, Complex::concentrated(s1(), 0)));
}

TEST_CASE("triangle maps around a cone compose to zero up to homotopy") {
  Rng rng(23);
  for (int trial = 0; trial < 8; ++trial) {
    const Complex x = random_complex(a2(), rng, 2, 3, -1);
    const Complex y = random_complex(a2(), rng, 2, 3, -1);
    x.check();
    y.check();
    auto maps = derived_hom_basis(x, y, 0);
    // Use a genuine chain map x -> y when one exists; otherwise skip.
    if (maps.empty()) continue;
    // The representative lives on the replacement; its cone still gives a
    // triangle over that replacement.
    const ChainMap f = maps[0].rep;
    auto c = cone(f);
    c.cone.check();
    c.incl.check();
    c.proj.check();
    CHECK(find_null_homotopy(c.incl * f).has_value());
    CHECK((c.proj * c.incl).is_zero());
    CHECK(find_null_homotopy(shift(f, 1) * c.proj).has_value());
  }
}

TEST_CASE("cohomology of concentrated and resolved complexes") {
  CHECK(cohomology_rep(Complex::concentrated(s1(), 0), 0) == s1());
  // [P2 -> P1] in degrees -1, 0.
  Complex r;
  r.q = a2();
  r.lo = -1;
  r.terms = {s2(), p1()};
  r.diffs = {hom_basis(s2(), p1())[0]};
  r.check();
  CHECK(cohomology_rep(r, 0) == s1());
  CHECK(cohomology_rep(r, -1).is_zero());
}

TEST_CASE("standard truncation at the ends") {
  const Complex x = Complex::concentrated(s1(), 0);
  auto t0 = truncate_std(x, 0);
  CHECK(t0.le == x);
  CHECK(t0.ge.is_zero_object());
  auto tm1 = truncate_std(x, -1);
  CHECK(tm1.le.is_zero_object());
  CHECK(tm1.ge == x);
}

TEST_CASE("standard truncation splits a two-term complex") {
  Complex r;
  r.q = a2();
  r.lo = -1;
  r.terms = {s2(), p1()};
  r.diffs = {hom_basis(s2(), p1())[0]};
  auto t = truncate_std(r, -1);
  CHECK(acyclic(t.le));  // kernel of d^{-1} is zero
  CHECK(same_qis_class(t.ge, Complex::concentrated(s1(), 0)));
  t.le_to_x.check();
  t.x_to_ge.check();
  CHECK((t.x_to_ge * t.le_to_x).is_zero());
}

TEST_CASE("truncation triangle is exact (cone comparison)") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const Complex x = random_complex(a2(), rng, 2, 3, -1);
    const int n = static_cast<int>(rng.range(-2, 2));
    auto t = truncate_std(x, n);
    t.le.check();
    t.ge.check();
    t.le_to_x.check();
    t.x_to_ge.check();
    const ChainMap cmp = triangle_comparison(
        t.le_to_x, t.x_to_ge, zero_homotopy(t.x_to_ge * t.le_to_x,
                                            ChainMap::zero(t.le, t.ge)));
    cmp.check();
    CHECK(is_qis(cmp).ok);
    for (int k = x.lo - 1; k <= x.hi() + 1; ++k) {
      if (k <= n)
        CHECK(rep_iso(cohomology_rep(t.le, k), cohomology_rep(x, k)));
      else
        CHECK(cohomology_rep(t.le, k).is_zero());
    }
  }
}

TEST_CASE("cellular replacement: already projective complexes are fixed") {
  const Complex x = Complex::concentrated(p1(), 0);
  auto r = cellular_replacement(x);
  CHECK(r.cell == x);
  CHECK(r.qis == ChainMap::identity(x));
}

TEST_CASE("cellular replacement of S1 is the standard resolution") {
  auto r = cellular_replacement(Complex::concentrated(s1(), 0));
  r.cell.check();
  r.qis.check();
  CHECK(r.cell.lo == -1);
  CHECK(r.cell.term(-1) == s2());
  CHECK(r.cell.term(0) == p1());
  CHECK(is_qis(r.qis).ok);
}

TEST_CASE("cellular replacement of an acyclic complex stays acyclic") {
  auto c = cone(ChainMap::identity(Complex::concentrated(s1(), 0)));
  auto r = cellular_replacement(c.cone);
  r.cell.check();
  CHECK(all_terms_projective(r.cell));
  CHECK(is_qis(r.qis).ok);
  CHECK(acyclic(r.cell));
}

TEST_CASE("cellular replacement of random complexes is a projective qis") {
  Rng rng(57);
  for (int trial = 0; trial < 8; ++trial) {
    const Complex x = random_complex(a2(), rng, 2, 3, 0);
    auto r = cellular_replacement(x);
    r.cell.check();
    r.qis.check();
    CHECK(all_terms_projective(r.cell));
    CHECK(is_qis(r.qis).ok);
    CHECK(r.cell.hi() <= x.trimmed().hi());
    if (!x.trimmed().terms.empty()) CHECK(r.cell.lo >= x.trimmed().lo - 1);
  }
}

TEST_CASE("derived hom dimensions over A2") {
  const Complex cs1 = Complex::concentrated(s1(), 0);
  const Complex cs2 = Complex::concentrated(s2(), 0);
  CHECK(derived_hom_basis(cs1, cs1, 0).size() == 1);
  CHECK(derived_hom_basis(cs1, cs2, 1).size() == 1);
  CHECK(derived_hom_basis(cs2, cs1, 1).empty());
}

TEST_CASE("derived hom vanishes outside the hereditary window") {
  const std::vector<Rep> objs = {s1(), s2(), p1()};
  for (const Rep& m : objs)
    for (const Rep& n : objs) {
      const Complex cm = Complex::concentrated(m, 0);
      const Complex cn = Complex::concentrated(n, 0);
      CHECK(derived_hom_basis(cm, cn, 2).empty());
      CHECK(derived_hom_basis(cm, cn, -1).empty());
      CHECK(derived_hom_basis(cm, cn, 0).size() == hom_basis(m, n).size());
    }
}

TEST_CASE("derived hom dimension is a quasi-isomorphism invariant") {
  Rng rng(91);
  for (int trial = 0; trial < 6; ++trial) {
    const Complex x = random_complex(a2(), rng, 2, 2, 0);
    const Complex y = random_complex(a2(), rng, 2, 2, 0);
    const int s = static_cast<int>(rng.range(-1, 1));
    const auto rx = cellular_replacement(x);
    const auto ry = cellular_replacement(y);
    const std::size_t d = derived_hom_basis(x, y, s).size();
    CHECK(derived_hom_basis(rx.cell, y, s).size() == d);
    CHECK(derived_hom_basis(x, ry.cell, s).size() == d);
    CHECK(derived_hom_basis(rx.cell, ry.cell, s).size() == d);
    // Contractible padding does not change the dimensions either.
    const Complex pad =
        cone(ChainMap::identity(Complex::concentrated(p1(), 0))).cone;
    CHECK(derived_hom_basis(direct_sum_complex({x, pad}), y, s).size() == d);
    CHECK(derived_hom_basis(x, direct_sum_complex({y, pad}), s).size() == d);
  }
}

TEST_CASE("is_qis distinguishes identity from zero") {
  const Complex x = Complex::concentrated(s1(), 0);
  CHECK(is_qis(ChainMap::identity(x)).ok);
  auto r = is_qis(ChainMap::zero(x, x));
  CHECK(!r.ok);
  CHECK(r.witness == 0);
}

TEST_CASE("derived composition and coordinates") {
  const Complex cs1 = Complex::concentrated(s1(), 0);
  const Complex cs2 = Complex::concentrated(s2(), 0);
  const Complex cp1 = Complex::concentrated(p1(), 0);
  // P1 -> S1 -> S2[1] composes to zero (triangle rotation).
  auto proj = derived_hom_basis(cp1, cs1, 0);
  auto ext = derived_hom_basis(cs1, cs2, 1);
  REQUIRE(proj.size() == 1);
  REQUIRE(ext.size() == 1);
  auto comp = derived_compose(ext[0], proj[0]);
  CHECK(comp.is_zero());
  // Coordinates recover scalars.
  auto f = ext[0].scaled(rat(3, 2));
  auto coords = derived_class_coords(f, ext);
  REQUIRE(coords);
  CHECK((*coords)[0] == rat(3, 2));
}
