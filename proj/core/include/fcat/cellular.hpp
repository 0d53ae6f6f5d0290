#pragma once

#include "fcat/complex.hpp"

#include <optional>
#include <vector>

namespace fcat {

// Complex of projectives quasi-isomorphic to x. Terms of the result are
// sums of standard projectives (or x's own terms when those are already
// projective, in which case the map is the identity). Deterministic.
struct Replacement {
  Complex cell;
  ChainMap qis;  // cell -> x
};
Replacement cellular_replacement(const Complex& x);

bool all_terms_projective(const Complex& x);

// Given u : W -> Z with W a bounded complex of projectives and a
// quasi-isomorphism v : V -> Z, produces g : W -> V with v*g homotopic to
// u (the homotopy is returned). Throws InternalError when the system is
// infeasible, which cannot happen under the stated preconditions.
struct Lift {
  ChainMap map;      // g : W -> V
  Homotopy homotopy; // v*g => u
};
Lift lift_along_qis(const ChainMap& u, const ChainMap& v);

// Morphism in the derived category: a chain map out of the canonical
// cellular replacement of the source, landing in dst[shift].
struct DerivedMor {
  Complex src;
  Complex dst;
  int shift_amt = 0;
  Complex cell;      // cellular_replacement(src).cell
  ChainMap cell_qis; // cell -> src
  ChainMap rep;      // cell -> shift(dst, shift_amt)

  bool is_zero() const;  // null-homotopic
  DerivedMor operator+(const DerivedMor& o) const;
  DerivedMor operator-() const;
  DerivedMor scaled(const Rat& c) const;
};

DerivedMor derived_from_chain(const ChainMap& f);
// f : X -> dst[shift], presented with its shifted target.
DerivedMor derived_from_chain_shifted(const ChainMap& f, const Complex& dst,
                                      int shift);
DerivedMor derived_zero(const Complex& src, const Complex& dst, int shift);
bool derived_equal(const DerivedMor& f, const DerivedMor& g);

// g after f; shifts add.
DerivedMor derived_compose(const DerivedMor& g, const DerivedMor& f);
// f[k] : src[k] -> dst[shift][k].
DerivedMor derived_shift(const DerivedMor& f, int k);

// Basis of Hom_{D^b}(x, y[shift]): chain maps from the cellular
// replacement of x, modulo null-homotopic maps. Canonically ordered.
std::vector<DerivedMor> derived_hom_basis(const Complex& x, const Complex& y,
                                          int shift);

// Coordinates of f in the given basis (all with identical src/dst/shift),
// or nothing when f is not in their span modulo homotopy.
std::optional<std::vector<Rat>> derived_class_coords(
    const DerivedMor& f, const std::vector<DerivedMor>& basis);

// Isomorphism x -> y in the derived category (a derived morphism whose
// representative is a quasi-isomorphism), found by seeded search over the
// Hom basis; nothing when none is found.
std::optional<DerivedMor> derived_find_iso(const Complex& x, const Complex& y);

// Basis of the coefficient vectors c with sum_i c_i m_i null-homotopic;
// all morphisms must share src/dst/shift (and hence the cell).
std::vector<std::vector<Rat>> derived_relation_space(
    const std::vector<DerivedMor>& mors);

}  // namespace fcat
