#pragma once

#include "fcat/filtered.hpp"

#include <optional>
#include <vector>

namespace fcat {

// Standard t-structure on D^b(A), or the Happel-Reiten-Smalo tilt at a
// torsion pair. Convention for the tilt: C^{t<=0} = {H^{>0} = 0, H^0
// torsion}, C^{t>=0} = {H^{<-1} = 0, H^{-1} torsion-free}.
struct TStructureSpec {
  enum class Kind { standard, tilt };
  Kind kind = Kind::standard;
  std::optional<TorsionPair> torsion;

  static TStructureSpec standard() { return {}; }
  static TStructureSpec tilted(TorsionPair tp) {
    TStructureSpec t;
    t.kind = Kind::tilt;
    t.torsion = std::move(tp);
    return t;
  }
};

bool in_t_le(const Complex& x, int n, const TStructureSpec& t);
bool in_t_ge(const Complex& x, int n, const TStructureSpec& t);

struct HeartObject {
  Complex value;
  TStructureSpec t;
};

bool heart_contains(const Complex& x, const TStructureSpec& t);
// Throws ContractError when x is not in the heart.
HeartObject make_heart_object(const Complex& x, const TStructureSpec& t);

// Truncation triangle le -> x -> ge with le in C^{t<=n}, ge in C^{t>=n+1}.
// Standard kind delegates to truncate_std; the tilt is built from the
// cocone over the torsion-free quotient of H^n. Memberships are verified
// before returning. Torsion certificates are taken on H^n and propagate
// TorsionError.
struct TTruncation {
  Complex le;
  ChainMap le_to_x;
  Complex ge;
  ChainMap x_to_ge;
};
TTruncation truncate_t(const Complex& x, int n, const TStructureSpec& t);

// H_t^k(x) = (tau_{>=k} tau_{<=k} x)[k].
HeartObject cohomology_t(const Complex& x, int k, const TStructureSpec& t);

// All t-cohomologies over the window that can be nonzero for a bounded
// complex; pairs (k, H_t^k) with nonzero value.
std::vector<std::pair<int, HeartObject>> t_cohomologies(
    const Complex& x, const TStructureSpec& t);

enum class CfSide { le, ge };

// Compatible t-structure on the filtered category, by the graded
// characterization: X in CF^{t<=0} iff gr^n X in C^{t<=n} for all n, and
// dually.
bool cf_t_membership(const FilteredComplex& x, CfSide side,
                     const TStructureSpec& t);

struct CfHeartResult {
  bool ok = false;
  int witness_level = 0;  // a level violating the heart condition, if !ok
  // gr^n(x)[n] as heart objects, for n in [gr_lo, gr_hi], when ok.
  std::vector<std::pair<int, HeartObject>> pieces;
};
CfHeartResult cf_heart_contains(const FilteredComplex& x,
                                const TStructureSpec& t);

}  // namespace fcat
