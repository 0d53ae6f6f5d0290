#pragma once

#include "fcat/cellular.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace fcat {

// Complex with a finite decreasing filtration by subcomplexes. Layers are
// stored densely for p = flo .. fhi with F^flo = everything and F^fhi = 0;
// accessors clamp outside that range.
struct FilteredComplex {
  Complex underlying;
  int flo = 0;
  // layers[p - flo][k - underlying.lo] = F^p at degree k.
  std::vector<std::vector<SubRep>> layers;

  int fhi() const { return flo + static_cast<int>(layers.size()) - 1; }
  SubRep layer(int p, int k) const;
  // Graded pieces can be nonzero only for n in [gr_lo, gr_hi].
  int gr_lo() const { return flo; }
  int gr_hi() const { return fhi() - 1; }

  void check() const;
  FilteredComplex normalized() const;  // trim redundant layers and window
  bool operator==(const FilteredComplex& o) const;
};

// j : the trivial filtration concentrated at `level`.
FilteredComplex trivially_filtered(const Complex& x, int level = 0);

// s^n : reindex the filtration (underlying complex unchanged).
FilteredComplex filt_shift_s(const FilteredComplex& x, int n);

struct FilteredMap {
  FilteredComplex src;
  FilteredComplex dst;
  ChainMap chain;

  void check() const;  // chain map + carries F^p into F^p for every p
  bool operator==(const FilteredMap& o) const {
    return src == o.src && dst == o.dst && chain == o.chain;
  }
};

// iota_X : X -> sX, the identity on underlying complexes.
FilteredMap iota(const FilteredComplex& x);

Complex omega(const FilteredComplex& x);
ChainMap omega_map(const FilteredMap& f);

// n-th graded piece F^n/F^{n+1} as a plain complex (canonical subquotient
// construction; deterministic).
Complex gr_complex(const FilteredComplex& x, int n);

// Induced map on graded pieces.
ChainMap gr_map(const FilteredMap& f, int n);

// Membership in CF(<= n) / CF(>= n): graded pieces acyclic outside range.
bool in_cf_le(const FilteredComplex& x, int n);
bool in_cf_ge(const FilteredComplex& x, int n);

// sigma_{>= n+1} X -> X -> sigma_{<= n} X.
struct SigmaResult {
  FilteredComplex ge;  // F^{n+1} with the induced filtration
  FilteredMap ge_to_x;
  FilteredComplex le;  // X / F^{n+1}
  FilteredMap x_to_le;
};
SigmaResult sigma(const FilteredComplex& x, int n);

// Componentwise filtration on the cone of a filtered map; the underlying
// complex coincides with cone(f.chain).cone.
FilteredComplex filtered_cone(const FilteredMap& f);

bool filtered_is_qis(const FilteredMap& f);

// The two-step subquotient F^n/F^{n+2} with its canonical triangle ends
// gr^{n+1} -> W -> gr^n (composite exactly zero).
struct TwoStepData {
  Complex w;
  ChainMap sub_incl;   // gr_complex(x, n+1) -> w
  ChainMap quot_proj;  // w -> gr_complex(x, n)
};
TwoStepData two_step(const FilteredComplex& x, int n);

// A filtered complex whose graded pieces have projective terms, stamped
// after verification.
struct CellularFiltered {
  FilteredComplex fc;
};
bool is_cellular(const FilteredComplex& x);
CellularFiltered make_cellular_checked(const FilteredComplex& x);

// Cellular model with a filtered quasi-isomorphism onto x.
struct Cellularization {
  CellularFiltered cell;
  FilteredMap to_x;
};
Cellularization cellularize_filtered(const FilteredComplex& x);

// Filtered chain maps x -> y[shift] modulo filtered homotopies; requires a
// cellular source. Basis elements are chain maps omega(x) -> omega(y)[shift]
// respecting the filtrations.
std::vector<ChainMap> filtered_hom_basis(const CellularFiltered& x,
                                         const FilteredComplex& y, int shift);

// Coordinates of a filtration-respecting chain map g in the given basis,
// modulo filtered homotopy.
std::optional<std::vector<Rat>> filtered_hom_coords(
    const CellularFiltered& x, const FilteredComplex& y, int shift,
    const std::vector<ChainMap>& basis, const ChainMap& g);

// Degreewise-split extension with filtered bookkeeping: b sits at `level`,
// a must be filtered strictly above it. gamma : omega(b-piece) -> omega(a)[1].
struct FilteredTwist {
  FilteredComplex total;
  FilteredMap sub_incl;   // a -> total
  FilteredMap quot_proj;  // total -> trivially_filtered(b, level)
};
FilteredTwist filtered_twist(const Complex& b, int level,
                             const FilteredComplex& a, const ChainMap& gamma);

}  // namespace fcat
