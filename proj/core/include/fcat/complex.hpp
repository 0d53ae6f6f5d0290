#pragma once

#include "fcat/quiver.hpp"

#include <optional>
#include <vector>

namespace fcat {

// Bounded cochain complex of representations. Window [lo, lo+terms-1];
// an empty window (no terms) is the zero complex.
struct Complex {
  QuiverPtr q;
  int lo = 0;
  std::vector<Rep> terms;
  std::vector<RepMor> diffs;  // d^n : X^n -> X^{n+1}, one per adjacent pair

  static Complex zero(const QuiverPtr& q);
  static Complex concentrated(const Rep& m, int degree);

  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
  bool in_window(int n) const { return n >= lo && n <= hi(); }
  Rep term(int n) const;      // zero representation outside the window
  RepMor diff(int n) const;   // zero morphism outside
  bool is_zero_object() const;  // all terms zero-dimensional
  int total_dim() const;

  void check() const;  // shapes and d^2 = 0, exactly
  Complex trimmed() const;  // drop zero-dimensional boundary terms

  bool operator==(const Complex& o) const;
};

Complex shift(const Complex& x, int k);  // X[k]^n = X^{n+k}, d scaled by (-1)^k
Complex direct_sum_complex(const std::vector<Complex>& parts);

struct ChainMap {
  Complex src;
  Complex dst;
  std::vector<RepMor> comps;  // over the source window

  static ChainMap identity(const Complex& x);
  static ChainMap zero(const Complex& src, const Complex& dst);

  RepMor comp(int n) const;
  void check() const;  // commutes with the differentials
  bool is_zero() const;

  ChainMap operator*(const ChainMap& g) const;
  ChainMap operator+(const ChainMap& g) const;
  ChainMap operator-(const ChainMap& g) const;
  ChainMap operator-() const;
  ChainMap scaled(const Rat& c) const;
  bool operator==(const ChainMap& o) const;
};

ChainMap shift(const ChainMap& f, int k);
// Reinterpret f with new endpoints equal to its own (used when retyping
// filtered data); endpoints must agree termwise.
ChainMap retarget(const ChainMap& f, const Complex& src, const Complex& dst);

// h : f => g, components h^n : X^n -> Y^{n-1} with f - g = dh + hd.
struct Homotopy {
  ChainMap from;
  ChainMap to;
  std::vector<RepMor> comps;  // over the source window

  RepMor comp(int n) const;
  void check() const;
};

// Mapping cone of f : X -> Y with d = [[-d_X[1], 0], [f, d_Y]].
struct ConeResult {
  Complex cone;
  ChainMap incl;  // Y -> cone
  ChainMap proj;  // cone -> X[1]
};
ConeResult cone(const ChainMap& f);

// Degreewise-split extension along gamma : B -> A[1]: total = B (+) A with
// d(b, a) = (d_B b, gamma b + d_A a). A is the canonical subcomplex.
struct TwistResult {
  Complex total;
  ChainMap sub_incl;   // A -> total
  ChainMap quot_proj;  // total -> B
};
TwistResult twist(const Complex& b, const Complex& a, const ChainMap& gamma);

struct CohomologyData {
  Rep h;
  Rep ker_rep;
  RepMor ker_incl;  // ker_rep -> X^n
  RepMor ker_proj;  // ker_rep -> h
};
CohomologyData cohomology(const Complex& x, int n);
Rep cohomology_rep(const Complex& x, int n);
bool acyclic(const Complex& x);

// H^n(f), computed against the canonical cohomology data of both sides.
RepMor induced_cohomology_map(const ChainMap& f, int n);

struct QisResult {
  bool ok;
  std::optional<int> witness;  // a degree where cohomology fails to match
};
QisResult is_qis(const ChainMap& f);

// Canonical truncations: le = (... -> X^{n-1} -> ker d^n), ge =
// (coker d^n -> X^{n+2} -> ...). When the cut is outside the window the
// untouched side is returned structurally equal to x.
struct StdTruncation {
  Complex le;
  ChainMap le_to_x;
  Complex ge;  // tau_{>= n+1}
  ChainMap x_to_ge;
};
StdTruncation truncate_std(const Complex& x, int n);

// Null-homotopy of f if one exists (components are morphisms in the
// category of representations).
std::optional<Homotopy> find_null_homotopy(const ChainMap& f);
bool chain_homotopic(const ChainMap& f, const ChainMap& g);

// For a candidate triangle A -u-> X -v-> B with a null-homotopy w of v*u,
// the canonical comparison cone(u) -> B; the triangle is exact iff this is
// a quasi-isomorphism.
ChainMap triangle_comparison(const ChainMap& u, const ChainMap& v,
                             const Homotopy& w);
Homotopy zero_homotopy(const ChainMap& f, const ChainMap& g);

// Do the two complexes have isomorphic cohomology in every degree? Over a
// hereditary base this decides isomorphism in the derived category.
bool same_qis_class(const Complex& x, const Complex& y);

// The cohomology of x laid out with zero differentials; over a hereditary
// base this is a canonical small representative of the qis class.
Complex formal_model(const Complex& x);

}  // namespace fcat
