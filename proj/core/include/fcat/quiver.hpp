#pragma once

#include "fcat/matrix.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fcat {

// Finite acyclic quiver. Vertices and arrows carry string labels; all
// bulk data elsewhere is indexed by position.
struct Quiver {
  struct Arrow {
    int src;
    int dst;
    std::string label;
    bool operator==(const Arrow& o) const = default;
  };

  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_arrows() const { return static_cast<int>(arrows.size()); }
  int vertex_index(const std::string& label) const;   // -1 if absent
  int arrow_index(const std::string& label) const;    // -1 if absent

  bool operator==(const Quiver& o) const = default;
};

using QuiverPtr = std::shared_ptr<const Quiver>;

// Validates labels and acyclicity; throws ContractError on a cycle or a
// duplicate label.
QuiverPtr make_quiver(
    const std::vector<std::string>& vertices,
    const std::vector<std::tuple<std::string, std::string, std::string>>&
        arrows);

// Finite-dimensional representation. maps[a] has shape dims[dst] x dims[src].
struct Rep {
  QuiverPtr q;
  std::vector<int> dims;
  std::vector<Mat> maps;

  static Rep zero(const QuiverPtr& q);
  static Rep simple(const QuiverPtr& q, int v);

  int total_dim() const;
  bool is_zero() const { return total_dim() == 0; }
  void check() const;  // shape invariants

  bool operator==(const Rep& o) const {
    return (q == o.q || *q == *o.q) && dims == o.dims && maps == o.maps;
  }
};

struct RepMor {
  Rep src;
  Rep dst;
  std::vector<Mat> comps;  // per vertex, dst.dims[v] x src.dims[v]

  static RepMor identity(const Rep& m);
  static RepMor zero(const Rep& src, const Rep& dst);

  void check() const;  // commuting squares, exactly
  bool is_zero() const;
  bool is_iso() const;

  RepMor operator*(const RepMor& g) const;  // composition, this after g
  RepMor operator+(const RepMor& g) const;
  RepMor operator-(const RepMor& g) const;
  RepMor operator-() const;
  RepMor scaled(const Rat& c) const;
  bool operator==(const RepMor& o) const {
    return src == o.src && dst == o.dst && comps == o.comps;
  }
};

struct RepSum {
  Rep sum;
  std::vector<RepMor> inj;
  std::vector<RepMor> proj;
};
RepSum direct_sum(const std::vector<Rep>& parts);

// Basis of Hom(x, y), canonically ordered (echelon basis of the
// commuting-square solution space).
std::vector<RepMor> hom_basis(const Rep& x, const Rep& y);

// Subrepresentation: per-vertex subspaces stable under the arrow maps.
struct SubRep {
  Rep ambient;
  std::vector<Subspace> spaces;

  static SubRep zero(const Rep& m);
  static SubRep full(const Rep& m);

  void check() const;  // arrow stability
  bool is_zero() const;
  bool is_full() const;
  int dim_at(int v) const { return spaces[v].dim(); }

  bool operator==(const SubRep& o) const {
    return ambient == o.ambient && spaces == o.spaces;
  }
};

SubRep image_subrep(const RepMor& f);   // subrep of f.dst
SubRep kernel_subrep(const RepMor& f);  // subrep of f.src
SubRep subrep_sum(const SubRep& u, const SubRep& v);
SubRep subrep_intersection(const SubRep& u, const SubRep& v);

struct SubRepEmbedding {
  Rep rep;
  RepMor incl;  // rep -> ambient
};
SubRepEmbedding sub_to_rep(const SubRep& u);

struct QuotientRep {
  Rep rep;
  RepMor proj;                // ambient -> rep
  std::vector<Mat> sections;  // per vertex, proj * section = id
};
QuotientRep quotient_rep(const Rep& m, const SubRep& u);

// Kernel / image / cokernel of a morphism, with the canonical maps.
struct Factorization {
  Rep kernel;
  RepMor kernel_incl;  // kernel -> src
  Rep image;
  RepMor image_incl;   // image -> dst
  RepMor image_proj;   // src -> image  (incl * proj == f)
  Rep cokernel;
  RepMor coker_proj;   // dst -> cokernel
};
Factorization factor_morphism(const RepMor& f);

// Indecomposable projective at a vertex: paths out of it.
struct StandardProjective {
  int vertex;
  Rep rep;
  // paths[w][i] = arrow-index sequence of the i-th basis path from
  // `vertex` to w; paths[vertex][0] is the trivial path.
  std::vector<std::vector<std::vector<int>>> paths;
};
std::vector<StandardProjective> standard_projectives(const QuiverPtr& q);

// The morphism P(v) -> M classified by vec in M_v (trivial path |-> vec).
RepMor projective_hom(const StandardProjective& pv, const Rep& m,
                      const Mat& vec);

struct CoverEpi {
  Rep cover;
  RepMor epi;  // cover -> m, surjective
};
// Epi from a sum of standard projectives, one P(v) per basis vector of
// top(M) = M / rad M. Minimal for these purposes.
CoverEpi projective_cover(const Rep& m);

// Explicit isomorphism from a sum of standard projectives, if M is
// projective; nothing otherwise.
std::optional<RepMor> projectivity_certificate(const Rep& m);

// rad M = sum of the images of all arrow maps.
SubRep radical_subrep(const Rep& m);

// Torsion pair presented by a generator list; checked object by object.
struct TorsionPair {
  std::vector<Rep> generators;
  std::vector<std::string> names;  // optional, for report witnesses
};

// Trace of the generators in m (no certification).
SubRep torsion_trace(const TorsionPair& t, const Rep& m);

struct TraceResult {
  SubRep torsion_sub;
  Rep torsion_rep;
  RepMor torsion_incl;
  Rep quotient;
  RepMor quotient_proj;
  bool idempotent;             // trace of tM is all of tM
  bool quotient_torsion_free;  // trace of M/tM is zero
};
// Throws TorsionError when either per-object check fails.
TraceResult trace_radical(const TorsionPair& t, const Rep& m);

// Deterministic seeded search for an isomorphism; sound when it returns a
// value, near-certain when it reports absence (see rep_iso).
std::optional<RepMor> find_iso(const Rep& a, const Rep& b);
bool rep_iso(const Rep& a, const Rep& b);

// Induced subquiver on a vertex subset, with restriction / zero-extension
// of representations.
struct SubquiverMap {
  QuiverPtr ambient;
  QuiverPtr sub;
  std::vector<int> vertex_of;  // sub vertex index -> ambient vertex index
  std::vector<int> arrow_of;
};
SubquiverMap induced_subquiver(const QuiverPtr& q,
                               const std::vector<int>& vertices);
// Requires m supported on the subquiver's vertices.
Rep restrict_rep(const SubquiverMap& s, const Rep& m);
Rep extend_rep(const SubquiverMap& s, const Rep& m);

}  // namespace fcat
