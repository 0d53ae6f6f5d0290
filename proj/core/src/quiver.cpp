#include "fcat/quiver.hpp"

#include "fcat/linsys.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace fcat {

int Quiver::vertex_index(const std::string& label) const {
  for (int i = 0; i < num_vertices(); ++i)
    if (vertices[i] == label) return i;
  return -1;
}

int Quiver::arrow_index(const std::string& label) const {
  for (int i = 0; i < num_arrows(); ++i)
    if (arrows[i].label == label) return i;
  return -1;
}

QuiverPtr make_quiver(
    const std::vector<std::string>& vertices,
    const std::vector<std::tuple<std::string, std::string, std::string>>&
        arrows) {
  auto q = std::make_shared<Quiver>();
  std::set<std::string> seen;
  for (const auto& v : vertices) {
    if (!seen.insert(v).second)
      throw ContractError("duplicate vertex label '" + v + "'");
    q->vertices.push_back(v);
  }
  std::set<std::string> aseen;
  for (const auto& [s, t, l] : arrows) {
    const int si = q->vertex_index(s), ti = q->vertex_index(t);
    if (si < 0 || ti < 0)
      throw ContractError("arrow '" + l + "' references unknown vertex");
    if (!aseen.insert(l).second)
      throw ContractError("duplicate arrow label '" + l + "'");
    q->arrows.push_back({si, ti, l});
  }
  // Kahn's algorithm; leftovers mean a directed cycle.
  std::vector<int> indeg(q->num_vertices(), 0);
  for (const auto& a : q->arrows) ++indeg[a.dst];
  std::vector<int> stack, order;
  for (int v = 0; v < q->num_vertices(); ++v)
    if (indeg[v] == 0) stack.push_back(v);
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (const auto& a : q->arrows)
      if (a.src == v && --indeg[a.dst] == 0) stack.push_back(a.dst);
  }
  if (static_cast<int>(order.size()) != q->num_vertices())
    throw ContractError("quiver has a directed cycle");
  return q;
}

Rep Rep::zero(const QuiverPtr& q) {
  Rep m;
  m.q = q;
  m.dims.assign(q->num_vertices(), 0);
  for (const auto& a : q->arrows) {
    (void)a;
    m.maps.push_back(Mat(0, 0));
  }
  return m;
}

Rep Rep::simple(const QuiverPtr& q, int v) {
  Rep m = zero(q);
  m.dims[v] = 1;
  for (int i = 0; i < q->num_arrows(); ++i)
    m.maps[i] = Mat(m.dims[q->arrows[i].dst], m.dims[q->arrows[i].src]);
  return m;
}

int Rep::total_dim() const {
  int t = 0;
  for (int d : dims) t += d;
  return t;
}

void Rep::check() const {
  if (!q) throw ContractError("Rep: missing quiver");
  if (static_cast<int>(dims.size()) != q->num_vertices() ||
      static_cast<int>(maps.size()) != q->num_arrows())
    throw ContractError("Rep: size mismatch with quiver");
  for (int a = 0; a < q->num_arrows(); ++a) {
    const auto& ar = q->arrows[a];
    if (maps[a].rows != dims[ar.dst] || maps[a].cols != dims[ar.src])
      throw ContractError("Rep: arrow map shape mismatch at '" + ar.label +
                          "'");
  }
}

RepMor RepMor::identity(const Rep& m) {
  RepMor f{m, m, {}};
  for (int d : m.dims) f.comps.push_back(Mat::identity(d));
  return f;
}

RepMor RepMor::zero(const Rep& src, const Rep& dst) {
  RepMor f{src, dst, {}};
  for (std::size_t v = 0; v < src.dims.size(); ++v)
    f.comps.push_back(Mat(dst.dims[v], src.dims[v]));
  return f;
}

void RepMor::check() const {
  if (!(*src.q == *dst.q)) throw ContractError("RepMor: quiver mismatch");
  for (int a = 0; a < src.q->num_arrows(); ++a) {
    const auto& ar = src.q->arrows[a];
    if (!(dst.maps[a] * comps[ar.src] == comps[ar.dst] * src.maps[a]))
      throw ContractError("RepMor: square does not commute at '" + ar.label +
                          "'");
  }
}

bool RepMor::is_zero() const {
  for (const Mat& m : comps)
    if (!m.is_zero()) return false;
  return true;
}

bool RepMor::is_iso() const {
  if (src.dims != dst.dims) return false;
  for (const Mat& m : comps)
    if (!invertible(m)) return false;
  return true;
}

RepMor RepMor::operator*(const RepMor& g) const {
  if (!(g.dst == src)) throw ContractError("RepMor compose: endpoint mismatch");
  RepMor h{g.src, dst, {}};
  for (std::size_t v = 0; v < comps.size(); ++v)
    h.comps.push_back(comps[v] * g.comps[v]);
  return h;
}

RepMor RepMor::operator+(const RepMor& g) const {
  RepMor h{src, dst, {}};
  for (std::size_t v = 0; v < comps.size(); ++v)
    h.comps.push_back(comps[v] + g.comps[v]);
  return h;
}

RepMor RepMor::operator-(const RepMor& g) const { return *this + (-g); }

RepMor RepMor::operator-() const {
  RepMor h{src, dst, {}};
  for (const Mat& m : comps) h.comps.push_back(-m);
  return h;
}

RepMor RepMor::scaled(const Rat& c) const {
  RepMor h{src, dst, {}};
  for (const Mat& m : comps) h.comps.push_back(m.scaled(c));
  return h;
}

RepSum direct_sum(const std::vector<Rep>& parts) {
  if (parts.empty()) throw ContractError("direct_sum: empty list");
  const QuiverPtr q = parts.front().q;
  const int nv = q->num_vertices();
  RepSum out;
  out.sum.q = q;
  out.sum.dims.assign(nv, 0);
  std::vector<std::vector<int>> offset(parts.size(),
                                       std::vector<int>(nv, 0));
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (int v = 0; v < nv; ++v) {
      offset[p][v] = out.sum.dims[v];
      out.sum.dims[v] += parts[p].dims[v];
    }
  for (int a = 0; a < q->num_arrows(); ++a) {
    const auto& ar = q->arrows[a];
    Mat m(out.sum.dims[ar.dst], out.sum.dims[ar.src]);
    for (std::size_t p = 0; p < parts.size(); ++p) {
      const Mat& blk = parts[p].maps[a];
      for (int i = 0; i < blk.rows; ++i)
        for (int j = 0; j < blk.cols; ++j)
          m.at(offset[p][ar.dst] + i, offset[p][ar.src] + j) = blk.at(i, j);
    }
    out.sum.maps.push_back(std::move(m));
  }
  for (std::size_t p = 0; p < parts.size(); ++p) {
    RepMor inj{parts[p], out.sum, {}};
    RepMor prj{out.sum, parts[p], {}};
    for (int v = 0; v < nv; ++v) {
      Mat in(out.sum.dims[v], parts[p].dims[v]);
      Mat pr(parts[p].dims[v], out.sum.dims[v]);
      for (int i = 0; i < parts[p].dims[v]; ++i) {
        in.at(offset[p][v] + i, i) = 1;
        pr.at(i, offset[p][v] + i) = 1;
      }
      inj.comps.push_back(std::move(in));
      prj.comps.push_back(std::move(pr));
    }
    out.inj.push_back(std::move(inj));
    out.proj.push_back(std::move(prj));
  }
  return out;
}

std::vector<RepMor> hom_basis(const Rep& x, const Rep& y) {
  if (!(*x.q == *y.q)) throw ContractError("hom_basis: quiver mismatch");
  const int nv = x.q->num_vertices();
  VarPack vp;
  std::vector<int> blk(nv);
  for (int v = 0; v < nv; ++v) blk[v] = vp.add(y.dims[v], x.dims[v]);
  LinearSystem ls(vp.total);
  for (int a = 0; a < x.q->num_arrows(); ++a) {
    const auto& ar = x.q->arrows[a];
    const int rows = y.dims[ar.dst] * x.dims[ar.src];
    if (rows == 0) continue;
    const int base = ls.add_rows(rows);
    ls.add_ax(base, y.maps[a], vp, blk[ar.src], Rat(1));
    ls.add_xc(base, vp, blk[ar.dst], x.maps[a], Rat(-1));
  }
  const Subspace sols = ls.homogeneous_solutions();
  std::vector<RepMor> basis;
  for (int c = 0; c < sols.dim(); ++c) {
    RepMor f{x, y, {}};
    const Mat col = sols.basis.col(c);
    for (int v = 0; v < nv; ++v) f.comps.push_back(vp.unpack(blk[v], col));
    basis.push_back(std::move(f));
  }
  return basis;
}

SubRep SubRep::zero(const Rep& m) {
  SubRep s{m, {}};
  for (int d : m.dims) s.spaces.push_back(Subspace::zero(d));
  return s;
}

SubRep SubRep::full(const Rep& m) {
  SubRep s{m, {}};
  for (int d : m.dims) s.spaces.push_back(Subspace::full(d));
  return s;
}

void SubRep::check() const {
  for (int a = 0; a < ambient.q->num_arrows(); ++a) {
    const auto& ar = ambient.q->arrows[a];
    const Mat img = ambient.maps[a] * spaces[ar.src].basis;
    if (!spaces[ar.dst].contains_all(img))
      throw ContractError("SubRep: not arrow-stable at '" + ar.label + "'");
  }
}

bool SubRep::is_zero() const {
  for (const auto& s : spaces)
    if (!s.is_zero()) return false;
  return true;
}

bool SubRep::is_full() const {
  for (const auto& s : spaces)
    if (!s.is_full()) return false;
  return true;
}

SubRep image_subrep(const RepMor& f) {
  SubRep s{f.dst, {}};
  for (const Mat& c : f.comps) s.spaces.push_back(column_space(c));
  return s;
}

SubRep kernel_subrep(const RepMor& f) {
  SubRep s{f.src, {}};
  for (const Mat& c : f.comps) s.spaces.push_back(nullspace(c));
  return s;
}

SubRep subrep_sum(const SubRep& u, const SubRep& v) {
  SubRep s{u.ambient, {}};
  for (std::size_t i = 0; i < u.spaces.size(); ++i)
    s.spaces.push_back(subspace_sum(u.spaces[i], v.spaces[i]));
  return s;
}

SubRep subrep_intersection(const SubRep& u, const SubRep& v) {
  SubRep s{u.ambient, {}};
  for (std::size_t i = 0; i < u.spaces.size(); ++i)
    s.spaces.push_back(subspace_intersection(u.spaces[i], v.spaces[i]));
  return s;
}

SubRepEmbedding sub_to_rep(const SubRep& u) {
  const Rep& m = u.ambient;
  SubRepEmbedding out;
  out.rep.q = m.q;
  for (const auto& s : u.spaces) out.rep.dims.push_back(s.dim());
  for (int a = 0; a < m.q->num_arrows(); ++a) {
    const auto& ar = m.q->arrows[a];
    // incl_t * R_a = M_a * incl_s, solvable by stability.
    const Mat rhs = m.maps[a] * u.spaces[ar.src].basis;
    out.rep.maps.push_back(coordinates_in(u.spaces[ar.dst], rhs));
  }
  out.incl = RepMor{out.rep, m, {}};
  for (const auto& s : u.spaces) out.incl.comps.push_back(s.basis);
  return out;
}

QuotientRep quotient_rep(const Rep& m, const SubRep& u) {
  QuotientRep out;
  out.rep.q = m.q;
  std::vector<ComplementData> cd;
  for (const auto& s : u.spaces) {
    cd.push_back(complement(s));
    out.rep.dims.push_back(cd.back().proj.rows);
  }
  for (int a = 0; a < m.q->num_arrows(); ++a) {
    const auto& ar = m.q->arrows[a];
    out.rep.maps.push_back(cd[ar.dst].proj * m.maps[a] * cd[ar.src].section);
  }
  out.proj = RepMor{m, out.rep, {}};
  for (std::size_t v = 0; v < u.spaces.size(); ++v) {
    out.proj.comps.push_back(cd[v].proj);
    out.sections.push_back(cd[v].section);
  }
  return out;
}

Factorization factor_morphism(const RepMor& f) {
  Factorization out;
  const SubRep ker = kernel_subrep(f);
  auto ker_emb = sub_to_rep(ker);
  out.kernel = ker_emb.rep;
  out.kernel_incl = ker_emb.incl;

  const SubRep img = image_subrep(f);
  auto img_emb = sub_to_rep(img);
  out.image = img_emb.rep;
  out.image_incl = img_emb.incl;
  out.image_proj = RepMor{f.src, out.image, {}};
  for (std::size_t v = 0; v < f.comps.size(); ++v)
    out.image_proj.comps.push_back(coordinates_in(img.spaces[v], f.comps[v]));

  auto quot = quotient_rep(f.dst, img);
  out.cokernel = quot.rep;
  out.coker_proj = quot.proj;
  return out;
}

std::vector<StandardProjective> standard_projectives(const QuiverPtr& q) {
  std::vector<StandardProjective> out;
  for (int v = 0; v < q->num_vertices(); ++v) {
    StandardProjective pv;
    pv.vertex = v;
    pv.paths.assign(q->num_vertices(), {});
    // Breadth-first path enumeration, arrows in index order: deterministic.
    std::vector<std::pair<int, std::vector<int>>> frontier{{v, {}}};
    pv.paths[v].push_back({});
    while (!frontier.empty()) {
      std::vector<std::pair<int, std::vector<int>>> next;
      for (const auto& [w, p] : frontier)
        for (int a = 0; a < q->num_arrows(); ++a)
          if (q->arrows[a].src == w) {
            std::vector<int> ext = p;
            ext.push_back(a);
            pv.paths[q->arrows[a].dst].push_back(ext);
            next.push_back({q->arrows[a].dst, std::move(ext)});
          }
      frontier = std::move(next);
    }
    pv.rep.q = q;
    for (int w = 0; w < q->num_vertices(); ++w)
      pv.rep.dims.push_back(static_cast<int>(pv.paths[w].size()));
    for (int a = 0; a < q->num_arrows(); ++a) {
      const auto& ar = q->arrows[a];
      Mat m(pv.rep.dims[ar.dst], pv.rep.dims[ar.src]);
      for (std::size_t i = 0; i < pv.paths[ar.src].size(); ++i) {
        std::vector<int> ext = pv.paths[ar.src][i];
        ext.push_back(a);
        const auto& tgt = pv.paths[ar.dst];
        const auto it = std::find(tgt.begin(), tgt.end(), ext);
        if (it == tgt.end()) throw InternalError("projective path lookup");
        m.at(static_cast<int>(it - tgt.begin()), static_cast<int>(i)) = 1;
      }
      pv.rep.maps.push_back(std::move(m));
    }
    out.push_back(std::move(pv));
  }
  return out;
}

RepMor projective_hom(const StandardProjective& pv, const Rep& m,
                      const Mat& vec) {
  if (vec.rows != m.dims[pv.vertex] || vec.cols != 1)
    throw ContractError("projective_hom: classifying vector shape");
  RepMor f{pv.rep, m, {}};
  for (int w = 0; w < m.q->num_vertices(); ++w) {
    Mat comp(m.dims[w], pv.rep.dims[w]);
    for (std::size_t i = 0; i < pv.paths[w].size(); ++i) {
      Mat val = vec;
      for (int a : pv.paths[w][i]) val = m.maps[a] * val;
      for (int r = 0; r < m.dims[w]; ++r) comp.at(r, static_cast<int>(i)) = val.at(r, 0);
    }
    f.comps.push_back(std::move(comp));
  }
  return f;
}

SubRep radical_subrep(const Rep& m) {
  SubRep rad = SubRep::zero(m);
  for (int a = 0; a < m.q->num_arrows(); ++a) {
    const auto& ar = m.q->arrows[a];
    rad.spaces[ar.dst] =
        subspace_sum(rad.spaces[ar.dst], column_space(m.maps[a]));
  }
  return rad;
}

CoverEpi projective_cover(const Rep& m) {
  const auto projs = standard_projectives(m.q);
  auto top = quotient_rep(m, radical_subrep(m));
  std::vector<Rep> parts;
  std::vector<std::pair<int, Mat>> classifiers;  // (vertex, lifted vector)
  for (int v = 0; v < m.q->num_vertices(); ++v)
    for (int i = 0; i < top.rep.dims[v]; ++i) {
      parts.push_back(projs[v].rep);
      classifiers.push_back({v, top.sections[v].col(i)});
    }
  CoverEpi out;
  if (parts.empty()) {
    out.cover = Rep::zero(m.q);
    out.epi = RepMor::zero(out.cover, m);
    if (!m.is_zero()) throw InternalError("projective_cover: empty top");
    return out;
  }
  auto sum = direct_sum(parts);
  out.cover = sum.sum;
  RepMor epi = RepMor::zero(out.cover, m);
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const RepMor piece =
        projective_hom(projs[classifiers[p].first], m, classifiers[p].second);
    epi = epi + piece * sum.proj[p];
  }
  if (!image_subrep(epi).is_full())
    throw InternalError("projective_cover: not surjective");
  out.epi = std::move(epi);
  return out;
}

std::optional<RepMor> projectivity_certificate(const Rep& m) {
  CoverEpi c = projective_cover(m);
  if (c.cover.dims != m.dims) return std::nullopt;
  if (!c.epi.is_iso()) return std::nullopt;
  return c.epi;
}

SubRep torsion_trace(const TorsionPair& t, const Rep& m) {
  SubRep tr = SubRep::zero(m);
  for (const Rep& g : t.generators)
    for (const RepMor& f : hom_basis(g, m))
      tr = subrep_sum(tr, image_subrep(f));
  return tr;
}

TraceResult trace_radical(const TorsionPair& t, const Rep& m) {
  TraceResult out;
  out.torsion_sub = torsion_trace(t, m);
  auto emb = sub_to_rep(out.torsion_sub);
  out.torsion_rep = emb.rep;
  out.torsion_incl = emb.incl;
  auto quot = quotient_rep(m, out.torsion_sub);
  out.quotient = quot.rep;
  out.quotient_proj = quot.proj;
  out.idempotent = torsion_trace(t, out.torsion_rep).is_full();
  out.quotient_torsion_free = torsion_trace(t, out.quotient).is_zero();
  if (!out.idempotent || !out.quotient_torsion_free)
    throw TorsionError(std::string("not a torsion pair at this object (") +
                       (out.idempotent ? "quotient not torsion-free"
                                       : "trace not idempotent") +
                       ")");
  return out;
}

std::optional<RepMor> find_iso(const Rep& a, const Rep& b) {
  if (a.dims != b.dims) return std::nullopt;
  if (a.total_dim() == 0) return RepMor::zero(a, b);
  const auto basis = hom_basis(a, b);
  if (basis.empty()) return std::nullopt;
  auto try_mor = [&](const RepMor& f) -> bool { return f.is_iso(); };
  for (const auto& f : basis)
    if (try_mor(f)) return f;
  RepMor sum = basis.front();
  for (std::size_t i = 1; i < basis.size(); ++i) sum = sum + basis[i];
  if (try_mor(sum)) return sum;
  Rng rng(0x1505b1a5ULL + static_cast<std::uint64_t>(basis.size()));
  for (int draw = 0; draw < 128; ++draw) {
    RepMor f = RepMor::zero(a, b);
    for (const auto& g : basis) f = f + g.scaled(Rat(rng.range(-20, 20)));
    if (try_mor(f)) return f;
  }
  return std::nullopt;
}

bool rep_iso(const Rep& a, const Rep& b) { return find_iso(a, b).has_value(); }

SubquiverMap induced_subquiver(const QuiverPtr& q,
                               const std::vector<int>& vertices) {
  SubquiverMap out;
  out.ambient = q;
  std::vector<std::string> labels;
  std::vector<int> inv(q->num_vertices(), -1);
  for (int v : vertices) {
    inv[v] = static_cast<int>(labels.size());
    labels.push_back(q->vertices[v]);
    out.vertex_of.push_back(v);
  }
  std::vector<std::tuple<std::string, std::string, std::string>> arrows;
  for (int a = 0; a < q->num_arrows(); ++a) {
    const auto& ar = q->arrows[a];
    if (inv[ar.src] >= 0 && inv[ar.dst] >= 0) {
      arrows.push_back({q->vertices[ar.src], q->vertices[ar.dst], ar.label});
      out.arrow_of.push_back(a);
    }
  }
  out.sub = make_quiver(labels, arrows);
  return out;
}

Rep restrict_rep(const SubquiverMap& s, const Rep& m) {
  std::vector<bool> kept(m.q->num_vertices(), false);
  for (int v : s.vertex_of) kept[v] = true;
  for (int v = 0; v < m.q->num_vertices(); ++v)
    if (!kept[v] && m.dims[v] != 0)
      throw ContractError("restrict_rep: support outside subquiver");
  Rep out;
  out.q = s.sub;
  for (int v : s.vertex_of) out.dims.push_back(m.dims[v]);
  for (int a : s.arrow_of) out.maps.push_back(m.maps[a]);
  return out;
}

Rep extend_rep(const SubquiverMap& s, const Rep& m) {
  Rep out = Rep::zero(s.ambient);
  for (std::size_t v = 0; v < s.vertex_of.size(); ++v)
    out.dims[s.vertex_of[v]] = m.dims[v];
  for (int a = 0; a < s.ambient->num_arrows(); ++a) {
    const auto& ar = s.ambient->arrows[a];
    out.maps[a] = Mat(out.dims[ar.dst], out.dims[ar.src]);
  }
  for (std::size_t a = 0; a < s.arrow_of.size(); ++a)
    out.maps[s.arrow_of[a]] = m.maps[a];
  return out;
}

}  // namespace fcat
