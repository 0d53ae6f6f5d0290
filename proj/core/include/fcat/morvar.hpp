#pragma once

#include "fcat/linsys.hpp"
#include "fcat/quiver.hpp"

#include <vector>

namespace fcat {

// Unknown morphisms of representations inside a LinearSystem: one slot per
// unknown RepMor, one variable block per vertex, plus the commuting-square
// constraints that make a solution an actual morphism.
struct MorVarSet {
  struct Slot {
    Rep src;
    Rep dst;
    std::vector<int> blocks;  // per vertex
  };
  std::vector<Slot> slots;

  int add_slot(VarPack& vp, const Rep& src, const Rep& dst) {
    Slot s{src, dst, {}};
    for (int v = 0; v < src.q->num_vertices(); ++v)
      s.blocks.push_back(vp.add(dst.dims[v], src.dims[v]));
    slots.push_back(std::move(s));
    return static_cast<int>(slots.size()) - 1;
  }

  void add_morphism_constraints(LinearSystem& ls, const VarPack& vp,
                                int slot) const {
    const Slot& s = slots[slot];
    for (int a = 0; a < s.src.q->num_arrows(); ++a) {
      const auto& ar = s.src.q->arrows[a];
      const int rows = s.dst.dims[ar.dst] * s.src.dims[ar.src];
      if (rows == 0) continue;
      const int base = ls.add_rows(rows);
      ls.add_ax(base, s.dst.maps[a], vp, s.blocks[ar.src], Rat(1));
      ls.add_xc(base, vp, s.blocks[ar.dst], s.src.maps[a], Rat(-1));
    }
  }

  RepMor unpack(int slot, const VarPack& vp, const Mat& flat) const {
    const Slot& s = slots[slot];
    RepMor f{s.src, s.dst, {}};
    for (int v = 0; v < s.src.q->num_vertices(); ++v)
      f.comps.push_back(vp.unpack(s.blocks[v], flat));
    return f;
  }

  // Rows for (sign * X_slot * c) where c is a fixed matrix applied on the
  // source side: contributes to equations of shape (dst.dims[v] x c.cols).
  // Helpers below operate per vertex; callers drive the degree bookkeeping.
};

}  // namespace fcat
