#pragma once

#include "fcat/matrix.hpp"

#include <utility>
#include <vector>

namespace fcat {

// Flat variable layout for a family of unknown matrices. Every morphism
// solver in the library packs its unknowns through one of these so that
// variable order (and hence every echelon basis) is deterministic.
struct VarPack {
  struct Block {
    int rows;
    int cols;
    int offset;
  };
  std::vector<Block> blocks;
  int total = 0;

  int add(int rows, int cols) {
    blocks.push_back({rows, cols, total});
    total += rows * cols;
    return static_cast<int>(blocks.size()) - 1;
  }

  int index(int block, int r, int c) const {
    const Block& b = blocks[block];
    return b.offset + r * b.cols + c;
  }

  // Extracts the block from a flat column vector (total x 1).
  Mat unpack(int block, const Mat& flat) const {
    const Block& b = blocks[block];
    Mat m(b.rows, b.cols);
    for (int i = 0; i < b.rows; ++i)
      for (int j = 0; j < b.cols; ++j) m.at(i, j) = flat.at(index(block, i, j), 0);
    return m;
  }
};

// Sparse accumulator for linear systems over the packed variables.
class LinearSystem {
 public:
  explicit LinearSystem(int nvars) : nvars_(nvars) {}

  int num_rows() const { return static_cast<int>(rhs_.size()); }

  // Appends `count` zero rows, returns the base index.
  int add_rows(int count) {
    const int base = num_rows();
    rhs_.resize(rhs_.size() + count, Rat(0));
    return base;
  }

  void coeff(int row, int var, const Rat& c) {
    if (c != 0) triplets_.push_back({row, var, c});
  }

  void add_rhs(int row, const Rat& c) { rhs_[row] += c; }

  // Rows (base + i*X.cols + j) gain the entries of sign * A * X for the
  // unknown block X.
  void add_ax(int base, const Mat& a, const VarPack& vp, int block,
              const Rat& sign) {
    const auto& b = vp.blocks[block];
    if (a.cols != b.rows) throw ContractError("LinearSystem::add_ax: shape");
    for (int i = 0; i < a.rows; ++i)
      for (int k = 0; k < b.rows; ++k) {
        const Rat& v = a.at(i, k);
        if (v == 0) continue;
        for (int j = 0; j < b.cols; ++j)
          coeff(base + i * b.cols + j, vp.index(block, k, j), sign * v);
      }
  }

  // Rows (base + i*C.cols + j) gain the entries of sign * X * C.
  void add_xc(int base, const VarPack& vp, int block, const Mat& c,
              const Rat& sign) {
    const auto& b = vp.blocks[block];
    if (b.cols != c.rows) throw ContractError("LinearSystem::add_xc: shape");
    for (int i = 0; i < b.rows; ++i)
      for (int k = 0; k < b.cols; ++k)
        for (int j = 0; j < c.cols; ++j) {
          const Rat& v = c.at(k, j);
          if (v != 0) coeff(base + i * c.cols + j, vp.index(block, i, k), sign * v);
        }
  }

  // Rows (base + i*c.cols + j) gain the entries of sign * A * X * C.
  void add_axc(int base, const Mat& a, const VarPack& vp, int block,
               const Mat& c, const Rat& sign) {
    const auto& b = vp.blocks[block];
    if (a.cols != b.rows || b.cols != c.rows)
      throw ContractError("LinearSystem::add_axc: shape");
    for (int i = 0; i < a.rows; ++i)
      for (int k = 0; k < b.rows; ++k) {
        const Rat& av = a.at(i, k);
        if (av == 0) continue;
        for (int l = 0; l < b.cols; ++l)
          for (int j = 0; j < c.cols; ++j) {
            const Rat& cv = c.at(l, j);
            if (cv != 0)
              coeff(base + i * c.cols + j, vp.index(block, k, l), sign * av * cv);
          }
      }
  }

  // Adds sign * K to the right-hand side block starting at `base`.
  void add_rhs_mat(int base, const Mat& k, const Rat& sign) {
    for (int i = 0; i < k.rows; ++i)
      for (int j = 0; j < k.cols; ++j)
        if (k.at(i, j) != 0) add_rhs(base + i * k.cols + j, sign * k.at(i, j));
  }

  Mat assemble() const {
    Mat m(num_rows(), nvars_);
    for (const auto& t : triplets_) m.at(t.row, t.var) += t.value;
    return m;
  }

  Mat rhs_column() const {
    Mat b(num_rows(), 1);
    for (int i = 0; i < num_rows(); ++i) b.at(i, 0) = rhs_[i];
    return b;
  }

  // Particular solution + homogeneous solution space, or nothing if
  // inconsistent.
  std::optional<std::pair<Mat, Subspace>> solve_full() const {
    return fcat::solve(assemble(), rhs_column());
  }

  // Solution space of the homogeneous system (rhs ignored).
  Subspace homogeneous_solutions() const { return nullspace(assemble()); }

 private:
  struct Triplet {
    int row;
    int var;
    Rat value;
  };
  int nvars_;
  std::vector<Triplet> triplets_;
  std::vector<Rat> rhs_;
};

}  // namespace fcat
