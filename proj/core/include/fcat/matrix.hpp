#pragma once

#include "fcat/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fcat {

// Dense exact-rational matrix, row major. 0xn and nx0 matrices are valid
// and denote zero maps between the corresponding spaces.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<Rat> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {
    if (r < 0 || c < 0) throw ContractError("Mat: negative dimension");
  }

  Rat& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const Rat& at(int r, int c) const {
    return a[static_cast<std::size_t>(r) * cols + c];
  }

  static Mat identity(int n);
  static Mat zero(int r, int c) { return Mat(r, c); }
  // Row-major initializer over longs, for fixtures and tests.
  static Mat from_rows(int r, int c, const std::vector<long>& entries);

  bool is_zero() const;
  bool is_identity() const;
  Mat transpose() const;
  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator-() const;
  Mat scaled(const Rat& c) const;
  bool operator==(const Mat& o) const = default;

  Mat col(int c) const;
  // Columns [c0, c1).
  Mat col_range(int c0, int c1) const;
  std::string to_string() const;
};

Mat hcat(const Mat& l, const Mat& r);
Mat vcat(const Mat& t, const Mat& b);

struct RrefResult {
  Mat r;
  std::vector<int> pivots;  // pivot column indices, increasing
};

// Reduced row-echelon form; rank == pivots.size().
RrefResult rref(const Mat& m);

int rank(const Mat& m);

// Is the square matrix invertible?
bool invertible(const Mat& m);

// A linear subspace of Q^ambient, stored as the unique reduced
// column-echelon basis so that equality of values is equality of spaces.
struct Subspace {
  int ambient = 0;
  Mat basis;  // ambient x dim, reduced column echelon

  Subspace() = default;
  // Canonicalizes the span of the given columns.
  static Subspace span(int ambient, const Mat& generators);
  static Subspace zero(int ambient) { return span(ambient, Mat(ambient, 0)); }
  static Subspace full(int ambient) {
    return span(ambient, Mat::identity(ambient));
  }

  int dim() const { return basis.cols; }
  bool is_zero() const { return basis.cols == 0; }
  bool is_full() const { return basis.cols == ambient; }
  bool contains(const Mat& vec) const;      // vec: ambient x 1
  bool contains_all(const Mat& vecs) const; // columns
  bool contains(const Subspace& other) const;

  bool operator==(const Subspace& o) const = default;
};

// Solves A X = B exactly. Returns nothing when inconsistent; otherwise one
// particular solution together with the nullspace of A.
std::optional<std::pair<Mat, Subspace>> solve(const Mat& a, const Mat& b);

// Nullspace of A as a canonical subspace of Q^cols.
Subspace nullspace(const Mat& a);

// Column space of A.
Subspace column_space(const Mat& a);

Subspace subspace_sum(const Subspace& u, const Subspace& v);
Subspace subspace_intersection(const Subspace& u, const Subspace& v);

// Canonical complement data for U <= Q^n: proj (codim x n) has kernel
// exactly U, section (n x codim) satisfies proj*section = id. The
// complement is spanned by the unit vectors at the non-pivot rows of U's
// echelon basis.
struct ComplementData {
  Mat proj;
  Mat section;
};
ComplementData complement(const Subspace& u);

// Coordinates of the columns of vecs in terms of u's basis; throws
// ContractError if some column is not contained in u.
Mat coordinates_in(const Subspace& u, const Mat& vecs);

}  // namespace fcat
