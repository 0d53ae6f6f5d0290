#include "fcat/matrix.hpp"

#include <sstream>

namespace fcat {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::from_rows(int r, int c, const std::vector<long>& entries) {
  if (static_cast<int>(entries.size()) != r * c)
    throw ContractError("Mat::from_rows: entry count mismatch");
  Mat m(r, c);
  for (std::size_t i = 0; i < entries.size(); ++i) m.a[i] = entries[i];
  return m;
}

bool Mat::is_zero() const {
  for (const Rat& x : a)
    if (x != 0) return false;
  return true;
}

bool Mat::is_identity() const {
  if (rows != cols) return false;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

Mat Mat::transpose() const {
  Mat t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols != o.rows) throw ContractError("Mat::operator*: shape mismatch");
  Mat p(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const Rat& x = at(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.cols; ++j) {
        const Rat& y = o.at(k, j);
        if (y != 0) p.at(i, j) += x * y;
      }
    }
  return p;
}

Mat Mat::operator+(const Mat& o) const {
  if (rows != o.rows || cols != o.cols)
    throw ContractError("Mat::operator+: shape mismatch");
  Mat s = *this;
  for (std::size_t i = 0; i < a.size(); ++i) s.a[i] += o.a[i];
  return s;
}

Mat Mat::operator-(const Mat& o) const {
  if (rows != o.rows || cols != o.cols)
    throw ContractError("Mat::operator-: shape mismatch");
  Mat s = *this;
  for (std::size_t i = 0; i < a.size(); ++i) s.a[i] -= o.a[i];
  return s;
}

Mat Mat::operator-() const {
  Mat s = *this;
  for (Rat& x : s.a) x = -x;
  return s;
}

Mat Mat::scaled(const Rat& c) const {
  Mat s = *this;
  for (Rat& x : s.a) x *= c;
  return s;
}

Mat Mat::col(int c) const { return col_range(c, c + 1); }

Mat Mat::col_range(int c0, int c1) const {
  if (c0 < 0 || c1 < c0 || c1 > cols)
    throw ContractError("Mat::col_range: bad range");
  Mat m(rows, c1 - c0);
  for (int i = 0; i < rows; ++i)
    for (int j = c0; j < c1; ++j) m.at(i, j - c0) = at(i, j);
  return m;
}

std::string Mat::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < cols; ++j) os << (j ? " " : "") << rat_to_string(at(i, j));
  }
  os << "]";
  return os.str();
}

Mat hcat(const Mat& l, const Mat& r) {
  if (l.rows != r.rows) throw ContractError("hcat: row mismatch");
  Mat m(l.rows, l.cols + r.cols);
  for (int i = 0; i < l.rows; ++i) {
    for (int j = 0; j < l.cols; ++j) m.at(i, j) = l.at(i, j);
    for (int j = 0; j < r.cols; ++j) m.at(i, l.cols + j) = r.at(i, j);
  }
  return m;
}

Mat vcat(const Mat& t, const Mat& b) {
  if (t.cols != b.cols) throw ContractError("vcat: column mismatch");
  Mat m(t.rows + b.rows, t.cols);
  for (int i = 0; i < t.rows; ++i)
    for (int j = 0; j < t.cols; ++j) m.at(i, j) = t.at(i, j);
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j) m.at(t.rows + i, j) = b.at(i, j);
  return m;
}

RrefResult rref(const Mat& m) {
  RrefResult out{m, {}};
  Mat& r = out.r;
  int row = 0;
  for (int col = 0; col < r.cols && row < r.rows; ++col) {
    int piv = -1;
    for (int i = row; i < r.rows; ++i)
      if (r.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < r.cols; ++j) std::swap(r.at(piv, j), r.at(row, j));
    const Rat inv = 1 / Rat(r.at(row, col));
    for (int j = col; j < r.cols; ++j)
      if (r.at(row, j) != 0) r.at(row, j) *= inv;
    for (int i = 0; i < r.rows; ++i) {
      if (i == row) continue;
      const Rat f = r.at(i, col);
      if (f == 0) continue;
      for (int j = col; j < r.cols; ++j)
        if (r.at(row, j) != 0) r.at(i, j) -= f * r.at(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

int rank(const Mat& m) { return static_cast<int>(rref(m).pivots.size()); }

bool invertible(const Mat& m) { return m.rows == m.cols && rank(m) == m.rows; }

Subspace Subspace::span(int ambient, const Mat& generators) {
  if (generators.rows != ambient)
    throw ContractError("Subspace::span: ambient mismatch");
  // Reduced column echelon = transpose of reduced row echelon of the
  // transpose, nonzero columns only.
  RrefResult rr = rref(generators.transpose());
  const int d = static_cast<int>(rr.pivots.size());
  Subspace s;
  s.ambient = ambient;
  s.basis = Mat(ambient, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < ambient; ++i) s.basis.at(i, j) = rr.r.at(j, i);
  return s;
}

bool Subspace::contains(const Mat& vec) const { return contains_all(vec); }

bool Subspace::contains_all(const Mat& vecs) const {
  if (vecs.rows != ambient) throw ContractError("Subspace::contains: ambient");
  if (vecs.cols == 0) return true;
  return rank(hcat(basis, vecs)) == dim();
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient != ambient)
    throw ContractError("Subspace::contains: ambient mismatch");
  return contains_all(other.basis);
}

std::optional<std::pair<Mat, Subspace>> solve(const Mat& a, const Mat& b) {
  if (a.rows != b.rows) throw ContractError("solve: row mismatch");
  RrefResult rr = rref(hcat(a, b));
  // Inconsistent iff some pivot lands in the B block.
  for (int p : rr.pivots)
    if (p >= a.cols) return std::nullopt;
  Mat x(a.cols, b.cols);
  for (std::size_t k = 0; k < rr.pivots.size(); ++k)
    for (int j = 0; j < b.cols; ++j)
      x.at(rr.pivots[k], j) = rr.r.at(static_cast<int>(k), a.cols + j);
  return std::make_pair(std::move(x), nullspace(a));
}

Subspace nullspace(const Mat& a) {
  RrefResult rr = rref(a);
  std::vector<int> free_cols;
  {
    std::size_t k = 0;
    for (int j = 0; j < a.cols; ++j) {
      if (k < rr.pivots.size() && rr.pivots[k] == j)
        ++k;
      else
        free_cols.push_back(j);
    }
  }
  Mat gen(a.cols, static_cast<int>(free_cols.size()));
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    gen.at(free_cols[f], static_cast<int>(f)) = 1;
    for (std::size_t k = 0; k < rr.pivots.size(); ++k)
      gen.at(rr.pivots[k], static_cast<int>(f)) =
          -rr.r.at(static_cast<int>(k), free_cols[f]);
  }
  return Subspace::span(a.cols, gen);
}

Subspace column_space(const Mat& a) { return Subspace::span(a.rows, a); }

Subspace subspace_sum(const Subspace& u, const Subspace& v) {
  if (u.ambient != v.ambient) throw ContractError("subspace_sum: ambient");
  return Subspace::span(u.ambient, hcat(u.basis, v.basis));
}

Subspace subspace_intersection(const Subspace& u, const Subspace& v) {
  if (u.ambient != v.ambient)
    throw ContractError("subspace_intersection: ambient");
  if (u.dim() == 0 || v.dim() == 0) return Subspace::zero(u.ambient);
  // Solutions of U x = V y give intersection vectors U x.
  Subspace ker = nullspace(hcat(u.basis, -v.basis));
  Mat xs(u.dim(), ker.dim());
  for (int i = 0; i < u.dim(); ++i)
    for (int j = 0; j < ker.dim(); ++j) xs.at(i, j) = ker.basis.at(i, j);
  return Subspace::span(u.ambient, u.basis * xs);
}

ComplementData complement(const Subspace& u) {
  const int n = u.ambient;
  // Pivot rows of the echelon basis; complement = remaining unit vectors.
  std::vector<int> pivot_rows;
  for (int j = 0; j < u.dim(); ++j) {
    int p = -1;
    for (int i = 0; i < n; ++i)
      if (u.basis.at(i, j) != 0) {
        p = i;
        break;
      }
    if (p < 0) throw InternalError("complement: zero basis column");
    pivot_rows.push_back(p);
  }
  std::vector<bool> is_pivot(n, false);
  for (int p : pivot_rows) is_pivot[p] = true;
  std::vector<int> rest;
  for (int i = 0; i < n; ++i)
    if (!is_pivot[i]) rest.push_back(i);
  const int c = static_cast<int>(rest.size());

  // proj(x) reduces x modulo the basis (zeroing the pivot rows) and reads
  // off the non-pivot coordinates:
  //   proj(x)[k] = x[rest_k] - sum_j x[pivot_j] * basis[rest_k, j].
  ComplementData out{Mat(c, n), Mat(n, c)};
  for (int k = 0; k < c; ++k) {
    out.section.at(rest[k], k) = 1;
    out.proj.at(k, rest[k]) = 1;
    for (int j = 0; j < u.dim(); ++j)
      out.proj.at(k, pivot_rows[j]) -= u.basis.at(rest[k], j);
  }
  return out;
}

Mat coordinates_in(const Subspace& u, const Mat& vecs) {
  auto sol = solve(u.basis, vecs);
  if (!sol) throw ContractError("coordinates_in: vector outside subspace");
  return sol->first;
}

}  // namespace fcat
