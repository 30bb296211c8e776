#pragma once
// Dense matrices over GF(q): row reduction, rank, right kernel and row-space
// intersection/equality.  Pivoting is deterministic (leftmost column, first
// nonzero row), so bases are reproducible.

#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

#include "agchull/galois.hpp"

namespace agchull {

class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, Elem{0}) {}

  static Matrix identity(FieldPtr f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f->one();
    return m;
  }
  static Matrix from_rows(FieldPtr f, const std::vector<std::vector<Elem>>& rows, std::size_t cols) {
    Matrix m(std::move(f), rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error("ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<Elem> row(std::size_t i) const {
    return {a_.begin() + static_cast<std::ptrdiff_t>(i * cols_), a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }
  void append_row(const std::vector<Elem>& r) {
    if (r.size() != cols_) throw Error("row length mismatch");
    a_.insert(a_.end(), r.begin(), r.end());
    ++rows_;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return same_field(x.field_, y.field_) && x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

 private:
  FieldPtr field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Elem> a_;
};

namespace detail {
inline void require_compatible(const Matrix& a, const Matrix& b) {
  if (!same_field(a.field(), b.field())) throw Error("matrices over different fields");
  if (a.cols() != b.cols()) throw Error("column count mismatch");
}
}  // namespace detail

inline Matrix transpose(const Matrix& a) {
  Matrix t(a.field(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

inline Matrix operator*(const Matrix& a, const Matrix& b) {
  if (!same_field(a.field(), b.field())) throw Error("matrices over different fields");
  if (a.cols() != b.rows()) throw Error("inner dimension mismatch");
  const auto& f = *a.field();
  Matrix c(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Elem x = a(i, l);
      if (x.v == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = f.add(c(i, j), f.mul(x, b(l, j)));
    }
  return c;
}

inline Matrix stack(const Matrix& a, const Matrix& b) {
  detail::require_compatible(a, b);
  Matrix s = a;
  for (std::size_t i = 0; i < b.rows(); ++i) s.append_row(b.row(i));
  return s;
}

inline Matrix scale(const Matrix& a, Elem s) {
  Matrix r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a.field()->mul(a(i, j), s);
  return r;
}

inline bool is_zero(const Matrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j).v != 0) return false;
  return true;
}

struct Echelon {
  Matrix rref;                      // zero rows removed
  std::vector<std::size_t> pivots;  // pivot column of each row
};

/// Reduced row echelon form with zero rows dropped.
inline Echelon row_reduce(Matrix m) {
  const auto& f = *m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c).v == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    const Elem s = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), s);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).v == 0) continue;
      const Elem x = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(x, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix out(m.field(), 0, m.cols());
  for (std::size_t i = 0; i < r; ++i) out.append_row(m.row(i));
  return {std::move(out), std::move(pivots)};
}

inline std::size_t matrix_rank(const Matrix& a) { return row_reduce(a).pivots.size(); }

/// Rows form a basis of {v : A v^T = 0}.  Row i corresponds to the i-th free column.
inline Matrix kernel_basis(const Matrix& a) {
  const auto& f = *a.field();
  const auto ech = row_reduce(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  Matrix ker(a.field(), 0, a.cols());
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(a.cols(), f.zero());
    v[free] = f.one();
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) v[ech.pivots[i]] = f.neg(ech.rref(i, free));
    ker.append_row(v);
  }
  if (ech.pivots.size() + ker.rows() != a.cols()) throw Error("rank-nullity violated");
  return ker;
}

/// Reduces `v` against an RREF basis; returns the remainder.
inline std::vector<Elem> reduce_against(const Echelon& e, std::vector<Elem> v) {
  const auto& f = *e.rref.field();
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    const Elem x = v[e.pivots[i]];
    if (x.v == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f.sub(v[j], f.mul(x, e.rref(i, j)));
  }
  return v;
}

inline bool in_rowspace(const Echelon& e, const std::vector<Elem>& v) {
  for (auto x : reduce_against(e, v))
    if (x.v != 0) return false;
  return true;
}

/// Basis (in RREF) of rowspace(A) ∩ rowspace(B), from the left kernel of [A; B].
inline Matrix rowspace_intersect(const Matrix& a, const Matrix& b) {
  detail::require_compatible(a, b);
  const auto& f = *a.field();
  const auto left_kernel = kernel_basis(transpose(stack(a, b)));
  Matrix span(a.field(), 0, a.cols());
  for (std::size_t r = 0; r < left_kernel.rows(); ++r) {
    std::vector<Elem> v(a.cols(), f.zero());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      const Elem x = left_kernel(r, i);
      if (x.v == 0) continue;
      for (std::size_t j = 0; j < a.cols(); ++j) v[j] = f.add(v[j], f.mul(x, a(i, j)));
    }
    span.append_row(v);
  }
  auto basis = row_reduce(span).rref;
  const auto expected = matrix_rank(a) + matrix_rank(b) - matrix_rank(stack(a, b));
  if (basis.rows() != expected) throw Error("intersection dimension formula violated");
  return basis;
}

inline bool rowspace_contains(const Matrix& big, const Matrix& small) {
  detail::require_compatible(big, small);
  const auto e = row_reduce(big);
  for (std::size_t i = 0; i < small.rows(); ++i)
    if (!in_rowspace(e, small.row(i))) return false;
  return true;
}

inline bool rowspace_equal(const Matrix& a, const Matrix& b) {
  return rowspace_contains(a, b) && rowspace_contains(b, a);
}

/// Plain-text exchange format: "q n k" then k rows of n element codes.
inline void write_matrix(std::ostream& os, const Matrix& m) {
  os << m.field()->order() << ' ' << m.cols() << ' ' << m.rows() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j).v;
    os << '\n';
  }
}

inline Matrix read_matrix(std::istream& is) {
  std::int64_t q = 0;
  std::size_t n = 0, k = 0;
  if (!(is >> q >> n >> k)) throw Error("malformed matrix header");
  auto field = make_field_of_order(q);
  Matrix m(field, k, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::uint32_t code = 0;
      if (!(is >> code)) throw Error("truncated matrix body");
      m(i, j) = field->from_code(code);
    }
  return m;
}

}  // namespace agchull
