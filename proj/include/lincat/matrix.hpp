#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lincat/error.hpp"
#include "lincat/scalar.hpp"

namespace lincat {

// Dense row-major matrix over a single exact field.
class Matrix {
 public:
  Matrix() = default;

  Matrix(FieldSpec field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(field)) {}

  static Matrix identity(FieldSpec field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(field);
    return m;
  }

  // Columns must all have length `rows`.
  static Matrix from_columns(FieldSpec field, std::size_t rows,
                             const std::vector<Vector>& columns) {
    Matrix m(field, rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw InputError("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = checked(field, columns[j][i]);
    }
    return m;
  }

  static Matrix from_rows(FieldSpec field, std::size_t cols, const std::vector<Vector>& rows) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw InputError("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = checked(field, rows[i][j]);
    }
    return m;
  }

  // Convenience for tests and fixtures: integer entries, row-major.
  static Matrix from_ints(FieldSpec field, std::size_t rows, std::size_t cols,
                          const std::vector<long long>& entries) {
    if (entries.size() != rows * cols) throw InputError("entry count mismatch");
    Matrix m(field, rows, cols);
    for (std::size_t k = 0; k < entries.size(); ++k) {
      m.data_[k] = Scalar(field, entries[k]);
    }
    return m;
  }

  FieldSpec field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const std::vector<Scalar>& entries() const noexcept { return data_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector column(std::size_t j) const {
    Vector v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }

  Vector row(std::size_t i) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  void set_column(std::size_t j, const Vector& v) {
    if (v.size() != rows_) throw InputError("column length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
  }

  Vector apply(const Vector& v) const {
    if (v.size() != cols_) throw InputError("matrix-vector shape mismatch");
    Vector out = zero_vector(field_, rows_);
    for (std::size_t j = 0; j < cols_; ++j) {
      if (v[j].is_zero()) continue;
      for (std::size_t i = 0; i < rows_; ++i) {
        const Scalar& a = (*this)(i, j);
        if (!a.is_zero()) out[i] += a * v[j];
      }
    }
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix product shape mismatch");
    if (a.field_ != b.field_) throw FieldMismatch("matrix product across fields");
    Matrix c(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (!b(k, j).is_zero()) c(i, j) += x * b(k, j);
        }
      }
    }
    return c;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix sum shape mismatch");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix difference shape mismatch");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  static const Scalar& checked(FieldSpec field, const Scalar& s) {
    if (s.field() != field) {
      throw FieldMismatch("entry over " + s.field().name() + " in a matrix over " + field.name());
    }
    return s;
  }

  FieldSpec field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

// Reduced row echelon form. Pivoting is deterministic: columns left to right,
// the first row at or below the current one with a nonzero entry.
inline RrefResult rref(Matrix m) {
  RrefResult out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(row, j));
    }
    Scalar inv = m(row, col).inverse();
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      Scalar factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        if (!m(row, j).is_zero()) m(i, j) -= factor * m(row, j);
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.rank = out.pivots.size();
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank; }

// Basis of the null space, one column per free variable of the RREF.
inline std::vector<Vector> kernel_basis(const Matrix& m) {
  RrefResult r = rref(m);
  const FieldSpec f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v = unit_vector(f, m.cols(), free);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
      v[r.pivots[i]] = -r.reduced(i, free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// Solves a x = b; nullopt when inconsistent. Free variables are set to zero.
inline std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw InputError("right-hand side length mismatch");
  Matrix aug(a.field(), a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  RrefResult r = rref(std::move(aug));
  if (!r.pivots.empty() && r.pivots.back() == a.cols()) return std::nullopt;
  Vector x = zero_vector(a.field(), a.cols());
  for (std::size_t i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = r.reduced(i, a.cols());
  return x;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Scalar::one(m.field());
  }
  RrefResult r = rref(std::move(aug));
  if (r.rank < n || (n > 0 && r.pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.reduced(i, n + j);
  }
  return inv;
}

inline bool is_invertible(const Matrix& m) {
  return m.rows() == m.cols() && rank(m) == m.rows();
}

// Dimension of the span of the given vectors (all of length `dim`).
inline std::size_t span_dimension(FieldSpec f, std::size_t dim, const std::vector<Vector>& vs) {
  if (vs.empty()) return 0;
  return rank(Matrix::from_rows(f, dim, vs));
}

// A basis of the span, as a reduced echelon family.
inline std::vector<Vector> span_basis(FieldSpec f, std::size_t dim, const std::vector<Vector>& vs) {
  if (vs.empty()) return {};
  RrefResult r = rref(Matrix::from_rows(f, dim, vs));
  std::vector<Vector> out;
  for (std::size_t i = 0; i < r.rank; ++i) out.push_back(r.reduced.row(i));
  return out;
}

inline bool in_span(FieldSpec f, std::size_t dim, const std::vector<Vector>& vs, const Vector& v) {
  std::vector<Vector> all = vs;
  all.push_back(v);
  return span_dimension(f, dim, all) == span_dimension(f, dim, vs);
}

// Representatives of ambient / span(subspace) and the projection onto their
// coordinates. Representatives are the standard unit vectors at the
// non-pivot positions of the RREF of the subspace.
struct QuotientBasis {
  std::vector<Vector> representatives;
  Matrix project;  // representatives.size() x ambient_dim
};

inline QuotientBasis quotient_basis(FieldSpec f, std::size_t ambient_dim,
                                    const std::vector<Vector>& subspace) {
  for (const auto& v : subspace) {
    if (v.size() != ambient_dim) throw InputError("subspace vector outside ambient dimension");
  }
  std::vector<bool> is_pivot(ambient_dim, false);
  RrefResult r;
  if (!subspace.empty()) {
    r = rref(Matrix::from_rows(f, ambient_dim, subspace));
    for (auto p : r.pivots) is_pivot[p] = true;
  }
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < ambient_dim; ++j) {
    if (!is_pivot[j]) free_cols.push_back(j);
  }
  QuotientBasis q;
  q.project = Matrix(f, free_cols.size(), ambient_dim);
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    q.representatives.push_back(unit_vector(f, ambient_dim, free_cols[k]));
    q.project(k, free_cols[k]) = Scalar::one(f);
  }
  // e_p = (e_p - row) + row, and e_p - row is supported on free columns.
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
      q.project(k, r.pivots[i]) = -r.reduced(i, free_cols[k]);
    }
  }
  return q;
}

}  // namespace lincat
