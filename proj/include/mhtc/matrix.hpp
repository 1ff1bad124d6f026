#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mhtc/error.hpp"
#include "mhtc/scalar.hpp"

namespace mhtc {

using Vec = std::vector<Scalar>;

inline Vec zero_vec(Field f, std::size_t n) { return Vec(n, Scalar::zero(f)); }

inline Vec unit_vec(Field f, std::size_t n, std::size_t i) {
  Vec v = zero_vec(f, n);
  v.at(i) = Scalar::one(f);
  return v;
}

inline bool is_zero(const Vec& v) {
  for (const auto& s : v) {
    if (!s.is_zero()) return false;
  }
  return true;
}

inline std::string to_string(const Vec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].to_string();
  }
  return out + ")";
}

/// Dense row-major matrix over an exact field.
class Matrix {
 public:
  Matrix() = default;

  Matrix(Field f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(f)) {}

  static Matrix identity(Field f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
    return m;
  }

  static Matrix from_rows(Field f, const std::vector<std::vector<std::int64_t>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    Matrix m(f, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw InputError("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar(f, rows[i][j]);
    }
    return m;
  }

  static Matrix column(const Vec& v, Field f) {
    Matrix m(f, v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }

  /// Matrix whose columns are the given vectors (all of length rows).
  static Matrix from_columns(Field f, std::size_t rows, const std::vector<Vec>& cols) {
    Matrix m(f, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw InputError("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec col(std::size_t j) const {
    Vec v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }

  bool is_zero() const {
    for (const auto& s : data_) {
      if (!s.is_zero()) return false;
    }
    return true;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_shape(a, b, "+");
    Matrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += b.data_[k];
    return r;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_shape(a, b, "-");
    Matrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] -= b.data_[k];
    return r;
  }

  friend Matrix operator*(const Scalar& s, const Matrix& a) {
    Matrix r = a;
    for (auto& x : r.data_) x = s * x;
    return r;
  }

  // Skips zero entries of the left operand; most maps here are sparse.
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw InputError("matrix product shape mismatch: " + a.shape() + " * " + b.shape());
    }
    Matrix r(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Scalar& bkj = b(k, j);
          if (bkj.is_zero()) continue;
          r(i, j) += aik * bkj;
        }
      }
    }
    return r;
  }

  friend Vec operator*(const Matrix& a, const Vec& v) {
    if (a.cols_ != v.size()) throw InputError("matrix-vector shape mismatch: " + a.shape());
    Vec r = zero_vec(a.field_, a.rows_);
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (v[k].is_zero()) continue;
      for (std::size_t i = 0; i < a.rows_; ++i) {
        const Scalar& aik = a(i, k);
        if (!aik.is_zero()) r[i] += aik * v[k];
      }
    }
    return r;
  }

  Matrix& operator+=(const Matrix& o) { return *this = *this + o; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    for (std::size_t i = 0; i < m.rows_; ++i) {
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j);
      os << '\n';
    }
    return os;
  }

 private:
  static void check_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
      throw InputError(std::string("matrix shape mismatch in ") + op + ": " + a.shape() + " vs " + b.shape());
    }
  }

  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Kronecker product; index (i, j) of the result pairs row i of a with row j
/// of b as i * b.rows() + j.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix r(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Scalar& aij = a(i, j);
      if (aij.is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) {
          if (b(k, l).is_zero()) continue;
          r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    }
  return r;
}

inline Vec kron(const Vec& a, const Vec& b) {
  Vec r;
  r.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) r.push_back(x * y);
  return r;
}

/// Horizontal concatenation.
inline Matrix hstack(const std::vector<Matrix>& parts, Field f, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) throw InputError("hstack row mismatch");
    cols += p.cols();
  }
  Matrix r(f, rows, cols);
  std::size_t c = 0;
  for (const auto& p : parts) {
    r.set_block(0, c, p);
    c += p.cols();
  }
  return r;
}

/// Vertical concatenation.
inline Matrix vstack(const std::vector<Matrix>& parts, Field f, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw InputError("vstack column mismatch");
    rows += p.rows();
  }
  Matrix r(f, rows, cols);
  std::size_t c = 0;
  for (const auto& p : parts) {
    r.set_block(c, 0, p);
    c += p.rows();
  }
  return r;
}

/// Reduced row echelon form with first-nonzero pivoting.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivot_cols;
};

inline Echelon row_reduce(Matrix m) {
  Echelon e;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    }
    Scalar inv = m(row, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, c).is_zero()) continue;
      Scalar factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (!m(row, j).is_zero()) m(i, j) -= factor * m(row, j);
      }
    }
    e.pivot_cols.push_back(c);
    ++row;
  }
  e.reduced = std::move(m);
  return e;
}

inline std::size_t rank(const Matrix& a) {
  // Eliminate on the smaller side.
  if (a.rows() > a.cols()) return row_reduce(a.transpose()).pivot_cols.size();
  return row_reduce(a).pivot_cols.size();
}

/// Basis of the null space of a, as columns of an n x k matrix.
inline Matrix kernel_basis(const Matrix& a) {
  Echelon e = row_reduce(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v = unit_vec(a.field(), a.cols(), free);
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) v[e.pivot_cols[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return Matrix::from_columns(a.field(), a.cols(), basis);
}

struct SolveResult {
  enum class Kind { kUnique, kNone, kAffine };
  Kind kind = Kind::kNone;
  Matrix particular;  // n x k, valid unless kind == kNone
  Matrix kernel;      // n x dim(ker A)

  bool solvable() const { return kind != Kind::kNone; }
  bool unique() const { return kind == Kind::kUnique; }
};

/// Solves A X = B exactly. Reports uniqueness or the affine solution set.
inline SolveResult solve_linear(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) {
    throw InputError("solve_linear shape mismatch: A is " + a.shape() + ", b is " + b.shape());
  }
  const std::size_t n = a.cols();
  Matrix aug = hstack({a, b}, a.field(), a.rows());
  Echelon e = row_reduce(aug);
  SolveResult res;
  for (auto c : e.pivot_cols) {
    if (c >= n) return res;  // pivot in the right-hand side: inconsistent
  }
  res.particular = Matrix(a.field(), n, b.cols());
  for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
    for (std::size_t j = 0; j < b.cols(); ++j) res.particular(e.pivot_cols[r], j) = e.reduced(r, n + j);
  res.kernel = kernel_basis(a);
  res.kind = res.kernel.cols() == 0 ? SolveResult::Kind::kUnique : SolveResult::Kind::kAffine;
  return res;
}

inline std::optional<Matrix> inverse(const Matrix& a) {
  if (!a.is_square()) return std::nullopt;
  auto res = solve_linear(a, Matrix::identity(a.field(), a.rows()));
  if (!res.unique()) return std::nullopt;
  return res.particular;
}

inline bool is_invertible(const Matrix& a) { return a.is_square() && rank(a) == a.rows(); }

}  // namespace mhtc
