#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mhtc/error.hpp"
#include "mhtc/group.hpp"
#include "mhtc/matrix.hpp"
#include "mhtc/report.hpp"

namespace mhtc {

/// A finite-dimensional associative algebra given by structure constants.
///
/// The constants are stored as left-multiplication operators: column j of
/// left(i) holds the coordinates of b_i * b_j.
class Algebra {
 public:
  Algebra() = default;

  Algebra(Field f, std::vector<Matrix> left_ops) : field_(f), dim_(left_ops.size()), left_(std::move(left_ops)) {
    for (const auto& m : left_) {
      if (m.rows() != dim_ || m.cols() != dim_) {
        throw InputError("algebra: structure constant block has shape " + m.shape() + ", expected " +
                         std::to_string(dim_) + "x" + std::to_string(dim_));
      }
    }
    unit_ = solve_unit();
  }

  /// products[i][j] = coordinates of b_i b_j.
  static Algebra from_products(Field f, const std::vector<std::vector<Vec>>& products) {
    const std::size_t d = products.size();
    std::vector<Matrix> left;
    for (std::size_t i = 0; i < d; ++i) {
      if (products[i].size() != d) throw InputError("algebra: product table is not square");
      left.push_back(Matrix::from_columns(f, d, products[i]));
    }
    return Algebra(f, std::move(left));
  }

  /// The one-dimensional algebra k with 1 * 1 = 1.
  static Algebra ground(Field f) { return Algebra(f, {Matrix::identity(f, 1)}); }

  const Field& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const Matrix& left(std::size_t i) const { return left_[i]; }
  const std::vector<Matrix>& left_ops() const { return left_; }

  Vec basis(std::size_t i) const { return unit_vec(field_, dim_, i); }
  Vec zero() const { return zero_vec(field_, dim_); }

  Vec multiply(const Vec& a, const Vec& b) const { return left_op(a) * b; }

  /// Matrix of b -> a b.
  Matrix left_op(const Vec& a) const {
    Matrix m(field_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (a[i].is_zero()) continue;
      m += a[i] * left_[i];
    }
    return m;
  }

  /// Matrix of b -> b a.
  Matrix right_op(const Vec& a) const {
    Matrix m(field_, dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      // column j: b_j a = sum_i a_i b_j b_i = sum_i a_i left_j(:, i)
      Vec col = left_[j] * a;
      for (std::size_t k = 0; k < dim_; ++k) m(k, j) = col[k];
    }
    return m;
  }

  /// Two-sided identity, when one exists.
  const std::optional<Vec>& unit() const { return unit_; }
  bool is_unital() const { return unit_.has_value(); }

  /// First basis triple with (b_i b_j) b_k != b_i (b_j b_k), if any.
  std::optional<std::array<std::size_t, 3>> associativity_violation() const {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) {
        Matrix lhs = left_op(left_[i].col(j));
        Matrix rhs = left_[i] * left_[j];
        if (!(lhs == rhs)) {
          for (std::size_t k = 0; k < dim_; ++k)
            if (!(lhs.col(k) == rhs.col(k))) return std::array<std::size_t, 3>{i, j, k};
        }
      }
    return std::nullopt;
  }

  /// a A = 0 implies a = 0, and A a = 0 implies a = 0.
  bool is_nondegenerate() const {
    if (dim_ == 0) return true;
    std::vector<Matrix> rights, lefts;
    for (std::size_t j = 0; j < dim_; ++j) {
      rights.push_back(right_op(basis(j)));  // a -> a b_j
      lefts.push_back(left_[j]);             // a -> b_j a
    }
    return rank(vstack(rights, field_, dim_)) == dim_ && rank(vstack(lefts, field_, dim_)) == dim_;
  }

  friend bool operator==(const Algebra& a, const Algebra& b) { return a.field_ == b.field_ && a.left_ == b.left_; }

 private:
  friend Algebra tensor(const Algebra&, const Algebra&);

  Algebra(Field f, std::vector<Matrix> left_ops, std::optional<Vec> unit)
      : field_(f), dim_(left_ops.size()), left_(std::move(left_ops)), unit_(std::move(unit)) {}

  std::optional<Vec> solve_unit() const {
    if (dim_ == 0) return std::nullopt;
    // Unknown u with sum_i u_i left_i = I and sum_i u_i right(b_i) = I.
    const std::size_t eqs = 2 * dim_ * dim_;
    Matrix a(field_, eqs, dim_);
    Matrix rhs(field_, eqs, 1);
    for (std::size_t i = 0; i < dim_; ++i) {
      Matrix r = right_op(basis(i));
      for (std::size_t row = 0; row < dim_; ++row)
        for (std::size_t col = 0; col < dim_; ++col) {
          a(row * dim_ + col, i) = left_[i](row, col);
          a(dim_ * dim_ + row * dim_ + col, i) = r(row, col);
        }
    }
    for (std::size_t row = 0; row < dim_; ++row) {
      rhs(row * dim_ + row, 0) = Scalar::one(field_);
      rhs(dim_ * dim_ + row * dim_ + row, 0) = Scalar::one(field_);
    }
    auto res = solve_linear(a, rhs);
    if (!res.solvable()) return std::nullopt;
    return res.particular.col(0);
  }

  Field field_;
  std::size_t dim_ = 0;
  std::vector<Matrix> left_;
  std::optional<Vec> unit_;
};

/// Tensor product algebra; basis b_i (x) c_j has index i * dim(B) + j.
inline Algebra tensor(const Algebra& a, const Algebra& b) {
  std::vector<Matrix> left;
  left.reserve(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) left.push_back(kron(a.left(i), b.left(j)));
  std::optional<Vec> unit;
  if (a.unit() && b.unit()) unit = kron(*a.unit(), *b.unit());
  return Algebra(a.field(), std::move(left), std::move(unit));
}

inline Algebra tensor(const Algebra& a, const Algebra& b, const Algebra& c) { return tensor(tensor(a, b), c); }

/// An element of a G-graded algebra: one coefficient vector per grade.
struct AlgebraElement {
  std::vector<Vec> parts;

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;
};

/// A = (+)_{p in G} A_p with A_p A_q = 0 for p != q. Cross-grade products
/// are zero by construction since only per-grade constants are stored.
class GradedAlgebra {
 public:
  GradedAlgebra() = default;

  GradedAlgebra(FiniteGroup group, Field field, std::vector<Algebra> components)
      : group_(std::move(group)), field_(field), components_(std::move(components)) {
    if (components_.size() != group_.order()) {
      throw InputError("graded algebra: " + std::to_string(components_.size()) + " components for a group of order " +
                       std::to_string(group_.order()));
    }
    std::size_t off = 0;
    for (std::size_t p = 0; p < components_.size(); ++p) {
      if (!(components_[p].field() == field_)) throw InputError("graded algebra: component field mismatch");
      if (components_[p].dim() == 0) throw InputError("graded algebra: component " + std::to_string(p) + " is zero");
      if (auto bad = components_[p].associativity_violation()) {
        throw InputError("graded algebra: grade " + std::to_string(p) + " is not associative at basis triple " +
                         join_indices({(*bad)[0], (*bad)[1], (*bad)[2]}));
      }
      offsets_.push_back(off);
      off += components_[p].dim();
    }
    total_dim_ = off;
  }

  const FiniteGroup& group() const { return group_; }
  const Field& field() const { return field_; }
  std::size_t grades() const { return components_.size(); }
  const Algebra& component(GroupElem p) const { return components_.at(p); }
  const std::vector<Algebra>& components() const { return components_; }
  std::size_t dim(GroupElem p) const { return components_.at(p).dim(); }
  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d;
    for (const auto& c : components_) d.push_back(c.dim());
    return d;
  }
  std::size_t offset(GroupElem p) const { return offsets_.at(p); }
  std::size_t total_dim() const { return total_dim_; }

  /// Grade of a global basis index.
  GroupElem grade_of(std::size_t global) const {
    for (std::size_t p = components_.size(); p-- > 0;)
      if (global >= offsets_[p]) return p;
    return 0;
  }

  AlgebraElement zero() const {
    AlgebraElement e;
    for (const auto& c : components_) e.parts.push_back(c.zero());
    return e;
  }

  AlgebraElement basis(GroupElem p, std::size_t i) const {
    AlgebraElement e = zero();
    e.parts.at(p).at(i) = Scalar::one(field_);
    return e;
  }

  /// Componentwise product; terms from distinct grades vanish.
  AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) const {
    AlgebraElement r = zero();
    for (std::size_t p = 0; p < components_.size(); ++p) r.parts[p] = components_[p].multiply(a.parts.at(p), b.parts.at(p));
    return r;
  }

  /// Flattened coordinates in the global basis.
  Vec flatten(const AlgebraElement& a) const {
    Vec v;
    v.reserve(total_dim_);
    for (const auto& part : a.parts) v.insert(v.end(), part.begin(), part.end());
    return v;
  }

  AlgebraElement unflatten(const Vec& v) const {
    AlgebraElement e;
    for (std::size_t p = 0; p < components_.size(); ++p)
      e.parts.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(offsets_[p]),
                           v.begin() + static_cast<std::ptrdiff_t>(offsets_[p] + dim(p)));
    return e;
  }

  /// The direct sum as an ungraded algebra on the global basis.
  Algebra total() const {
    std::vector<Matrix> left;
    for (std::size_t p = 0; p < components_.size(); ++p)
      for (std::size_t i = 0; i < dim(p); ++i) {
        Matrix m(field_, total_dim_, total_dim_);
        m.set_block(offsets_[p], offsets_[p], components_[p].left(i));
        left.push_back(std::move(m));
      }
    return Algebra(field_, std::move(left));
  }

  friend bool operator==(const GradedAlgebra& a, const GradedAlgebra& b) {
    return a.group_ == b.group_ && a.field_ == b.field_ && a.components_ == b.components_;
  }

 private:
  FiniteGroup group_;
  Field field_;
  std::vector<Algebra> components_;
  std::vector<std::size_t> offsets_;
  std::size_t total_dim_ = 0;
};

/// Per grade p, the stacked multiplication operators of A_p have trivial
/// kernel on both sides. Non-degeneracy of A reduces to this because
/// A_p A_q = 0 for p != q.
inline CheckResult check_nondegenerate(const GradedAlgebra& a) {
  CheckResult r = make_result(tag::kNondegenerate);
  for (std::size_t p = 0; p < a.grades(); ++p) {
    if (!a.component(p).is_nondegenerate()) r.fail({{p}, {}, "", "", "product on grade is degenerate"});
  }
  return r;
}

}  // namespace mhtc
