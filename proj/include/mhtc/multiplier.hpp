#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mhtc/algebra.hpp"
#include "mhtc/error.hpp"
#include "mhtc/matrix.hpp"

namespace mhtc {

/// An element of M(A): a left action lam and a right action rho on A with
/// a lam(b) = rho(a) b for all a, b.
///
/// Two multipliers are equal iff both actions agree on the basis; this is
/// sound because the product of A is non-degenerate.
struct Multiplier {
  Matrix lam;  // b -> m b
  Matrix rho;  // b -> b m

  friend bool operator==(const Multiplier&, const Multiplier&) = default;
};

/// First basis pair (i, j) where b_i lam(b_j) != rho(b_i) b_j.
inline std::optional<std::pair<std::size_t, std::size_t>> compatibility_violation(const Algebra& alg,
                                                                                 const Multiplier& m) {
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    Matrix lhs = alg.left(i) * m.lam;
    Matrix rhs = alg.left_op(m.rho.col(i));
    if (lhs == rhs) continue;
    for (std::size_t j = 0; j < alg.dim(); ++j)
      if (!(lhs.col(j) == rhs.col(j))) return std::pair{i, j};
  }
  return std::nullopt;
}

/// Validates a raw pair of maps as a multiplier.
inline Multiplier make_multiplier(const Algebra& alg, Matrix lam, Matrix rho) {
  const std::size_t d = alg.dim();
  if (lam.rows() != d || lam.cols() != d || rho.rows() != d || rho.cols() != d) {
    throw InputError("multiplier: maps must be " + std::to_string(d) + "x" + std::to_string(d));
  }
  Multiplier m{std::move(lam), std::move(rho)};
  if (auto bad = compatibility_violation(alg, m)) {
    throw InputError("multiplier: compatibility fails at basis pair (" + std::to_string(bad->first) + "," +
                     std::to_string(bad->second) + ")");
  }
  return m;
}

inline Multiplier unit_multiplier(const Algebra& alg) {
  return {Matrix::identity(alg.field(), alg.dim()), Matrix::identity(alg.field(), alg.dim())};
}

/// The canonical embedding A -> M(A).
inline Multiplier multiplier_from_element(const Algebra& alg, const Vec& a) { return {alg.left_op(a), alg.right_op(a)}; }

/// (m1 m2) b = m1 (m2 b) and b (m1 m2) = (b m1) m2.
inline Multiplier multiplier_product(const Multiplier& m1, const Multiplier& m2) {
  return {m1.lam * m2.lam, m2.rho * m1.rho};
}

inline Vec multiplier_apply(const Multiplier& m, const Vec& b) { return m.lam * b; }

inline Vec multiplier_apply_right(const Vec& b, const Multiplier& m) { return m.rho * b; }

/// Preimage under A -> M(A), which exists for every multiplier when A is
/// unital: a = lam(1), confirmed by re-embedding.
inline std::optional<Vec> element_from_multiplier(const Algebra& alg, const Multiplier& m) {
  if (!alg.unit()) return std::nullopt;
  Vec a = m.lam * *alg.unit();
  if (!(multiplier_from_element(alg, a) == m)) return std::nullopt;
  return a;
}

/// Basis of M(A), computed as the solution space of the compatibility
/// equations b_i lam(b_j) = rho(b_i) b_j. Columns of lam and rho are the
/// unknowns, so each (i, j) contributes the block equation
/// L_i lam(:, j) - R_j rho(:, i) = 0.
inline std::vector<Multiplier> multiplier_basis(const Algebra& alg) {
  const std::size_t d = alg.dim();
  const Field f = alg.field();
  std::vector<Matrix> right;
  for (std::size_t j = 0; j < d; ++j) right.push_back(alg.right_op(unit_vec(f, d, j)));
  Matrix sys(f, d * d * d, 2 * d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t r = 0; r < d; ++r) {
          sys((i * d + j) * d + k, j * d + r) = alg.left(i)(k, r);
          sys((i * d + j) * d + k, d * d + i * d + r) = -right[j](k, r);
        }
  Matrix ker = kernel_basis(sys);
  std::vector<Multiplier> out;
  for (std::size_t c = 0; c < ker.cols(); ++c) {
    Multiplier m{Matrix(f, d, d), Matrix(f, d, d)};
    for (std::size_t col = 0; col < d; ++col)
      for (std::size_t r = 0; r < d; ++r) {
        m.lam(r, col) = ker(col * d + r, c);
        m.rho(r, col) = ker(d * d + col * d + r, c);
      }
    out.push_back(std::move(m));
  }
  return out;
}

/// A -> M(A) is injective iff the left-multiplication operators are
/// linearly independent, and then surjective iff dim M(A) = dim A.
inline bool canonical_map_bijective(const Algebra& alg) {
  const std::size_t d = alg.dim();
  Matrix ops(alg.field(), d * d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) ops(r * d + c, i) = alg.left(i)(r, c);
  return rank(ops) == d && multiplier_basis(alg).size() == d;
}

/// m is invertible in M(A) iff both of its actions are bijective.
inline bool multiplier_invertible(const Multiplier& m) { return is_invertible(m.lam) && is_invertible(m.rho); }

/// True if f(b_i b_j) = f(b_i) f(b_j) on all basis pairs.
inline bool is_homomorphism(const Algebra& src, const Algebra& dst, const Matrix& f) {
  for (std::size_t i = 0; i < src.dim(); ++i) {
    Matrix lhs = f * src.left(i);
    Matrix rhs = dst.left_op(f.col(i)) * f;
    if (!(lhs == rhs)) return false;
  }
  return true;
}

/// The unique extension M(src) -> M(dst) of a non-degenerate homomorphism
/// f: src -> dst, evaluated at m.
///
/// The left action is defined on the spanning set f(a) b by
/// f(m) (f(a) b) = f(m a) b, and symmetrically on the right. Throws
/// InputError when f is not a homomorphism or when f(src) dst or dst f(src)
/// does not span dst.
inline Multiplier extend_homomorphism(const Algebra& src, const Algebra& dst, const Matrix& f, const Multiplier& m) {
  const Field fld = dst.field();
  const std::size_t ds = src.dim();
  const std::size_t dd = dst.dim();
  if (f.rows() != dd || f.cols() != ds) {
    throw InputError("extend_homomorphism: map has shape " + f.shape() + ", expected " + std::to_string(dd) + "x" +
                     std::to_string(ds));
  }
  if (!is_homomorphism(src, dst, f)) throw InputError("extend_homomorphism: map is not an algebra homomorphism");

  // Unital shortcut: M(src) = src and a non-degenerate f is unital.
  if (src.unit() && dst.unit()) {
    if (f * *src.unit() == *dst.unit()) {
      if (auto a = element_from_multiplier(src, m)) return multiplier_from_element(dst, f * *a);
    }
  }

  std::vector<Vec> left_span, right_span, left_img, right_img;
  for (std::size_t i = 0; i < ds; ++i) {
    Vec fi = f.col(i);
    Matrix l = dst.left_op(fi);
    Matrix r = dst.right_op(fi);
    Matrix l_img = dst.left_op(f * m.lam.col(i));
    Matrix r_img = dst.right_op(f * m.rho.col(i));
    for (std::size_t j = 0; j < dd; ++j) {
      left_span.push_back(l.col(j));       // f(a_i) b_j
      right_span.push_back(r.col(j));      // b_j f(a_i)
      left_img.push_back(l_img.col(j));    // f(m a_i) b_j
      right_img.push_back(r_img.col(j));   // b_j f(a_i m)
    }
  }
  Matrix ls = Matrix::from_columns(fld, dd, left_span);
  Matrix rs = Matrix::from_columns(fld, dd, right_span);
  auto lsol = solve_linear(ls, Matrix::identity(fld, dd));
  auto rsol = solve_linear(rs, Matrix::identity(fld, dd));
  if (!lsol.solvable() || !rsol.solvable()) {
    throw InputError("extend_homomorphism: degenerate homomorphism (f(A)B or Bf(A) does not span B)");
  }
  Multiplier out{Matrix::from_columns(fld, dd, left_img) * lsol.particular,
                 Matrix::from_columns(fld, dd, right_img) * rsol.particular};
  return out;
}

/// Where the inserted identity leg goes when lifting a two-leg multiplier to
/// three legs: kMiddle = (R)_{1s3}, kLast = (R)_{12t}, kFirst = (R)_{r23}.
enum class LegPattern { kMiddle, kLast, kFirst };

/// Lifts a multiplier on X (x) Y to X (x) S (x) Y (or the analogous
/// placement), acting as the unit multiplier on the inserted leg of
/// dimension `inserted`. `leg_a` and `leg_b` are the dimensions of the two
/// original legs in order.
inline Multiplier leg_insert(const Multiplier& m, std::size_t leg_a, std::size_t leg_b, std::size_t inserted,
                             LegPattern pattern) {
  const Field f = m.lam.field();
  if (m.lam.rows() != leg_a * leg_b) throw InputError("leg_insert: multiplier does not match leg dimensions");
  auto lift = [&](const Matrix& op) -> Matrix {
    switch (pattern) {
      case LegPattern::kLast:
        return kron(op, Matrix::identity(f, inserted));
      case LegPattern::kFirst:
        return kron(Matrix::identity(f, inserted), op);
      case LegPattern::kMiddle: {
        const std::size_t n = leg_a * inserted * leg_b;
        Matrix out(f, n, n);
        for (std::size_t i = 0; i < leg_a; ++i)
          for (std::size_t j = 0; j < leg_b; ++j)
            for (std::size_t i2 = 0; i2 < leg_a; ++i2)
              for (std::size_t j2 = 0; j2 < leg_b; ++j2) {
                const Scalar& v = op(i * leg_b + j, i2 * leg_b + j2);
                if (v.is_zero()) continue;
                for (std::size_t k = 0; k < inserted; ++k)
                  out((i * inserted + k) * leg_b + j, (i2 * inserted + k) * leg_b + j2) = v;
              }
        return out;
      }
    }
    return op;
  };
  return {lift(m.lam), lift(m.rho)};
}

}  // namespace mhtc
