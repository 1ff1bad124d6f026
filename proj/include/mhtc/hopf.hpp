#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "mhtc/algebra.hpp"
#include "mhtc/error.hpp"
#include "mhtc/matrix.hpp"
#include "mhtc/report.hpp"

namespace mhtc {

/// Componentwise comultiplication: at(p, q) is the (d_p d_q) x d_{pq}
/// matrix of Delta_{p,q}: A_{pq} -> A_p (x) A_q.
struct Comultiplication {
  std::vector<std::vector<Matrix>> maps;

  const Matrix& at(GroupElem p, GroupElem q) const { return maps.at(p).at(q); }
  Matrix& at(GroupElem p, GroupElem q) { return maps.at(p).at(q); }

  friend bool operator==(const Comultiplication&, const Comultiplication&) = default;
};

/// Counit as a functional on A_e; it vanishes on every other grade.
struct Counit {
  Vec eps;

  Scalar operator()(const Vec& a) const {
    Scalar s = Scalar::zero(eps.front().field());
    for (std::size_t i = 0; i < eps.size(); ++i) s += eps[i] * a[i];
    return s;
  }

  friend bool operator==(const Counit&, const Counit&) = default;
};

/// Antipode family: at(p) is the d_{p^{-1}} x d_p matrix of S_p: A_p -> A_{p^{-1}}.
struct Antipode {
  std::vector<Matrix> maps;

  const Matrix& at(GroupElem p) const { return maps.at(p); }

  friend bool operator==(const Antipode&, const Antipode&) = default;
};

/// Throws InputError when a component map has the wrong shape.
inline void validate_shapes(const GradedAlgebra& a, const Comultiplication& delta) {
  const auto& g = a.group();
  if (delta.maps.size() != g.order()) throw InputError("comultiplication: wrong number of component rows");
  for (GroupElem p = 0; p < g.order(); ++p) {
    if (delta.maps[p].size() != g.order()) throw InputError("comultiplication: wrong number of components");
    for (GroupElem q = 0; q < g.order(); ++q) {
      const Matrix& m = delta.at(p, q);
      if (m.rows() != a.dim(p) * a.dim(q) || m.cols() != a.dim(g.mul(p, q))) {
        throw InputError("comultiplication: component (" + std::to_string(p) + "," + std::to_string(q) + ") has shape " +
                         m.shape() + ", expected " + std::to_string(a.dim(p) * a.dim(q)) + "x" +
                         std::to_string(a.dim(g.mul(p, q))));
      }
    }
  }
}

/// Matrix of T1 restricted to A_{pq} (x) A_q -> A_p (x) A_q,
/// a (x) b -> Delta_{p,q}(a)(1 (x) b). Column index a * d_q + b.
inline Matrix t1_block(const GradedAlgebra& a, const Comultiplication& delta, GroupElem p, GroupElem q) {
  const auto& g = a.group();
  const GroupElem pq = g.mul(p, q);
  const Field f = a.field();
  const Matrix& d = delta.at(p, q);
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < a.dim(pq); ++i) {
    Vec di = d.col(i);
    for (std::size_t j = 0; j < a.dim(q); ++j) {
      Matrix right = kron(Matrix::identity(f, a.dim(p)), a.component(q).right_op(a.component(q).basis(j)));
      cols.push_back(right * di);
    }
  }
  return Matrix::from_columns(f, a.dim(p) * a.dim(q), cols);
}

/// Matrix of T2 restricted to A_p (x) A_{pq} -> A_p (x) A_q,
/// c (x) a -> (c (x) 1) Delta_{p,q}(a). Column index c * d_{pq} + a.
inline Matrix t2_block(const GradedAlgebra& a, const Comultiplication& delta, GroupElem p, GroupElem q) {
  const auto& g = a.group();
  const GroupElem pq = g.mul(p, q);
  const Field f = a.field();
  const Matrix& d = delta.at(p, q);
  std::vector<Vec> cols;
  for (std::size_t c = 0; c < a.dim(p); ++c) {
    Matrix left = kron(a.component(p).left(c), Matrix::identity(f, a.dim(q)));
    for (std::size_t i = 0; i < a.dim(pq); ++i) cols.push_back(left * d.col(i));
  }
  return Matrix::from_columns(f, a.dim(p) * a.dim(q), cols);
}

/// Delta(A_{pq})(1 (x) A_q) = A_p (x) A_q and (A_p (x) 1)Delta(A_{pq}) = A_p (x) A_q.
inline CheckResult check_cograded(const GradedAlgebra& a, const Comultiplication& delta) {
  validate_shapes(a, delta);
  CheckResult r = make_result(tag::kCograded);
  const auto n = a.group().order();
  for (GroupElem p = 0; p < n; ++p)
    for (GroupElem q = 0; q < n; ++q) {
      const std::size_t full = a.dim(p) * a.dim(q);
      std::size_t r1 = rank(t1_block(a, delta, p, q));
      if (r1 != full)
        r.fail({{p, q}, {}, std::to_string(r1), std::to_string(full), "rank of Delta(A_pq)(1 x A_q)"});
      std::size_t r2 = rank(t2_block(a, delta, p, q));
      if (r2 != full)
        r.fail({{p, q}, {}, std::to_string(r2), std::to_string(full), "rank of (A_p x 1)Delta(A_pq)"});
    }
  return r;
}

/// Each Delta_{p,q} is an algebra map A_{pq} -> A_p (x) A_q.
inline CheckResult check_comultiplicative(const GradedAlgebra& a, const Comultiplication& delta) {
  validate_shapes(a, delta);
  CheckResult r = make_result(tag::kComultiplicative);
  const auto& g = a.group();
  for (GroupElem p = 0; p < g.order(); ++p)
    for (GroupElem q = 0; q < g.order(); ++q) {
      const Algebra& src = a.component(g.mul(p, q));
      Algebra dst = tensor(a.component(p), a.component(q));
      const Matrix& d = delta.at(p, q);
      for (std::size_t i = 0; i < src.dim(); ++i)
        for (std::size_t j = 0; j < src.dim(); ++j) {
          Vec lhs = d * src.left(i).col(j);
          Vec rhs = dst.multiply(d.col(i), d.col(j));
          if (!(lhs == rhs)) r.fail({{p, q}, {i, j}, to_string(lhs), to_string(rhs), "Delta(ab) vs Delta(a)Delta(b)"});
        }
    }
  return r;
}

/// (id (x) Delta_{q,r}) Delta_{p,qr} = (Delta_{p,q} (x) id) Delta_{pq,r} on A_{pqr}.
inline CheckResult check_coassoc(const GradedAlgebra& a, const Comultiplication& delta) {
  validate_shapes(a, delta);
  CheckResult r = make_result(tag::kCoassoc);
  const auto& g = a.group();
  const Field f = a.field();
  const auto n = g.order();
  for (GroupElem p = 0; p < n; ++p)
    for (GroupElem q = 0; q < n; ++q)
      for (GroupElem s = 0; s < n; ++s) {
        Matrix lhs = kron(Matrix::identity(f, a.dim(p)), delta.at(q, s)) * delta.at(p, g.mul(q, s));
        Matrix rhs = kron(delta.at(p, q), Matrix::identity(f, a.dim(s))) * delta.at(g.mul(p, q), s);
        if (lhs == rhs) continue;
        for (std::size_t c = 0; c < lhs.cols(); ++c) {
          if (!(lhs.col(c) == rhs.col(c))) {
            r.fail({{p, q, s}, {c}, to_string(lhs.col(c)), to_string(rhs.col(c)), "coassociativity"});
            break;
          }
        }
      }
  return r;
}

/// Every component of T1 and T2 is square and invertible. The dimension
/// conditions d_{pq} = d_p (T1) and d_{pq} = d_q (T2) are reported on their own.
inline CheckResult t_maps_bijective(const GradedAlgebra& a, const Comultiplication& delta) {
  validate_shapes(a, delta);
  CheckResult r = make_result(tag::kBijective);
  const auto& g = a.group();
  for (GroupElem p = 0; p < g.order(); ++p)
    for (GroupElem q = 0; q < g.order(); ++q) {
      const GroupElem pq = g.mul(p, q);
      if (a.dim(pq) != a.dim(p)) {
        r.fail({{p, q}, {}, std::to_string(a.dim(pq)), std::to_string(a.dim(p)), "T1 dimension condition d_pq = d_p"});
      } else {
        Matrix t1 = t1_block(a, delta, p, q);
        if (!is_invertible(t1)) r.fail({{p, q}, {}, std::to_string(rank(t1)), std::to_string(t1.rows()), "T1 singular"});
      }
      if (a.dim(pq) != a.dim(q)) {
        r.fail({{p, q}, {}, std::to_string(a.dim(pq)), std::to_string(a.dim(q)), "T2 dimension condition d_pq = d_q"});
      } else {
        Matrix t2 = t2_block(a, delta, p, q);
        if (!is_invertible(t2)) r.fail({{p, q}, {}, std::to_string(rank(t2)), std::to_string(t2.rows()), "T2 singular"});
      }
    }
  return r;
}

namespace detail {

/// Linear system for the counit on A_e. Each row is one coordinate of
/// (eps (x) id)(Delta_{e,q}(a)(1 (x) b)) = ab or (id (x) eps)((a (x) 1)Delta_{q,e}(b)) = ab
/// with a, b basis elements of A_q. Labels record (q, a, b, coordinate).
struct CounitSystem {
  Matrix coeffs;
  Matrix rhs;
  std::vector<std::array<std::size_t, 4>> labels;
};

inline CounitSystem counit_system(const GradedAlgebra& a, const Comultiplication& delta) {
  const auto& g = a.group();
  const Field f = a.field();
  const std::size_t de = a.dim(0);
  std::vector<Vec> rows;
  Vec rhs;
  std::vector<std::array<std::size_t, 4>> labels;
  for (GroupElem q = 0; q < g.order(); ++q) {
    const Algebra& aq = a.component(q);
    const std::size_t dq = aq.dim();
    Matrix left_block = t1_block(a, delta, 0, q);   // A_q (x) A_q -> A_e (x) A_q
    Matrix right_block = t2_block(a, delta, q, 0);  // A_q (x) A_q -> A_q (x) A_e
    for (std::size_t x = 0; x < dq; ++x)
      for (std::size_t y = 0; y < dq; ++y) {
        Vec prod = aq.left(x).col(y);
        Vec t1 = left_block.col(x * dq + y);   // coords (i, j): i in A_e, j in A_q
        Vec t2 = right_block.col(x * dq + y);  // coords (j, i): j in A_q, i in A_e
        for (std::size_t j = 0; j < dq; ++j) {
          Vec row = zero_vec(f, de);
          for (std::size_t i = 0; i < de; ++i) row[i] = t1[i * dq + j];
          rows.push_back(row);
          rhs.push_back(prod[j]);
          labels.push_back({q, x, y, j});
          Vec row2 = zero_vec(f, de);
          for (std::size_t i = 0; i < de; ++i) row2[i] = t2[j * de + i];
          rows.push_back(row2);
          rhs.push_back(prod[j]);
          labels.push_back({q, x, y, j});
        }
      }
  }
  CounitSystem s;
  s.coeffs = Matrix::from_columns(f, de, rows).transpose();
  s.rhs = Matrix::column(rhs, f);
  s.labels = std::move(labels);
  return s;
}

}  // namespace detail

/// Both counit equations plus multiplicativity of eps on A_e.
inline CheckResult verify_counit(const GradedAlgebra& a, const Comultiplication& delta, const Counit& eps) {
  CheckResult r = make_result(tag::kCounit);
  if (eps.eps.size() != a.dim(0)) {
    r.fail({{0}, {}, std::to_string(eps.eps.size()), std::to_string(a.dim(0)), "counit length"});
    return r;
  }
  auto sys = detail::counit_system(a, delta);
  Vec lhs = sys.coeffs * eps.eps;
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    if (!(lhs[k] == sys.rhs(k, 0))) {
      const auto& l = sys.labels[k];
      r.fail({{l[0]}, {l[1], l[2], l[3]}, lhs[k].to_string(), sys.rhs(k, 0).to_string(), "counit equation"});
    }
  }
  const Algebra& ae = a.component(0);
  for (std::size_t i = 0; i < ae.dim(); ++i)
    for (std::size_t j = 0; j < ae.dim(); ++j) {
      Scalar lhs2 = eps(ae.left(i).col(j));
      Scalar rhs2 = eps.eps[i] * eps.eps[j];
      if (!(lhs2 == rhs2)) r.fail({{0}, {i, j}, lhs2.to_string(), rhs2.to_string(), "eps(ab) = eps(a)eps(b)"});
    }
  return r;
}

/// Solves the counit equations for eps on A_e. Throws DerivationError if
/// there is no solution, more than one, or the unique linear solution is not
/// multiplicative.
inline Counit derive_counit(const GradedAlgebra& a, const Comultiplication& delta) {
  validate_shapes(a, delta);
  auto sys = detail::counit_system(a, delta);
  auto sol = solve_linear(sys.coeffs, sys.rhs);
  if (!sol.solvable()) throw DerivationError("counit: no solution");
  if (!sol.unique()) throw DerivationError("counit: solution is not unique");
  Counit eps{sol.particular.col(0)};
  auto check = verify_counit(a, delta, eps);
  if (!check.passed) throw DerivationError("counit: no solution (the linear solution is not an algebra homomorphism)");
  return eps;
}

namespace detail {

/// Coordinates of m(S_{q^-1} (x) id)(Delta_{q^-1,q}(a)(1 (x) b)) as a linear
/// function of the entries of S_{q^-1} (row-major d_q x d_{q^-1}).
/// Returns one row per (a, b, output coordinate).
inline Matrix antipode_left_rows(const GradedAlgebra& a, const Comultiplication& delta, GroupElem q) {
  const auto& g = a.group();
  const GroupElem qi = g.inv(q);
  const Field f = a.field();
  const Algebra& aq = a.component(q);
  const std::size_t dq = aq.dim();
  const std::size_t dqi = a.dim(qi);
  const std::size_t de = a.dim(0);
  Matrix block = t1_block(a, delta, qi, q);  // A_e (x) A_q -> A_{q^-1} (x) A_q
  Matrix out(f, de * dq * dq, dq * dqi);
  for (std::size_t x = 0; x < de; ++x)
    for (std::size_t y = 0; y < dq; ++y) {
      Vec c = block.col(x * dq + y);  // coords (i, j): i in A_{q^-1}, j in A_q
      for (std::size_t l = 0; l < dq; ++l) {
        const std::size_t row = (x * dq + y) * dq + l;
        for (std::size_t k = 0; k < dq; ++k)
          for (std::size_t i = 0; i < dqi; ++i) {
            Scalar acc = Scalar::zero(f);
            for (std::size_t j = 0; j < dq; ++j) {
              const Scalar& cij = c[i * dq + j];
              if (cij.is_zero()) continue;
              acc += cij * aq.left(k)(l, j);
            }
            out(row, k * dqi + i) = acc;
          }
      }
    }
  return out;
}

inline Matrix antipode_left_rhs(const GradedAlgebra& a, const Counit& eps, GroupElem q) {
  const Field f = a.field();
  const std::size_t dq = a.dim(q);
  const std::size_t de = a.dim(0);
  Matrix rhs(f, de * dq * dq, 1);
  for (std::size_t x = 0; x < de; ++x)
    for (std::size_t y = 0; y < dq; ++y) rhs((x * dq + y) * dq + y, 0) = eps.eps[x];
  return rhs;
}

}  // namespace detail

/// Left and right antipode equations in graded form, plus S(ab) = S(b)S(a).
///
/// Left: m(S_{q^-1} (x) id)(Delta_{q^-1,q}(a)(1 (x) b)) = eps(a) b for a in A_e, b in A_q.
/// Right: m(id (x) S_{p^-1})((a (x) 1)Delta_{p,p^-1}(b)) = eps(b) a for a in A_p, b in A_e.
/// All other grade combinations vanish identically on both sides.
inline CheckResult verify_antipode(const GradedAlgebra& a, const Comultiplication& delta, const Counit& eps,
                                   const Antipode& s) {
  CheckResult r = make_result(tag::kAntipode);
  const auto& g = a.group();
  const Field f = a.field();
  for (GroupElem q = 0; q < g.order(); ++q) {
    const Matrix& sq = s.at(q);
    if (sq.rows() != a.dim(g.inv(q)) || sq.cols() != a.dim(q)) {
      r.fail({{q}, {}, sq.shape(), "", "antipode component shape"});
      return r;
    }
  }
  for (GroupElem q = 0; q < g.order(); ++q) {
    const GroupElem qi = g.inv(q);
    const Matrix& sqi = s.at(qi);  // d_q x d_{q^-1}
    Vec unknowns;
    for (std::size_t k = 0; k < sqi.rows(); ++k)
      for (std::size_t i = 0; i < sqi.cols(); ++i) unknowns.push_back(sqi(k, i));
    Vec lhs = detail::antipode_left_rows(a, delta, q) * unknowns;
    Matrix rhs = detail::antipode_left_rhs(a, eps, q);
    const std::size_t dq = a.dim(q);
    for (std::size_t row = 0; row < lhs.size(); ++row) {
      if (!(lhs[row] == rhs(row, 0))) {
        std::size_t l = row % dq, y = (row / dq) % dq, x = row / (dq * dq);
        r.fail({{q}, {x, y, l}, lhs[row].to_string(), rhs(row, 0).to_string(), "left antipode equation"});
      }
    }
  }
  for (GroupElem p = 0; p < g.order(); ++p) {
    const GroupElem pi = g.inv(p);
    const Algebra& ap = a.component(p);
    const std::size_t dp = ap.dim();
    Matrix block = t2_block(a, delta, p, pi);  // A_p (x) A_e -> A_p (x) A_{p^-1}
    Matrix lift = kron(Matrix::identity(f, dp), s.at(pi));  // -> A_p (x) A_p
    for (std::size_t x = 0; x < dp; ++x)
      for (std::size_t y = 0; y < a.dim(0); ++y) {
        Vec t = lift * block.col(x * a.dim(0) + y);
        Vec lhs = zero_vec(f, dp);
        for (std::size_t i = 0; i < dp; ++i)
          for (std::size_t j = 0; j < dp; ++j) {
            if (t[i * dp + j].is_zero()) continue;
            Vec prod = ap.left(i).col(j);
            for (std::size_t k = 0; k < dp; ++k) lhs[k] += t[i * dp + j] * prod[k];
          }
        Vec rhs = zero_vec(f, dp);
        rhs[x] = eps.eps[y];
        if (!(lhs == rhs)) r.fail({{p}, {x, y}, to_string(lhs), to_string(rhs), "right antipode equation"});
      }
  }
  for (GroupElem p = 0; p < g.order(); ++p) {
    const Algebra& ap = a.component(p);
    const Algebra& api = a.component(g.inv(p));
    const Matrix& sp = s.at(p);
    for (std::size_t i = 0; i < ap.dim(); ++i)
      for (std::size_t j = 0; j < ap.dim(); ++j) {
        Vec lhs = sp * ap.left(i).col(j);
        Vec rhs = api.multiply(sp.col(j), sp.col(i));
        if (!(lhs == rhs)) r.fail({{p}, {i, j}, to_string(lhs), to_string(rhs), "S(ab) = S(b)S(a)"});
      }
  }
  return r;
}

/// Solves the left antipode equations grade by grade; the system is block
/// diagonal with one block per q (unknown S_{q^-1}). The right equation and
/// anti-multiplicativity are checked afterwards.
inline Antipode derive_antipode(const GradedAlgebra& a, const Comultiplication& delta, const Counit& eps) {
  validate_shapes(a, delta);
  const auto& g = a.group();
  const Field f = a.field();
  Antipode s;
  s.maps.resize(g.order());
  for (GroupElem q = 0; q < g.order(); ++q) {
    const GroupElem qi = g.inv(q);
    auto sol = solve_linear(detail::antipode_left_rows(a, delta, q), detail::antipode_left_rhs(a, eps, q));
    if (!sol.solvable()) throw DerivationError("antipode: no solution for S_" + std::to_string(qi));
    if (!sol.unique()) throw DerivationError("antipode: S_" + std::to_string(qi) + " is not unique");
    Matrix m(f, a.dim(q), a.dim(qi));
    for (std::size_t k = 0; k < m.rows(); ++k)
      for (std::size_t i = 0; i < m.cols(); ++i) m(k, i) = sol.particular(k * m.cols() + i, 0);
    s.maps[qi] = std::move(m);
  }
  auto check = verify_antipode(a, delta, eps, s);
  if (!check.passed) {
    throw DerivationError("antipode: derived S violates " + check.witnesses.front().detail + " at grade " +
                          join_indices(check.witnesses.front().grades));
  }
  return s;
}

/// Regular iff every S_p is bijective.
inline CheckResult check_regular(const GradedAlgebra& a, const Antipode& s) {
  CheckResult r = make_result(tag::kRegular);
  const auto& g = a.group();
  for (GroupElem p = 0; p < g.order(); ++p) {
    const Matrix& sp = s.at(p);
    if (!is_invertible(sp)) r.fail({{p}, {}, std::to_string(rank(sp)), std::to_string(a.dim(p)), "S_p not bijective"});
  }
  return r;
}

}  // namespace mhtc
