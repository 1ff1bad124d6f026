#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mhtc/algebra.hpp"
#include "mhtc/error.hpp"
#include "mhtc/hopf.hpp"
#include "mhtc/matrix.hpp"
#include "mhtc/multiplier.hpp"
#include "mhtc/report.hpp"

namespace mhtc {

/// A group action pi: G -> Aut(A) together with the induced action rho of G
/// on grades. pi[q] is stored as a matrix on the global basis of A so that
/// grade-permutation can be checked rather than assumed.
struct Crossing {
  std::vector<Matrix> pi;
  std::vector<std::vector<GroupElem>> rho;  // rho[q][p]; adjoint for a crossing

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

inline Crossing trivial_crossing(const GradedAlgebra& a) {
  Crossing c;
  for (std::size_t q = 0; q < a.grades(); ++q) c.pi.push_back(Matrix::identity(a.field(), a.total_dim()));
  c.rho = a.group().adjoint_table();
  return c;
}

/// pi_q restricted to A_p -> A_{rho_q(p)}.
inline Matrix crossing_block(const GradedAlgebra& a, const Crossing& c, GroupElem q, GroupElem p) {
  GroupElem target = c.rho.at(q).at(p);
  return c.pi.at(q).block(a.offset(target), a.offset(p), a.dim(target), a.dim(p));
}

/// Verifies that pi is a crossing of the Hopf structure:
///  (a) each pi_q is an algebra automorphism,
///  (b) pi_q(A_p) lies in A_{rho_q(p)} and rho is an action on G,
///  (c) pi_{pq} = pi_p pi_q and pi_{rho_p(q)} = pi_{pqp^-1},
///  (d) (pi_q (x) pi_q) Delta_{p,r} = Delta_{qpq^-1, qrq^-1} pi_q,
///  (e) eps pi_q = eps on A_e,
/// and that rho is the adjoint action. Witness details name the clause.
inline CheckResult check_crossing(const GradedAlgebra& a, const Comultiplication& delta, const Counit& eps,
                                  const Crossing& c, bool require_adjoint = true) {
  CheckResult r = make_result(tag::kCrossing);
  const auto& g = a.group();
  const auto n = g.order();
  const std::size_t total = a.total_dim();
  if (c.pi.size() != n || c.rho.size() != n) {
    r.fail({{}, {}, std::to_string(c.pi.size()), std::to_string(n), "crossing: wrong number of maps"});
    return r;
  }
  for (GroupElem q = 0; q < n; ++q) {
    if (c.pi[q].rows() != total || c.pi[q].cols() != total || c.rho[q].size() != n) {
      r.fail({{q}, {}, c.pi[q].shape(), std::to_string(total), "crossing: map shape"});
      return r;
    }
    for (auto x : c.rho[q]) {
      if (x >= n) {
        r.fail({{q}, {}, std::to_string(x), "", "rho: entry out of range"});
        return r;
      }
    }
  }

  // rho is an action of G on itself.
  for (GroupElem p = 0; p < n; ++p)
    if (c.rho[0][p] != p) r.fail({{0, p}, {}, std::to_string(c.rho[0][p]), std::to_string(p), "(b) rho_e != id"});
  for (GroupElem p = 0; p < n; ++p)
    for (GroupElem q = 0; q < n; ++q)
      for (GroupElem x = 0; x < n; ++x)
        if (c.rho[g.mul(p, q)][x] != c.rho[p][c.rho[q][x]])
          r.fail({{p, q, x}, {}, "", "", "(b) rho is not an action"});
  if (require_adjoint) {
    for (GroupElem q = 0; q < n; ++q)
      for (GroupElem p = 0; p < n; ++p)
        if (c.rho[q][p] != g.conj(q, p))
          r.fail({{q, p}, {}, std::to_string(c.rho[q][p]), std::to_string(g.conj(q, p)), "rho is not the adjoint action"});
  }
  if (!r.passed) return r;

  const Algebra total_alg = a.total();
  for (GroupElem q = 0; q < n; ++q) {
    const Matrix& pq = c.pi[q];
    if (!is_invertible(pq)) r.fail({{q}, {}, std::to_string(rank(pq)), std::to_string(total), "(a) pi_q not invertible"});
    // (b) grade permutation
    for (GroupElem p = 0; p < n; ++p) {
      GroupElem target = c.rho[q][p];
      for (std::size_t i = 0; i < a.dim(p); ++i) {
        Vec col = pq.col(a.offset(p) + i);
        for (std::size_t k = 0; k < total; ++k) {
          if (col[k].is_zero()) continue;
          GroupElem landed = a.grade_of(k);
          if (landed != target) {
            r.fail({{q, p}, {i}, std::to_string(landed), std::to_string(target), "(b) pi_q(A_p) leaves A_{rho_q(p)}"});
            break;
          }
        }
      }
    }
    // (a) multiplicativity on same-grade basis pairs
    for (GroupElem p = 0; p < n; ++p)
      for (std::size_t i = 0; i < a.dim(p); ++i)
        for (std::size_t j = 0; j < a.dim(p); ++j) {
          Vec ai = unit_vec(a.field(), total, a.offset(p) + i);
          Vec aj = unit_vec(a.field(), total, a.offset(p) + j);
          Vec lhs = pq * total_alg.multiply(ai, aj);
          Vec rhs = total_alg.multiply(pq * ai, pq * aj);
          if (!(lhs == rhs)) r.fail({{q, p}, {i, j}, to_string(lhs), to_string(rhs), "(a) pi_q(ab) != pi_q(a)pi_q(b)"});
        }
  }
  // (c) multiplicativity in the group variable and admissibility clause (3).
  for (GroupElem p = 0; p < n; ++p)
    for (GroupElem q = 0; q < n; ++q) {
      if (!(c.pi[g.mul(p, q)] == c.pi[p] * c.pi[q])) r.fail({{p, q}, {}, "", "", "(c) pi_pq != pi_p pi_q"});
      if (!(c.pi[c.rho[p][q]] == c.pi[g.conj(p, q)])) r.fail({{p, q}, {}, "", "", "(c) pi_{rho_p(q)} != pi_{pqp^-1}"});
    }
  if (!r.passed) return r;
  // (d) comultiplication intertwining
  for (GroupElem q = 0; q < n; ++q)
    for (GroupElem p = 0; p < n; ++p)
      for (GroupElem s = 0; s < n; ++s) {
        GroupElem tp = c.rho[q][p], ts = c.rho[q][s];
        if (g.mul(tp, ts) != c.rho[q][g.mul(p, s)]) {
          r.fail({{q, p, s}, {}, "", "", "(d) rho_q is not multiplicative"});
          continue;
        }
        Matrix lhs = kron(crossing_block(a, c, q, p), crossing_block(a, c, q, s)) * delta.at(p, s);
        Matrix rhs = delta.at(tp, ts) * crossing_block(a, c, q, g.mul(p, s));
        if (lhs == rhs) continue;
        for (std::size_t k = 0; k < lhs.cols(); ++k)
          if (!(lhs.col(k) == rhs.col(k))) {
            r.fail({{q, p, s}, {k}, to_string(lhs.col(k)), to_string(rhs.col(k)), "(d) pi_q does not preserve Delta"});
            break;
          }
      }
  // (e) counit
  for (GroupElem q = 0; q < n; ++q) {
    if (c.rho[q][0] != 0) continue;
    Matrix blk = crossing_block(a, c, q, 0);
    for (std::size_t i = 0; i < a.dim(0); ++i) {
      Scalar lhs = eps(blk.col(i));
      if (!(lhs == eps.eps[i])) r.fail({{q}, {i}, lhs.to_string(), eps.eps[i].to_string(), "(e) eps pi_q != eps"});
    }
  }
  return r;
}

/// The data of a multiplier Hopf T-coalgebra as used by module-level code.
struct TCoalgebra {
  GradedAlgebra algebra;
  Comultiplication delta;
  Counit eps;
  Crossing crossing;

  const FiniteGroup& group() const { return algebra.group(); }
  const Field& field() const { return algebra.field(); }
};

/// Components of the deformed comultiplication:
/// at(p, q) = (pi_{q^-1} (x) id) Delta_{p,q}: A_{pq} -> A_{q^-1 p q} (x) A_q.
struct DeformedComultiplication {
  std::vector<std::vector<Matrix>> maps;

  const Matrix& at(GroupElem p, GroupElem q) const { return maps.at(p).at(q); }
};

inline DeformedComultiplication deformed_comultiplication(const GradedAlgebra& a, const Comultiplication& delta,
                                                          const Crossing& c) {
  const auto& g = a.group();
  DeformedComultiplication out;
  out.maps.resize(g.order());
  for (GroupElem p = 0; p < g.order(); ++p)
    for (GroupElem q = 0; q < g.order(); ++q) {
      Matrix twist = kron(crossing_block(a, c, g.inv(q), p), Matrix::identity(a.field(), a.dim(q)));
      out.maps[p].push_back(twist * delta.at(p, q));
    }
  return out;
}

/// One R_{s,t} in M(A_s (x) A_t). `element` is kept when the component was
/// given as an element of A_s (x) A_t (always possible for unital factors).
struct RComponent {
  Multiplier mult;
  std::optional<Vec> element;

  friend bool operator==(const RComponent&, const RComponent&) = default;
};

struct RMatrix {
  std::vector<std::vector<RComponent>> comps;

  const RComponent& at(GroupElem s, GroupElem t) const { return comps.at(s).at(t); }
  RComponent& at(GroupElem s, GroupElem t) { return comps.at(s).at(t); }

  friend bool operator==(const RMatrix&, const RMatrix&) = default;
};

inline Algebra pair_algebra(const GradedAlgebra& a, GroupElem s, GroupElem t) {
  return tensor(a.component(s), a.component(t));
}

inline Algebra triple_algebra(const GradedAlgebra& a, GroupElem r, GroupElem s, GroupElem t) {
  return tensor(a.component(r), a.component(s), a.component(t));
}

inline RComponent r_component_from_element(const GradedAlgebra& a, GroupElem s, GroupElem t, Vec element) {
  Algebra alg = pair_algebra(a, s, t);
  if (element.size() != alg.dim()) {
    throw InputError("rmatrix: component (" + std::to_string(s) + "," + std::to_string(t) + ") has " +
                     std::to_string(element.size()) + " entries, expected " + std::to_string(alg.dim()));
  }
  return {multiplier_from_element(alg, element), std::move(element)};
}

/// R from elements R_{s,t} of A_s (x) A_t.
inline RMatrix rmatrix_from_elements(const GradedAlgebra& a, const std::vector<std::vector<Vec>>& elements) {
  RMatrix r;
  const auto n = a.grades();
  if (elements.size() != n) throw InputError("rmatrix: wrong number of component rows");
  for (GroupElem s = 0; s < n; ++s) {
    if (elements[s].size() != n) throw InputError("rmatrix: wrong number of components");
    r.comps.emplace_back();
    for (GroupElem t = 0; t < n; ++t) r.comps[s].push_back(r_component_from_element(a, s, t, elements[s][t]));
  }
  return r;
}

/// The unit multiplier in every component (R = 1 (x) 1).
inline RMatrix unit_rmatrix(const GradedAlgebra& a) {
  RMatrix r;
  for (GroupElem s = 0; s < a.grades(); ++s) {
    r.comps.emplace_back();
    for (GroupElem t = 0; t < a.grades(); ++t) {
      Algebra alg = pair_algebra(a, s, t);
      RComponent c{unit_multiplier(alg), std::nullopt};
      if (alg.unit()) c.element = *alg.unit();
      r.comps[s].push_back(std::move(c));
    }
  }
  return r;
}

/// Permutation matrix of the flip A_x (x) A_y -> A_y (x) A_x.
inline Matrix flip_matrix(Field f, std::size_t dx, std::size_t dy) {
  Matrix m(f, dx * dy, dx * dy);
  for (std::size_t i = 0; i < dx; ++i)
    for (std::size_t j = 0; j < dy; ++j) m(j * dx + i, i * dy + j) = Scalar::one(f);
  return m;
}

namespace detail {

/// Records the first basis column where two multipliers differ.
inline void compare_multipliers(CheckResult& r, const Multiplier& lhs, const Multiplier& rhs,
                                std::vector<std::size_t> grades, const std::string& what) {
  if (lhs == rhs) return;
  const bool left_differs = !(lhs.lam == rhs.lam);
  const Matrix& l = left_differs ? lhs.lam : lhs.rho;
  const Matrix& rr = left_differs ? rhs.lam : rhs.rho;
  for (std::size_t c = 0; c < l.cols(); ++c) {
    if (!(l.col(c) == rr.col(c))) {
      r.fail({std::move(grades), {c}, to_string(l.col(c)), to_string(rr.col(c)),
              what + (left_differs ? " (left action)" : " (right action)")});
      return;
    }
  }
}

}  // namespace detail

/// Every R_{s,t} is a valid, invertible multiplier.
inline CheckResult check_qt_invertibility(const GradedAlgebra& a, const RMatrix& rm) {
  CheckResult r = make_result(tag::kQtInvertibility);
  for (GroupElem s = 0; s < a.grades(); ++s)
    for (GroupElem t = 0; t < a.grades(); ++t) {
      const Multiplier& m = rm.at(s, t).mult;
      Algebra alg = pair_algebra(a, s, t);
      if (auto bad = compatibility_violation(alg, m)) {
        r.fail({{s, t}, {bad->first, bad->second}, "", "", "R_{s,t} is not a multiplier"});
      } else if (!multiplier_invertible(m)) {
        r.fail({{s, t}, {}, std::to_string(rank(m.lam)), std::to_string(alg.dim()), "R_{s,t} not invertible"});
      }
    }
  return r;
}

/// (pi_q (x) pi_q)(R_{s,t}) = R_{qsq^-1, qtq^-1} for all q, s, t.
inline CheckResult check_qt_invariance(const GradedAlgebra& a, const Crossing& c, const RMatrix& rm) {
  CheckResult r = make_result(tag::kQtInvariance);
  const auto& g = a.group();
  const auto n = g.order();
  for (GroupElem q = 0; q < n; ++q)
    for (GroupElem s = 0; s < n; ++s)
      for (GroupElem t = 0; t < n; ++t) {
        GroupElem qs = c.rho[q][s], qt = c.rho[q][t];
        Matrix f = kron(crossing_block(a, c, q, s), crossing_block(a, c, q, t));
        try {
          Multiplier moved = extend_homomorphism(pair_algebra(a, s, t), pair_algebra(a, qs, qt), f, rm.at(s, t).mult);
          detail::compare_multipliers(r, moved, rm.at(qs, qt).mult, {q, s, t}, "(pi_q x pi_q)R_{s,t} vs R_{qsq^-1,qtq^-1}");
        } catch (const InputError& e) {
          r.fail({{q, s, t}, {}, "", "", std::string("pi_q x pi_q cannot be extended: ") + e.what()});
        }
      }
  return r;
}

/// R_{s,t} Delta_{s,t}(a) = (tau_{t,s} Dtilde_{t,s}(a)) R_{s,t} for a in A_{st}, where
/// Dtilde_{t,s} = (pi_{s^-1} (x) id) Delta_{sts^-1, s}.
inline CheckResult check_qt_commutation(const GradedAlgebra& a, const Comultiplication& delta,
                                        const DeformedComultiplication& tilde, const RMatrix& rm) {
  CheckResult r = make_result(tag::kQtCommutation);
  const auto& g = a.group();
  const auto n = g.order();
  for (GroupElem s = 0; s < n; ++s)
    for (GroupElem t = 0; t < n; ++t) {
      const GroupElem st = g.mul(s, t);
      const Multiplier& m = rm.at(s, t).mult;
      Matrix twisted = flip_matrix(a.field(), a.dim(t), a.dim(s)) * tilde.at(g.conj(s, t), s);
      for (std::size_t i = 0; i < a.dim(st); ++i) {
        Vec lhs = multiplier_apply(m, delta.at(s, t).col(i));
        Vec rhs = multiplier_apply_right(twisted.col(i), m);
        if (!(lhs == rhs)) r.fail({{s, t}, {i}, to_string(lhs), to_string(rhs), "R Delta(a) vs Dtilde^cop(a) R"});
      }
    }
  return r;
}

/// (id (x) Delta_{s,t})(R_{r,st}) = (R_{r,t})_{1s3} (R_{r,s})_{12t}.
inline CheckResult check_qt_hexagon_1(const GradedAlgebra& a, const Comultiplication& delta, const RMatrix& rm) {
  CheckResult r = make_result(tag::kQtHexagon1);
  const auto& g = a.group();
  const auto n = g.order();
  const Field f = a.field();
  for (GroupElem x = 0; x < n; ++x)
    for (GroupElem s = 0; s < n; ++s)
      for (GroupElem t = 0; t < n; ++t) {
        const GroupElem st = g.mul(s, t);
        Algebra triple = triple_algebra(a, x, s, t);
        Matrix lift = kron(Matrix::identity(f, a.dim(x)), delta.at(s, t));
        Multiplier lhs;
        try {
          lhs = extend_homomorphism(pair_algebra(a, x, st), triple, lift, rm.at(x, st).mult);
        } catch (const InputError& e) {
          r.fail({{x, s, t}, {}, "", "", std::string("id x Delta cannot be extended: ") + e.what()});
          continue;
        }
        Multiplier rhs = multiplier_product(leg_insert(rm.at(x, t).mult, a.dim(x), a.dim(t), a.dim(s), LegPattern::kMiddle),
                                            leg_insert(rm.at(x, s).mult, a.dim(x), a.dim(s), a.dim(t), LegPattern::kLast));
        detail::compare_multipliers(r, lhs, rhs, {x, s, t}, "(id x Delta)(R) vs R_{1s3} R_{12t}");
      }
  return r;
}

/// (Delta_{r,s} (x) id)(R_{rs,t}) = ((id (x) pi_{s^-1}) R_{r,sts^-1})_{1s3} (R_{s,t})_{r23}.
inline CheckResult check_qt_hexagon_2(const GradedAlgebra& a, const Comultiplication& delta, const Crossing& c,
                                      const RMatrix& rm) {
  CheckResult r = make_result(tag::kQtHexagon2);
  const auto& g = a.group();
  const auto n = g.order();
  const Field f = a.field();
  for (GroupElem x = 0; x < n; ++x)
    for (GroupElem s = 0; s < n; ++s)
      for (GroupElem t = 0; t < n; ++t) {
        const GroupElem xs = g.mul(x, s);
        const GroupElem sts = g.conj(s, t);
        Algebra triple = triple_algebra(a, x, s, t);
        Matrix lift = kron(delta.at(x, s), Matrix::identity(f, a.dim(t)));
        Multiplier lhs, twisted;
        try {
          lhs = extend_homomorphism(pair_algebra(a, xs, t), triple, lift, rm.at(xs, t).mult);
          Matrix tw = kron(Matrix::identity(f, a.dim(x)), crossing_block(a, c, g.inv(s), sts));
          twisted = extend_homomorphism(pair_algebra(a, x, sts), pair_algebra(a, x, c.rho[g.inv(s)][sts]), tw,
                                        rm.at(x, sts).mult);
        } catch (const InputError& e) {
          r.fail({{x, s, t}, {}, "", "", std::string("extension failed: ") + e.what()});
          continue;
        }
        Multiplier rhs = multiplier_product(leg_insert(twisted, a.dim(x), a.dim(t), a.dim(s), LegPattern::kMiddle),
                                            leg_insert(rm.at(s, t).mult, a.dim(s), a.dim(t), a.dim(x), LegPattern::kFirst));
        detail::compare_multipliers(r, lhs, rhs, {x, s, t}, "(Delta x id)(R) vs ((id x pi)R)_{1s3} R_{r23}");
      }
  return r;
}

/// The R-side verdict: invertibility, crossing invariance, commutation and
/// both hexagons. Counit and antipode are part of the structure but are
/// checked by the structural suite.
inline CheckReport check_quasitriangular(const GradedAlgebra& a, const Comultiplication& delta, const Crossing& c,
                                         const RMatrix& rm) {
  CheckReport rep;
  rep.add(check_qt_invertibility(a, rm));
  rep.add(check_qt_invariance(a, c, rm));
  rep.add(check_qt_commutation(a, delta, deformed_comultiplication(a, delta, c), rm));
  rep.add(check_qt_hexagon_1(a, delta, rm));
  rep.add(check_qt_hexagon_2(a, delta, c, rm));
  return rep;
}

}  // namespace mhtc
