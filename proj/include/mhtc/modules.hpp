#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mhtc/algebra.hpp"
#include "mhtc/crossing.hpp"
#include "mhtc/error.hpp"
#include "mhtc/matrix.hpp"
#include "mhtc/multiplier.hpp"
#include "mhtc/report.hpp"

namespace mhtc {

/// A left A-G-module: action[p][i] is the m_p x m_p matrix of the i-th basis
/// element of A_p acting on M_p. Grades with m_p = 0 carry 0x0 matrices.
struct AGModule {
  std::vector<std::size_t> dims;
  std::vector<std::vector<Matrix>> action;

  std::size_t total_dim() const {
    std::size_t n = 0;
    for (auto d : dims) n += d;
    return n;
  }

  friend bool operator==(const AGModule&, const AGModule&) = default;
};

/// blocks[q][p]: M_p -> M_{qpq^-1}.
struct ModuleCrossing {
  std::vector<std::vector<Matrix>> blocks;

  friend bool operator==(const ModuleCrossing&, const ModuleCrossing&) = default;
};

struct CrossedModule {
  std::string name;
  AGModule module;
  ModuleCrossing crossing;

  const std::vector<std::size_t>& dims() const { return module.dims; }
  std::size_t dim(GroupElem p) const { return module.dims.at(p); }

  friend bool operator==(const CrossedModule&, const CrossedModule&) = default;
};

/// maps[p]: M_p -> N_p.
struct AGMorphism {
  std::vector<Matrix> maps;

  friend bool operator==(const AGMorphism&, const AGMorphism&) = default;
};

/// Matrix of a in A_p acting on M_p.
inline Matrix action_op(const AGModule& m, GroupElem p, const Vec& a) {
  const auto& ops = m.action.at(p);
  Matrix out(a.front().field(), m.dims.at(p), m.dims.at(p));
  for (std::size_t i = 0; i < ops.size(); ++i)
    if (!a[i].is_zero()) out += a[i] * ops[i];
  return out;
}

/// Module law, unitality (A_p M_p = M_p) and non-degeneracy, grade by grade.
inline CheckResult check_module(const GradedAlgebra& a, const AGModule& m) {
  CheckResult r = make_result(tag::kModule);
  const auto n = a.grades();
  const Field f = a.field();
  if (m.dims.size() != n || m.action.size() != n) {
    r.fail({{}, {}, std::to_string(m.dims.size()), std::to_string(n), "module: wrong number of grades"});
    return r;
  }
  for (GroupElem p = 0; p < n; ++p) {
    const std::size_t d = m.dims[p];
    if (m.action[p].size() != a.dim(p)) {
      r.fail({{p}, {}, std::to_string(m.action[p].size()), std::to_string(a.dim(p)), "module: wrong number of action matrices"});
      continue;
    }
    bool shapes_ok = true;
    for (std::size_t i = 0; i < a.dim(p); ++i) {
      const Matrix& op = m.action[p][i];
      if (op.rows() != d || op.cols() != d) {
        r.fail({{p}, {i}, op.shape(), std::to_string(d) + "x" + std::to_string(d), "module: action shape"});
        shapes_ok = false;
      }
    }
    if (!shapes_ok || d == 0) continue;
    const Algebra& ap = a.component(p);
    for (std::size_t i = 0; i < a.dim(p); ++i)
      for (std::size_t j = 0; j < a.dim(p); ++j) {
        Matrix lhs = action_op(m, p, ap.left(i).col(j));
        Matrix rhs = m.action[p][i] * m.action[p][j];
        if (!(lhs == rhs)) r.fail({{p}, {i, j}, "", "", "module law (ab).m != a.(b.m)"});
      }
    if (rank(hstack(m.action[p], f, d)) != d) r.fail({{p}, {}, "", "", "module is not unital (A_p M_p != M_p)"});
    if (rank(vstack(m.action[p], f, d)) != d) r.fail({{p}, {}, "", "", "module is degenerate (a.m = 0 for all a, m != 0)"});
  }
  return r;
}

/// Clauses of a crossed module: (1) each block invertible, (2)
/// piM_q(a.m) = pi_q(a).piM_q(m), (3) piM_p piM_q = piM_pq.
inline CheckResult check_crossed(const GradedAlgebra& a, const Crossing& pi, const CrossedModule& cm) {
  CheckResult r = make_result(tag::kCrossed);
  const auto& g = a.group();
  const auto n = g.order();
  const auto& m = cm.module;
  const auto& blocks = cm.crossing.blocks;
  if (blocks.size() != n) {
    r.fail({{}, {}, std::to_string(blocks.size()), std::to_string(n), "crossing: wrong number of maps"});
    return r;
  }
  for (GroupElem q = 0; q < n; ++q) {
    if (blocks[q].size() != n) {
      r.fail({{q}, {}, "", "", "crossing: wrong number of blocks"});
      return r;
    }
    for (GroupElem p = 0; p < n; ++p) {
      const Matrix& b = blocks[q][p];
      const GroupElem qp = pi.rho[q][p];
      if (b.rows() != m.dims[qp] || b.cols() != m.dims[p]) {
        r.fail({{q, p}, {}, b.shape(), std::to_string(m.dims[qp]) + "x" + std::to_string(m.dims[p]), "crossing: block shape"});
        return r;
      }
    }
  }
  for (GroupElem q = 0; q < n; ++q)
    for (GroupElem p = 0; p < n; ++p) {
      const Matrix& b = blocks[q][p];
      const GroupElem qp = pi.rho[q][p];
      if (!is_invertible(b)) r.fail({{q, p}, {}, std::to_string(rank(b)), std::to_string(m.dims[p]), "(1) piM_q not invertible"});
      Matrix pblk = crossing_block(a, pi, q, p);
      for (std::size_t i = 0; i < a.dim(p); ++i) {
        Matrix lhs = b * m.action[p][i];
        Matrix rhs = action_op(m, qp, pblk.col(i)) * b;
        if (!(lhs == rhs)) r.fail({{q, p}, {i}, "", "", "(2) piM_q(a.m) != pi_q(a).piM_q(m)"});
      }
    }
  for (GroupElem p = 0; p < n; ++p)
    for (GroupElem q = 0; q < n; ++q)
      for (GroupElem x = 0; x < n; ++x) {
        Matrix lhs = blocks[p][pi.rho[q][x]] * blocks[q][x];
        const Matrix& rhs = blocks[g.mul(p, q)][x];
        if (!(lhs == rhs)) {
          std::string ls = lhs.rows() * lhs.cols() == 1 ? lhs(0, 0).to_string() : "";
          std::string rs = rhs.rows() * rhs.cols() == 1 ? rhs(0, 0).to_string() : "";
          r.fail({{p, q, x}, {}, ls, rs, "(3) piM_p piM_q != piM_pq"});
        }
      }
  return r;
}

inline CheckReport check_crossed_module(const GradedAlgebra& a, const Crossing& pi, const CrossedModule& cm) {
  CheckReport rep;
  rep.add(check_module(a, cm.module));
  if (rep.passed()) rep.add(check_crossed(a, pi, cm));
  return rep;
}

/// First violated morphism condition, if any. Checks shapes, A_p-linearity
/// and (when `crossed`) compatibility with the module crossings.
inline std::optional<std::string> morphism_violation(const GradedAlgebra& a, const Crossing& pi, const CrossedModule& src,
                                                     const CrossedModule& dst, const AGMorphism& f, bool crossed = true) {
  const auto n = a.grades();
  if (f.maps.size() != n) return "morphism: wrong number of components";
  for (GroupElem p = 0; p < n; ++p) {
    const Matrix& fp = f.maps[p];
    if (fp.rows() != dst.dim(p) || fp.cols() != src.dim(p)) return "morphism: component " + std::to_string(p) + " has shape " + fp.shape();
  }
  for (GroupElem p = 0; p < n; ++p)
    for (std::size_t i = 0; i < a.dim(p); ++i)
      if (!(f.maps[p] * src.module.action[p][i] == dst.module.action[p][i] * f.maps[p]))
        return "morphism: f_" + std::to_string(p) + " is not A_" + std::to_string(p) + "-linear at basis " + std::to_string(i);
  if (!crossed) return std::nullopt;
  for (GroupElem q = 0; q < n; ++q)
    for (GroupElem p = 0; p < n; ++p) {
      const GroupElem qp = pi.rho[q][p];
      if (!(dst.crossing.blocks[q][p] * f.maps[p] == f.maps[qp] * src.crossing.blocks[q][p]))
        return "morphism: piN_q f_p != f_qpq^-1 piM_q at (" + std::to_string(q) + "," + std::to_string(p) + ")";
    }
  return std::nullopt;
}

inline void validate_morphism(const GradedAlgebra& a, const Crossing& pi, const CrossedModule& src, const CrossedModule& dst,
                              const AGMorphism& f) {
  if (auto bad = morphism_violation(a, pi, src, dst, f)) throw InputError(*bad);
}

inline AGMorphism identity_morphism(Field f, const CrossedModule& m) {
  AGMorphism id;
  for (auto d : m.dims()) id.maps.push_back(Matrix::identity(f, d));
  return id;
}

inline AGMorphism compose(const AGMorphism& g, const AGMorphism& f) {
  AGMorphism h;
  for (std::size_t p = 0; p < f.maps.size(); ++p) h.maps.push_back(g.maps.at(p) * f.maps[p]);
  return h;
}

inline bool is_isomorphism(const AGMorphism& f) {
  for (const auto& m : f.maps)
    if (!is_invertible(m)) return false;
  return true;
}

/// Matrix of the multiplier f acting on a module of the algebra `alg`, where
/// ops[i] is the action of the i-th basis element. Unital algebras use
/// f.v = (f 1).v; otherwise each basis vector is factorized as
/// v = sum a_i.x_i and sent to sum (f a_i).x_i.
inline Matrix multiplier_act_matrix(const Algebra& alg, const std::vector<Matrix>& ops, std::size_t module_dim,
                                    const Multiplier& f) {
  const Field fld = alg.field();
  if (ops.size() != alg.dim()) throw InputError("multiplier_act: action does not match the algebra");
  if (module_dim == 0) return Matrix(fld, 0, 0);
  if (alg.unit()) {
    Vec f1 = f.lam * *alg.unit();
    Matrix out(fld, module_dim, module_dim);
    for (std::size_t i = 0; i < ops.size(); ++i)
      if (!f1[i].is_zero()) out += f1[i] * ops[i];
    return out;
  }
  // v = sum_i a_i . x_i with unknowns x_i stacked.
  Matrix span = hstack(ops, fld, module_dim);
  auto sol = solve_linear(span, Matrix::identity(fld, module_dim));
  if (!sol.solvable()) throw InputError("multiplier_act: module is not unital, cannot factorize");
  std::vector<Matrix> images;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    Vec fai = f.lam.col(i);
    Matrix op(fld, module_dim, module_dim);
    for (std::size_t k = 0; k < ops.size(); ++k)
      if (!fai[k].is_zero()) op += fai[k] * ops[k];
    images.push_back(std::move(op));
  }
  return hstack(images, fld, module_dim) * sol.particular;
}

inline Vec multiplier_act(const Algebra& alg, const std::vector<Matrix>& ops, const Multiplier& f, const Vec& v) {
  return multiplier_act_matrix(alg, ops, v.size(), f) * v;
}

/// Block bookkeeping for (M (x) N)_p = (+)_{st=p} M_s (x) N_t. Blocks are
/// indexed by s in group-element order, with t = s^-1 p; zero-dimensional
/// blocks are kept so addresses stay stable.
class TensorLayout {
 public:
  TensorLayout(const FiniteGroup& g, const std::vector<std::size_t>& dm, const std::vector<std::size_t>& dn)
      : dm_(dm), dn_(dn) {
    const auto n = g.order();
    offsets_.assign(n, std::vector<std::size_t>(n, 0));
    dims_.assign(n, 0);
    partner_.assign(n, std::vector<GroupElem>(n, 0));
    for (GroupElem p = 0; p < n; ++p) {
      std::size_t off = 0;
      for (GroupElem s = 0; s < n; ++s) {
        GroupElem t = g.mul(g.inv(s), p);
        partner_[p][s] = t;
        offsets_[p][s] = off;
        off += dm[s] * dn[t];
      }
      dims_[p] = off;
    }
  }

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim(GroupElem p) const { return dims_.at(p); }
  /// The t with s t = p.
  GroupElem partner(GroupElem p, GroupElem s) const { return partner_.at(p).at(s); }
  std::size_t offset(GroupElem p, GroupElem s) const { return offsets_.at(p).at(s); }
  /// Position of m_i (x) n_j inside (M (x) N)_p where m_i is in M_s.
  std::size_t index(GroupElem p, GroupElem s, std::size_t i, std::size_t j) const {
    return offsets_[p][s] + i * dn_[partner_[p][s]] + j;
  }

 private:
  std::vector<std::size_t> dm_, dn_;
  std::vector<std::vector<std::size_t>> offsets_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<GroupElem>> partner_;
};

/// Action of a in A_{st} on the block M_s (x) N_t through Delta_{s,t}.
inline Matrix tensor_block_action(const TCoalgebra& h, const AGModule& m, const AGModule& n, GroupElem s, GroupElem t,
                                  std::size_t i) {
  const Field f = h.field();
  const std::size_t ds = m.dims[s], dt = n.dims[t];
  Matrix out(f, ds * dt, ds * dt);
  if (ds * dt == 0) return out;
  Vec coeffs = h.delta.at(s, t).col(i);
  const std::size_t dbt = h.algebra.dim(t);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    out += coeffs[k] * kron(m.action[s][k / dbt], n.action[t][k % dbt]);
  }
  return out;
}

/// (M (x) N)_p with a.(m (x) n) = a_(1,s).m (x) a_(2,t).n.
inline AGModule tensor_module(const TCoalgebra& h, const AGModule& m, const AGModule& n) {
  const auto& g = h.group();
  const Field f = h.field();
  TensorLayout lay(g, m.dims, n.dims);
  AGModule out;
  out.dims = lay.dims();
  out.action.resize(g.order());
  for (GroupElem p = 0; p < g.order(); ++p)
    for (std::size_t i = 0; i < h.algebra.dim(p); ++i) {
      Matrix op(f, lay.dim(p), lay.dim(p));
      for (GroupElem s = 0; s < g.order(); ++s) {
        GroupElem t = lay.partner(p, s);
        if (m.dims[s] * n.dims[t] == 0) continue;
        op.set_block(lay.offset(p, s), lay.offset(p, s), tensor_block_action(h, m, n, s, t, i));
      }
      out.action[p].push_back(std::move(op));
    }
  return out;
}

/// piM_q (x) piN_q blockwise: M_s (x) N_t -> M_{qsq^-1} (x) N_{qtq^-1}.
inline ModuleCrossing tensor_crossing(const TCoalgebra& h, const CrossedModule& m, const CrossedModule& n) {
  const auto& g = h.group();
  const Field f = h.field();
  TensorLayout lay(g, m.dims(), n.dims());
  ModuleCrossing out;
  out.blocks.resize(g.order());
  for (GroupElem q = 0; q < g.order(); ++q)
    for (GroupElem p = 0; p < g.order(); ++p) {
      const GroupElem qp = g.conj(q, p);
      Matrix blk(f, lay.dim(qp), lay.dim(p));
      for (GroupElem s = 0; s < g.order(); ++s) {
        GroupElem t = lay.partner(p, s);
        if (m.dim(s) * n.dim(t) == 0) continue;
        GroupElem qs = g.conj(q, s);
        blk.set_block(lay.offset(qp, qs), lay.offset(p, s),
                      kron(m.crossing.blocks[q][s], n.crossing.blocks[q][t]));
      }
      out.blocks[q].push_back(std::move(blk));
    }
  return out;
}

inline CrossedModule tensor(const TCoalgebra& h, const CrossedModule& m, const CrossedModule& n) {
  return {"(" + m.name + "*" + n.name + ")", tensor_module(h, m.module, n.module), tensor_crossing(h, m, n)};
}

/// K: K_e = k with a.1 = eps(a), K_p = 0 otherwise; identity crossing.
inline CrossedModule unit_object(const TCoalgebra& h) {
  const auto& g = h.group();
  const Field f = h.field();
  CrossedModule k;
  k.name = "K";
  k.module.dims.assign(g.order(), 0);
  k.module.dims[0] = 1;
  k.module.action.resize(g.order());
  for (GroupElem p = 0; p < g.order(); ++p)
    for (std::size_t i = 0; i < h.algebra.dim(p); ++i) {
      Matrix op(f, k.module.dims[p], k.module.dims[p]);
      if (p == 0) op(0, 0) = h.eps.eps[i];
      k.module.action[p].push_back(std::move(op));
    }
  k.crossing.blocks.resize(g.order());
  for (GroupElem q = 0; q < g.order(); ++q)
    for (GroupElem p = 0; p < g.order(); ++p) k.crossing.blocks[q].push_back(Matrix::identity(f, k.module.dims[p]));
  return k;
}

/// A acting on itself by left multiplication, crossed by pi.
inline CrossedModule regular_module(const TCoalgebra& h) {
  const auto& g = h.group();
  CrossedModule a;
  a.name = "A";
  a.module.dims = h.algebra.dims();
  a.module.action.resize(g.order());
  for (GroupElem p = 0; p < g.order(); ++p) a.module.action[p] = h.algebra.component(p).left_ops();
  a.crossing.blocks.resize(g.order());
  for (GroupElem q = 0; q < g.order(); ++q)
    for (GroupElem p = 0; p < g.order(); ++p) a.crossing.blocks[q].push_back(crossing_block(h.algebra, h.crossing, q, p));
  return a;
}

inline Matrix block_diag(Field f, const Matrix& x, const Matrix& y) {
  Matrix out(f, x.rows() + y.rows(), x.cols() + y.cols());
  out.set_block(0, 0, x);
  out.set_block(x.rows(), x.cols(), y);
  return out;
}

inline CrossedModule direct_sum(const TCoalgebra& h, const CrossedModule& m, const CrossedModule& n) {
  const auto& g = h.group();
  const Field f = h.field();
  CrossedModule out;
  out.name = "(" + m.name + "+" + n.name + ")";
  out.module.action.resize(g.order());
  out.crossing.blocks.resize(g.order());
  for (GroupElem p = 0; p < g.order(); ++p) {
    out.module.dims.push_back(m.dim(p) + n.dim(p));
    for (std::size_t i = 0; i < h.algebra.dim(p); ++i)
      out.module.action[p].push_back(block_diag(f, m.module.action[p][i], n.module.action[p][i]));
  }
  for (GroupElem q = 0; q < g.order(); ++q)
    for (GroupElem p = 0; p < g.order(); ++p)
      out.crossing.blocks[q].push_back(block_diag(f, m.crossing.blocks[q][p], n.crossing.blocks[q][p]));
  return out;
}

/// Transports M along invertible P_p: M_p -> M'_p. Returns the new module
/// and fills `iso` with the crossed isomorphism M -> M' when given.
inline CrossedModule basis_change(const TCoalgebra& h, const CrossedModule& m, const std::vector<Matrix>& p_maps,
                                  const std::string& name, AGMorphism* iso = nullptr) {
  const auto& g = h.group();
  std::vector<Matrix> inv;
  for (GroupElem p = 0; p < g.order(); ++p) {
    auto pi = inverse(p_maps.at(p));
    if (!pi) throw InputError("basis_change: map for grade " + std::to_string(p) + " is not invertible");
    inv.push_back(*pi);
  }
  CrossedModule out;
  out.name = name;
  out.module.dims = m.dims();
  out.module.action.resize(g.order());
  out.crossing.blocks.resize(g.order());
  for (GroupElem p = 0; p < g.order(); ++p)
    for (const auto& op : m.module.action[p]) out.module.action[p].push_back(p_maps[p] * op * inv[p]);
  for (GroupElem q = 0; q < g.order(); ++q)
    for (GroupElem p = 0; p < g.order(); ++p)
      out.crossing.blocks[q].push_back(p_maps[g.conj(q, p)] * m.crossing.blocks[q][p] * inv[p]);
  if (iso) iso->maps = p_maps;
  return out;
}

/// Morphism f (x) g: M (x) N -> M' (x) N', blockwise f_s (x) g_t.
inline AGMorphism tensor_morphism(const FiniteGroup& g, Field fld, const AGMorphism& f, const std::vector<std::size_t>& dm,
                                  const std::vector<std::size_t>& dm2, const AGMorphism& gm,
                                  const std::vector<std::size_t>& dn, const std::vector<std::size_t>& dn2) {
  TensorLayout src(g, dm, dn), dst(g, dm2, dn2);
  AGMorphism out;
  for (GroupElem p = 0; p < g.order(); ++p) {
    Matrix blk(fld, dst.dim(p), src.dim(p));
    for (GroupElem s = 0; s < g.order(); ++s) {
      GroupElem t = src.partner(p, s);
      if (dm[s] * dn[t] == 0 || dm2[s] * dn2[t] == 0) continue;
      blk.set_block(dst.offset(p, s), src.offset(p, s), kron(f.maps[s], gm.maps[t]));
    }
    out.maps.push_back(std::move(blk));
  }
  return out;
}

/// A grade-preserving bijection of basis vectors: perm[p][i] is the image of
/// basis vector i of X_p in Y_p.
using BasisPermutation = std::vector<std::vector<std::size_t>>;

inline std::vector<std::size_t> tensor_dims(const FiniteGroup& g, const std::vector<std::size_t>& dm,
                                            const std::vector<std::size_t>& dn) {
  return TensorLayout(g, dm, dn).dims();
}

/// Associator (L (x) M) (x) N -> L (x) (M (x) N) on basis tensors.
inline BasisPermutation associator_permutation(const FiniteGroup& g, const std::vector<std::size_t>& dl,
                                               const std::vector<std::size_t>& dm, const std::vector<std::size_t>& dn) {
  const auto n = g.order();
  TensorLayout lm(g, dl, dm), mn(g, dm, dn);
  TensorLayout lm_n(g, lm.dims(), dn), l_mn(g, dl, mn.dims());
  BasisPermutation perm(n);
  for (GroupElem p = 0; p < n; ++p) {
    perm[p].assign(lm_n.dim(p), 0);
    for (GroupElem r = 0; r < n; ++r)
      for (GroupElem s = 0; s < n; ++s) {
        GroupElem rs = g.mul(r, s);
        GroupElem t = g.mul(g.inv(rs), p);
        GroupElem st = g.mul(s, t);
        for (std::size_t i = 0; i < dl[r]; ++i)
          for (std::size_t j = 0; j < dm[s]; ++j)
            for (std::size_t k = 0; k < dn[t]; ++k) {
              std::size_t from = lm_n.index(p, rs, lm.index(rs, r, i, j), k);
              std::size_t to = l_mn.index(p, r, i, mn.index(st, s, j, k));
              perm[p][from] = to;
            }
      }
  }
  return perm;
}

/// l_M: K (x) M -> M. Every basis vector of (K (x) M)_p lies in block (e, p).
inline BasisPermutation left_unit_permutation(const FiniteGroup& g, const std::vector<std::size_t>& dm) {
  std::vector<std::size_t> dk(g.order(), 0);
  dk[0] = 1;
  TensorLayout lay(g, dk, dm);
  BasisPermutation perm(g.order());
  for (GroupElem p = 0; p < g.order(); ++p) {
    perm[p].assign(lay.dim(p), 0);
    for (std::size_t j = 0; j < dm[p]; ++j) perm[p][lay.index(p, 0, 0, j)] = j;
  }
  return perm;
}

/// r_M: M (x) K -> M.
inline BasisPermutation right_unit_permutation(const FiniteGroup& g, const std::vector<std::size_t>& dm) {
  std::vector<std::size_t> dk(g.order(), 0);
  dk[0] = 1;
  TensorLayout lay(g, dm, dk);
  BasisPermutation perm(g.order());
  for (GroupElem p = 0; p < g.order(); ++p) {
    perm[p].assign(lay.dim(p), 0);
    for (std::size_t i = 0; i < dm[p]; ++i) perm[p][lay.index(p, p, i, 0)] = i;
  }
  return perm;
}

inline BasisPermutation identity_permutation(const std::vector<std::size_t>& dims) {
  BasisPermutation perm;
  for (auto d : dims) {
    perm.emplace_back(d);
    for (std::size_t i = 0; i < d; ++i) perm.back()[i] = i;
  }
  return perm;
}

/// g after f.
inline BasisPermutation compose(const BasisPermutation& g, const BasisPermutation& f) {
  BasisPermutation out(f.size());
  for (std::size_t p = 0; p < f.size(); ++p)
    for (auto x : f[p]) out[p].push_back(g.at(p).at(x));
  return out;
}

/// f (x) g on basis tensors, where f acts on X (dims dx) and g on Y (dims
/// dy) and both preserve dimensions.
inline BasisPermutation tensor_permutation(const FiniteGroup& g, const BasisPermutation& f, const std::vector<std::size_t>& dx,
                                           const std::vector<std::size_t>& dx2, const BasisPermutation& gp,
                                           const std::vector<std::size_t>& dy, const std::vector<std::size_t>& dy2) {
  TensorLayout src(g, dx, dy), dst(g, dx2, dy2);
  BasisPermutation out(g.order());
  for (GroupElem p = 0; p < g.order(); ++p) {
    out[p].assign(src.dim(p), 0);
    for (GroupElem s = 0; s < g.order(); ++s) {
      GroupElem t = src.partner(p, s);
      for (std::size_t i = 0; i < dx[s]; ++i)
        for (std::size_t j = 0; j < dy[t]; ++j) out[p][src.index(p, s, i, j)] = dst.index(p, s, f[s][i], gp[t][j]);
    }
  }
  return out;
}

inline AGMorphism permutation_morphism(Field f, const BasisPermutation& perm) {
  AGMorphism m;
  for (const auto& pp : perm) {
    Matrix x(f, pp.size(), pp.size());
    for (std::size_t i = 0; i < pp.size(); ++i) x(pp[i], i) = Scalar::one(f);
    m.maps.push_back(std::move(x));
  }
  return m;
}

inline AGMorphism associator(const TCoalgebra& h, const CrossedModule& l, const CrossedModule& m, const CrossedModule& n) {
  return permutation_morphism(h.field(), associator_permutation(h.group(), l.dims(), m.dims(), n.dims()));
}

struct UnitConstraints {
  AGMorphism left;   // K (x) M -> M
  AGMorphism right;  // M (x) K -> M
};

inline UnitConstraints unit_constraints(const TCoalgebra& h, const CrossedModule& m) {
  return {permutation_morphism(h.field(), left_unit_permutation(h.group(), m.dims())),
          permutation_morphism(h.field(), right_unit_permutation(h.group(), m.dims()))};
}

/// Pentagon and triangle identities on basis tensors for all quadruples and
/// pairs of the family, and the associator and unit constraints as crossed
/// isomorphisms for all triples and members.
inline CheckResult check_monoidal_coherence(const TCoalgebra& h, const std::vector<CrossedModule>& family) {
  CheckResult r = make_result(tag::kMonoidal);
  const auto& g = h.group();
  const std::size_t n = family.size();
  auto dims = [&](std::size_t i) -> const std::vector<std::size_t>& { return family[i].dims(); };
  auto td = [&](const std::vector<std::size_t>& x, const std::vector<std::size_t>& y) { return tensor_dims(g, x, y); };

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          const auto &dl = dims(a), &dm = dims(b), &dn = dims(c), &dp = dims(d);
          auto lm = td(dl, dm), mn = td(dm, dn), np = td(dn, dp);
          auto lm_n = td(lm, dn), l_mn = td(dl, mn), mn_p = td(mn, dp), m_np = td(dm, np);
          // a_{L,M,N(x)P} a_{L(x)M,N,P}
          auto lhs = compose(associator_permutation(g, dl, dm, np), associator_permutation(g, lm, dn, dp));
          // (id_L (x) a_{M,N,P}) a_{L,M(x)N,P} (a_{L,M,N} (x) id_P)
          auto step1 = tensor_permutation(g, associator_permutation(g, dl, dm, dn), lm_n, l_mn, identity_permutation(dp), dp, dp);
          auto step2 = associator_permutation(g, dl, mn, dp);
          auto step3 = tensor_permutation(g, identity_permutation(dl), dl, dl, associator_permutation(g, dm, dn, dp), mn_p, m_np);
          auto rhs = compose(step3, compose(step2, step1));
          if (lhs != rhs) r.fail({{}, {a, b, c, d}, "", "", "pentagon fails for " + family[a].name + "," + family[b].name + "," +
                                                          family[c].name + "," + family[d].name});
        }

  std::vector<std::size_t> dk(g.order(), 0);
  dk[0] = 1;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto &dm = dims(a), &dn = dims(b);
      auto mk = td(dm, dk), kn = td(dk, dn);
      // (id_M (x) l_N) a_{M,K,N} = r_M (x) id_N
      auto lhs = compose(tensor_permutation(g, identity_permutation(dm), dm, dm, left_unit_permutation(g, dn), kn, dn),
                         associator_permutation(g, dm, dk, dn));
      auto rhs = tensor_permutation(g, right_unit_permutation(g, dm), mk, dm, identity_permutation(dn), dn, dn);
      if (lhs != rhs) r.fail({{}, {a, b}, "", "", "triangle fails for " + family[a].name + "," + family[b].name});
    }

  const CrossedModule k = unit_object(h);
  for (std::size_t a = 0; a < n; ++a) {
    auto u = unit_constraints(h, family[a]);
    CrossedModule km = tensor(h, k, family[a]), mk = tensor(h, family[a], k);
    if (auto bad = morphism_violation(h.algebra, h.crossing, km, family[a], u.left))
      r.fail({{}, {a}, "", "", "l_" + family[a].name + ": " + *bad});
    if (auto bad = morphism_violation(h.algebra, h.crossing, mk, family[a], u.right))
      r.fail({{}, {a}, "", "", "r_" + family[a].name + ": " + *bad});
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      CrossedModule lm = tensor(h, family[a], family[b]);
      for (std::size_t c = 0; c < n; ++c) {
        CrossedModule src = tensor(h, lm, family[c]);
        CrossedModule dst = tensor(h, family[a], tensor(h, family[b], family[c]));
        AGMorphism assoc = associator(h, family[a], family[b], family[c]);
        if (auto bad = morphism_violation(h.algebra, h.crossing, src, dst, assoc))
          r.fail({{}, {a, b, c}, "", "", "associator: " + *bad});
      }
    }
  return r;
}

}  // namespace mhtc
