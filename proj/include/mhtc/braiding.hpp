#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mhtc/crossing.hpp"
#include "mhtc/error.hpp"
#include "mhtc/hopf.hpp"
#include "mhtc/matrix.hpp"
#include "mhtc/modules.hpp"
#include "mhtc/report.hpp"

namespace mhtc {

/// Evaluates R-components on modules and assembles the braiding
/// c_{M_s,N_t} = (piN_s (x) id) tau (R_{s,t} . -).
class BraidingContext {
 public:
  BraidingContext(const TCoalgebra& h, const RMatrix& r) : h_(h), r_(r) {
    const auto n = h.group().order();
    elements_.assign(n, std::vector<std::optional<Vec>>(n));
    for (GroupElem s = 0; s < n; ++s)
      for (GroupElem t = 0; t < n; ++t) {
        const auto& us = h.algebra.component(s).unit();
        const auto& ut = h.algebra.component(t).unit();
        if (us && ut) elements_[s][t] = r.at(s, t).mult.lam * kron(*us, *ut);
      }
  }

  const TCoalgebra& structure() const { return h_; }
  const RMatrix& rmatrix() const { return r_; }

  /// R_{s,t} acting on X (x) Y, where ops_x[i] is the action of the i-th
  /// basis element of A_s on X and ops_y[j] that of A_t on Y.
  Matrix r_action(GroupElem s, GroupElem t, const std::vector<Matrix>& ops_x, std::size_t dx,
                  const std::vector<Matrix>& ops_y, std::size_t dy) const {
    const Field f = h_.field();
    if (dx * dy == 0) return Matrix(f, dx * dy, dx * dy);
    const std::size_t dt = h_.algebra.dim(t);
    if (const auto& e = elements_[s][t]) {
      Matrix out(f, dx * dy, dx * dy);
      for (std::size_t k = 0; k < e->size(); ++k)
        if (!(*e)[k].is_zero()) out += (*e)[k] * kron(ops_x[k / dt], ops_y[k % dt]);
      return out;
    }
    std::vector<Matrix> ops;
    for (std::size_t i = 0; i < ops_x.size(); ++i)
      for (std::size_t j = 0; j < ops_y.size(); ++j) ops.push_back(kron(ops_x[i], ops_y[j]));
    return multiplier_act_matrix(pair_algebra(h_.algebra, s, t), ops, dx * dy, r_.at(s, t).mult);
  }

  /// c_{M_s,N_t}: M_s (x) N_t -> N_{sts^-1} (x) M_s.
  Matrix block(const CrossedModule& m, const CrossedModule& n, GroupElem s, GroupElem t) const {
    const Field f = h_.field();
    const std::size_t dm = m.dim(s), dn = n.dim(t);
    const GroupElem sts = h_.group().conj(s, t);
    if (dm * dn == 0) return Matrix(f, n.dim(sts) * dm, dm * dn);
    Matrix ract = r_action(s, t, m.module.action[s], dm, n.module.action[t], dn);
    return kron(n.crossing.blocks[s][t], Matrix::identity(f, dm)) * flip_matrix(f, dm, dn) * ract;
  }

  /// The braiding as a morphism M (x) N -> N (x) M, block (s,t) of
  /// (M (x) N)_p landing in block (sts^-1, s) of (N (x) M)_p.
  AGMorphism braiding(const CrossedModule& m, const CrossedModule& n) const {
    const auto& g = h_.group();
    TensorLayout src(g, m.dims(), n.dims()), dst(g, n.dims(), m.dims());
    AGMorphism c;
    for (GroupElem p = 0; p < g.order(); ++p) {
      Matrix blk(h_.field(), dst.dim(p), src.dim(p));
      for (GroupElem s = 0; s < g.order(); ++s) {
        GroupElem t = src.partner(p, s);
        if (m.dim(s) * n.dim(t) == 0) continue;
        blk.set_block(dst.offset(p, g.conj(s, t)), src.offset(p, s), block(m, n, s, t));
      }
      c.maps.push_back(std::move(blk));
    }
    return c;
  }

 private:
  const TCoalgebra& h_;
  const RMatrix& r_;
  std::vector<std::vector<std::optional<Vec>>> elements_;
};

inline AGMorphism braiding(const TCoalgebra& h, const RMatrix& r, const CrossedModule& m, const CrossedModule& n) {
  return BraidingContext(h, r).braiding(m, n);
}

namespace detail {

inline std::string pair_name(const CrossedModule& m, const CrossedModule& n) { return m.name + "," + n.name; }

inline void first_column_difference(CheckResult& r, const Matrix& lhs, const Matrix& rhs, std::vector<std::size_t> grades,
                                    std::vector<std::size_t> basis, const std::string& what) {
  for (std::size_t c = 0; c < lhs.cols(); ++c)
    if (!(lhs.col(c) == rhs.col(c))) {
      basis.push_back(c);
      r.fail({std::move(grades), std::move(basis), to_string(lhs.col(c)), to_string(rhs.col(c)), what});
      return;
    }
}

}  // namespace detail

/// Every block c_{M_s,N_t} is bijective.
inline CheckResult check_braiding_invertible(const BraidingContext& ctx, const std::vector<CrossedModule>& family) {
  CheckResult r = make_result(tag::kL41Invertibility);
  const auto& g = ctx.structure().group();
  for (const auto& m : family)
    for (const auto& n : family)
      for (GroupElem s = 0; s < g.order(); ++s)
        for (GroupElem t = 0; t < g.order(); ++t) {
          if (m.dim(s) * n.dim(t) == 0) continue;
          Matrix c = ctx.block(m, n, s, t);
          if (!is_invertible(c))
            r.fail({{s, t}, {}, std::to_string(rank(c)), std::to_string(c.cols()), "c not invertible on " + detail::pair_name(m, n)});
        }
  return r;
}

/// c(a.x) = a.c(x) for a in A_{st}, x in M_s (x) N_t.
inline CheckResult check_braiding_module_morphism(const BraidingContext& ctx, const std::vector<CrossedModule>& family) {
  CheckResult r = make_result(tag::kL41);
  const auto& h = ctx.structure();
  const auto& g = h.group();
  for (const auto& m : family)
    for (const auto& n : family)
      for (GroupElem s = 0; s < g.order(); ++s)
        for (GroupElem t = 0; t < g.order(); ++t) {
          if (m.dim(s) * n.dim(t) == 0) continue;
          const GroupElem st = g.mul(s, t), sts = g.conj(s, t);
          Matrix c = ctx.block(m, n, s, t);
          for (std::size_t i = 0; i < h.algebra.dim(st); ++i) {
            Matrix lhs = c * tensor_block_action(h, m.module, n.module, s, t, i);
            Matrix rhs = tensor_block_action(h, n.module, m.module, sts, s, i) * c;
            if (!(lhs == rhs)) detail::first_column_difference(r, lhs, rhs, {s, t}, {i}, "c(a.x) != a.c(x) on " + detail::pair_name(m, n));
          }
        }
  return r;
}

/// pi_{N(x)M,q} c_p = c_{qpq^-1} pi_{M(x)N,q}, block by block.
inline CheckResult check_braiding_crossing_compat(const BraidingContext& ctx, const std::vector<CrossedModule>& family) {
  CheckResult r = make_result(tag::kL42);
  const auto& g = ctx.structure().group();
  for (const auto& m : family)
    for (const auto& n : family)
      for (GroupElem q = 0; q < g.order(); ++q)
        for (GroupElem s = 0; s < g.order(); ++s)
          for (GroupElem t = 0; t < g.order(); ++t) {
            if (m.dim(s) * n.dim(t) == 0) continue;
            const GroupElem sts = g.conj(s, t), qs = g.conj(q, s), qt = g.conj(q, t);
            Matrix lhs = kron(n.crossing.blocks[q][sts], m.crossing.blocks[q][s]) * ctx.block(m, n, s, t);
            Matrix rhs = ctx.block(m, n, qs, qt) * kron(m.crossing.blocks[q][s], n.crossing.blocks[q][t]);
            if (!(lhs == rhs)) detail::first_column_difference(r, lhs, rhs, {q, s, t}, {}, "pi c != c pi on " + detail::pair_name(m, n));
          }
  return r;
}

/// c_{L,M(x)N} = (id_M (x) c_{L,N})(c_{L,M} (x) id_N) on L_r (x) M_s (x) N_t.
/// Both sides are written in the flat basis l (x) m (x) n, where the
/// associators are identities.
inline CheckResult check_braiding_hexagon_1(const BraidingContext& ctx, const std::vector<CrossedModule>& family) {
  CheckResult r = make_result(tag::kL431);
  const auto& h = ctx.structure();
  const auto& g = h.group();
  const Field f = h.field();
  for (const auto& l : family)
    for (const auto& m : family)
      for (const auto& n : family)
        for (GroupElem x = 0; x < g.order(); ++x)
          for (GroupElem s = 0; s < g.order(); ++s)
            for (GroupElem t = 0; t < g.order(); ++t) {
              const std::size_t dl = l.dim(x), dm = m.dim(s), dn = n.dim(t);
              if (dl * dm * dn == 0) continue;
              const GroupElem st = g.mul(s, t), xs = g.conj(x, s);
              std::vector<Matrix> ops_mn;
              for (std::size_t i = 0; i < h.algebra.dim(st); ++i) ops_mn.push_back(tensor_block_action(h, m.module, n.module, s, t, i));
              Matrix ract = ctx.r_action(x, st, l.module.action[x], dl, ops_mn, dm * dn);
              Matrix lhs = kron(kron(m.crossing.blocks[x][s], n.crossing.blocks[x][t]), Matrix::identity(f, dl)) *
                           flip_matrix(f, dl, dm * dn) * ract;
              Matrix step1 = kron(ctx.block(l, m, x, s), Matrix::identity(f, dn));
              Matrix step2 = kron(Matrix::identity(f, m.dim(xs)), ctx.block(l, n, x, t));
              Matrix rhs = step2 * step1;
              if (!(lhs == rhs))
                detail::first_column_difference(r, lhs, rhs, {x, s, t}, {}, "c_{L,M*N} on " + l.name + "," + m.name + "," + n.name);
            }
  return r;
}

/// c_{L(x)M,N} = (c_{L,N} (x) id_M)(id_L (x) c_{M,N}) on L_r (x) M_s (x) N_t.
inline CheckResult check_braiding_hexagon_2(const BraidingContext& ctx, const std::vector<CrossedModule>& family) {
  CheckResult r = make_result(tag::kL432);
  const auto& h = ctx.structure();
  const auto& g = h.group();
  const Field f = h.field();
  for (const auto& l : family)
    for (const auto& m : family)
      for (const auto& n : family)
        for (GroupElem x = 0; x < g.order(); ++x)
          for (GroupElem s = 0; s < g.order(); ++s)
            for (GroupElem t = 0; t < g.order(); ++t) {
              const std::size_t dl = l.dim(x), dm = m.dim(s), dn = n.dim(t);
              if (dl * dm * dn == 0) continue;
              const GroupElem xs = g.mul(x, s), sts = g.conj(s, t);
              std::vector<Matrix> ops_lm;
              for (std::size_t i = 0; i < h.algebra.dim(xs); ++i) ops_lm.push_back(tensor_block_action(h, l.module, m.module, x, s, i));
              Matrix ract = ctx.r_action(xs, t, ops_lm, dl * dm, n.module.action[t], dn);
              Matrix lhs = kron(n.crossing.blocks[xs][t], Matrix::identity(f, dl * dm)) * flip_matrix(f, dl * dm, dn) * ract;
              Matrix step1 = kron(Matrix::identity(f, dl), ctx.block(m, n, s, t));
              Matrix step2 = kron(ctx.block(l, n, x, sts), Matrix::identity(f, dm));
              Matrix rhs = step2 * step1;
              if (!(lhs == rhs))
                detail::first_column_difference(r, lhs, rhs, {x, s, t}, {}, "c_{L*M,N} on " + l.name + "," + m.name + "," + n.name);
            }
  return r;
}

/// (g (x) f) c_{M,N} = c_{M',N'} (f (x) g) for crossed morphisms f: M -> M'
/// and g: N -> N'. Invalid morphisms are rejected with InputError before
/// any block is compared.
inline CheckResult check_naturality(const BraidingContext& ctx, const CrossedModule& m, const CrossedModule& m2,
                                    const AGMorphism& f, const CrossedModule& n, const CrossedModule& n2, const AGMorphism& gm,
                                    CheckResult* into = nullptr) {
  const auto& h = ctx.structure();
  const auto& g = h.group();
  validate_morphism(h.algebra, h.crossing, m, m2, f);
  validate_morphism(h.algebra, h.crossing, n, n2, gm);
  CheckResult local = make_result(tag::kNaturality);
  CheckResult& r = into ? *into : local;
  for (GroupElem s = 0; s < g.order(); ++s)
    for (GroupElem t = 0; t < g.order(); ++t) {
      if (m.dim(s) * n.dim(t) == 0) continue;
      const GroupElem sts = g.conj(s, t);
      Matrix lhs = kron(gm.maps[sts], f.maps[s]) * ctx.block(m, n, s, t);
      Matrix rhs = ctx.block(m2, n2, s, t) * kron(f.maps[s], gm.maps[t]);
      if (!(lhs == rhs))
        detail::first_column_difference(r, lhs, rhs, {s, t}, {}, "naturality square on " + detail::pair_name(m, n) + " -> " +
                                                                    detail::pair_name(m2, n2));
    }
  return r;
}

/// Algebra characters chi: alg -> k with chi(1) = 1, found by backtracking
/// over a finite candidate set of values. Over small prime fields every
/// value is tried; otherwise {0, 1, -1}.
inline std::vector<Vec> find_characters(const Algebra& alg, std::size_t limit = 8) {
  const Field f = alg.field();
  std::vector<Scalar> candidates;
  if (!f.is_rational() && f.modulus() <= 101) {
    for (std::uint64_t v = 0; v < f.modulus(); ++v) candidates.emplace_back(f, static_cast<std::int64_t>(v));
  } else {
    candidates = {Scalar::zero(f), Scalar::one(f), -Scalar::one(f)};
  }
  const std::size_t d = alg.dim();
  // Highest basis index involved in b_i b_j, so pairs are checked once all
  // their terms are assigned.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> ready(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      std::size_t hi = std::max(i, j);
      Vec prod = alg.left(i).col(j);
      for (std::size_t k = 0; k < d; ++k)
        if (!prod[k].is_zero()) hi = std::max(hi, k);
      ready[hi].push_back({i, j});
    }
  std::vector<Vec> found;
  Vec chi(d, Scalar::zero(f));
  auto consistent = [&](std::size_t k) {
    for (auto [i, j] : ready[k]) {
      Vec prod = alg.left(i).col(j);
      Scalar v = Scalar::zero(f);
      for (std::size_t x = 0; x < d; ++x) v += prod[x] * chi[x];
      if (!(v == chi[i] * chi[j])) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (found.size() >= limit) return;
    if (k == d) {
      bool nonzero = false;
      for (const auto& v : chi) nonzero = nonzero || !v.is_zero();
      if (nonzero) found.push_back(chi);
      return;
    }
    for (const auto& c : candidates) {
      chi[k] = c;
      if (consistent(k)) self(self, k + 1);
      if (found.size() >= limit) return;
    }
  };
  rec(rec, 0);
  return found;
}

/// Group homomorphisms G -> k^x over the same candidate values.
inline std::vector<std::vector<Scalar>> find_group_characters(const FiniteGroup& g, Field f, std::size_t limit = 8) {
  std::vector<Scalar> candidates;
  if (!f.is_rational() && f.modulus() <= 101) {
    for (std::uint64_t v = 1; v < f.modulus(); ++v) candidates.emplace_back(f, static_cast<std::int64_t>(v));
  } else {
    candidates = {Scalar::one(f), -Scalar::one(f)};
  }
  const auto n = g.order();
  std::vector<std::vector<Scalar>> found;
  std::vector<Scalar> c(n, Scalar::one(f));
  auto rec = [&](auto&& self, GroupElem k) -> void {
    if (found.size() >= limit) return;
    if (k == n) {
      found.push_back(c);
      return;
    }
    for (const auto& v : (k == 0 ? std::vector<Scalar>{Scalar::one(f)} : candidates)) {
      c[k] = v;
      bool ok = true;
      for (GroupElem a = 0; a <= k && ok; ++a)
        for (GroupElem b = 0; b <= k && ok; ++b) {
          GroupElem ab = g.mul(a, b);
          if (ab <= k && (a == k || b == k || ab == k)) ok = c[a] * c[b] == c[ab];
        }
      if (ok) self(self, k + 1);
    }
  };
  rec(rec, 0);
  return found;
}

/// One-dimensional crossed module: A_p acts by chi_p on M_p = k and pi_{M,q}
/// is multiplication by c_q.
inline CrossedModule one_dim_module(const TCoalgebra& h, const std::vector<Vec>& chi, const std::vector<Scalar>& c,
                                    const std::string& name) {
  const auto& g = h.group();
  const Field f = h.field();
  CrossedModule m;
  m.name = name;
  m.module.dims.assign(g.order(), 1);
  m.module.action.resize(g.order());
  for (GroupElem p = 0; p < g.order(); ++p) {
    if (chi.at(p).size() != h.algebra.dim(p)) throw InputError("module " + name + ": character has the wrong length");
    for (const auto& v : chi[p]) {
      Matrix x(f, 1, 1);
      x(0, 0) = v;
      m.module.action[p].push_back(std::move(x));
    }
  }
  m.crossing.blocks.resize(g.order());
  for (GroupElem q = 0; q < g.order(); ++q)
    for (GroupElem p = 0; p < g.order(); ++p) {
      Matrix x(f, 1, 1);
      x(0, 0) = c.at(q);
      m.crossing.blocks[q].push_back(std::move(x));
    }
  return m;
}

/// All one-dimensional crossed modules reachable from the candidate
/// characters, in a fixed order.
inline std::vector<CrossedModule> one_dim_crossed_modules(const TCoalgebra& h, std::size_t limit = 16) {
  const auto& g = h.group();
  std::vector<std::vector<Vec>> per_grade;
  for (GroupElem p = 0; p < g.order(); ++p) per_grade.push_back(find_characters(h.algebra.component(p)));
  // Families chi_p with chi_{qpq^-1} o pi_q = chi_p.
  std::vector<std::vector<Vec>> families;
  std::vector<Vec> chosen(g.order());
  std::vector<bool> set(g.order(), false);
  auto compatible = [&](GroupElem p) {
    for (GroupElem q = 0; q < g.order(); ++q) {
      GroupElem qp = h.crossing.rho[q][p];
      if (!set[qp]) continue;
      Matrix blk = crossing_block(h.algebra, h.crossing, q, p);
      for (std::size_t i = 0; i < h.algebra.dim(p); ++i) {
        Vec img = blk.col(i);
        Scalar v = Scalar::zero(h.field());
        for (std::size_t k = 0; k < img.size(); ++k) v += img[k] * chosen[qp][k];
        if (!(v == chosen[p][i])) return false;
      }
    }
    return true;
  };
  auto rec = [&](auto&& self, GroupElem p) -> void {
    if (families.size() >= limit) return;
    if (p == g.order()) {
      families.push_back(chosen);
      return;
    }
    for (const auto& chi : per_grade[p]) {
      chosen[p] = chi;
      set[p] = true;
      if (compatible(p)) self(self, p + 1);
      set[p] = false;
    }
  };
  rec(rec, 0);
  auto chars = find_group_characters(g, h.field());
  std::vector<CrossedModule> out;
  for (std::size_t a = 0; a < families.size(); ++a)
    for (std::size_t b = 0; b < chars.size(); ++b) {
      if (out.size() >= limit) return out;
      CrossedModule m = one_dim_module(h, families[a], chars[b], "X" + std::to_string(a) + "." + std::to_string(b));
      if (check_crossed_module(h.algebra, h.crossing, m).passed()) out.push_back(std::move(m));
    }
  return out;
}

enum class FamilyKind { kDefault, kExtended };

struct TestMorphism {
  std::size_t src;
  std::size_t dst;
  AGMorphism map;
  std::string name;
};

/// Deterministic family of crossed test modules and crossed morphisms
/// between them. The seed drives the basis changes and the choice of
/// one-dimensional modules.
struct TestFamily {
  std::vector<CrossedModule> modules;
  std::vector<TestMorphism> morphisms;
  std::uint64_t seed = 0;
};

namespace detail {

inline Scalar random_scalar(std::mt19937_64& rng, Field f) {
  if (f.is_rational()) return Scalar(f, static_cast<std::int64_t>(rng() % 7) - 3);
  return Scalar(f, static_cast<std::int64_t>(rng() % f.modulus()));
}

inline Matrix random_invertible(std::mt19937_64& rng, Field f, std::size_t n) {
  for (;;) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = random_scalar(rng, f);
    if (is_invertible(m)) return m;
  }
}

inline std::size_t find_module(const std::vector<CrossedModule>& mods, const std::string& name) {
  for (std::size_t i = 0; i < mods.size(); ++i)
    if (mods[i].name == name) return i;
  return mods.size();
}

}  // namespace detail

/// kDefault: K, A and two one-dimensional crossed modules. kExtended adds
/// A+K, K*A and basis-changed copies P.A and P.(A+K). `extra` modules (for
/// example those stored in an instance file) are appended as given.
inline TestFamily make_test_family(const TCoalgebra& h, std::uint64_t seed, FamilyKind kind = FamilyKind::kExtended,
                                   const std::vector<CrossedModule>& extra = {}) {
  const auto& g = h.group();
  const Field f = h.field();
  std::mt19937_64 rng(seed);
  TestFamily fam;
  fam.seed = seed;
  auto& mods = fam.modules;
  mods.push_back(unit_object(h));
  mods.push_back(regular_module(h));
  const std::size_t k_idx = 0, a_idx = 1;

  auto ones = one_dim_crossed_modules(h);
  if (!ones.empty()) {
    std::size_t first = rng() % ones.size();
    std::size_t second = ones.size() > 1 ? (first + 1 + rng() % (ones.size() - 1)) % ones.size() : first;
    mods.push_back(ones[first]);
    mods.push_back(ones[second]);
    if (second == first) mods.back().name += "'";
  }

  if (kind == FamilyKind::kExtended) {
    mods.push_back(direct_sum(h, mods[a_idx], mods[k_idx]));
    const std::size_t ak_idx = mods.size() - 1;
    CrossedModule ka = tensor(h, mods[k_idx], mods[a_idx]);
    mods.push_back(ka);
    const std::size_t ka_idx = mods.size() - 1;

    std::vector<Matrix> pa, pak;
    for (GroupElem p = 0; p < g.order(); ++p) pa.push_back(detail::random_invertible(rng, f, mods[a_idx].dim(p)));
    for (GroupElem p = 0; p < g.order(); ++p) pak.push_back(detail::random_invertible(rng, f, mods[ak_idx].dim(p)));
    AGMorphism to_pa, to_pak;
    mods.push_back(basis_change(h, mods[a_idx], pa, "P.A", &to_pa));
    const std::size_t pa_idx = mods.size() - 1;
    mods.push_back(basis_change(h, mods[ak_idx], pak, "P.(A+K)", &to_pak));
    const std::size_t pak_idx = mods.size() - 1;

    fam.morphisms.push_back({a_idx, pa_idx, to_pa, "P:A->P.A"});
    fam.morphisms.push_back({ak_idx, pak_idx, to_pak, "P:(A+K)->P.(A+K)"});

    AGMorphism incl, proj, eps;
    for (GroupElem p = 0; p < g.order(); ++p) {
      const std::size_t da = mods[a_idx].dim(p), dk = mods[k_idx].dim(p);
      Matrix in(f, da + dk, dk), pr(f, dk, da + dk), e(f, dk, da);
      if (dk == 1) {
        in(da, 0) = Scalar::one(f);
        pr(0, da) = Scalar::one(f);
        for (std::size_t i = 0; i < da; ++i) e(0, i) = h.eps.eps[i];
      }
      incl.maps.push_back(std::move(in));
      proj.maps.push_back(std::move(pr));
      eps.maps.push_back(std::move(e));
    }
    fam.morphisms.push_back({k_idx, ak_idx, incl, "K->A+K"});
    fam.morphisms.push_back({ak_idx, k_idx, proj, "A+K->K"});
    fam.morphisms.push_back({a_idx, k_idx, eps, "eps:A->K"});
    fam.morphisms.push_back({ka_idx, a_idx, unit_constraints(h, mods[a_idx]).left, "l_A"});
    AGMorphism twice = identity_morphism(f, mods[a_idx]);
    for (auto& m : twice.maps) m = Scalar(f, 2) * m;
    fam.morphisms.push_back({a_idx, a_idx, twice, "2.id_A"});
  }
  for (const auto& m : extra) mods.push_back(m);
  for (std::size_t i = 0; i < mods.size(); ++i)
    fam.morphisms.insert(fam.morphisms.begin() + static_cast<std::ptrdiff_t>(i),
                         TestMorphism{i, i, identity_morphism(f, mods[i]), "id_" + mods[i].name});
  return fam;
}

namespace detail {

inline CheckResult pair_agreement(const CheckReport& cat, const CheckReport& rside, const char* cat_tag, const char* r_tag) {
  CheckResult out = make_result(tag::kTheorem);
  const CheckResult* c = cat.find(cat_tag);
  const CheckResult* r = rside.find(r_tag);
  if (!c || !r) return out;
  if (c->passed != r->passed) {
    out.fail({{}, {}, c->passed ? "pass" : "fail", r->passed ? "pass" : "fail",
              std::string(cat_tag) + " and " + r_tag + " disagree"});
    return out;
  }
  auto cg = c->failing_grades();
  auto rg = r->failing_grades();
  if (cg != rg) {
    std::string cs, rs;
    for (const auto& x : cg) cs += join_indices(x);
    for (const auto& x : rg) rs += join_indices(x);
    out.fail({{}, {}, cs, rs, std::string(cat_tag) + " and " + r_tag + " fail at different grades"});
  }
  return out;
}

}  // namespace detail

/// Structural preconditions for the braided-category comparison: the
/// crossing must be a crossing and the comultiplication a coassociative,
/// cograded, multiplicative family with a counit.
inline CheckReport check_structure(const TCoalgebra& h) {
  CheckReport rep;
  rep.add(check_nondegenerate(h.algebra));
  rep.add(check_cograded(h.algebra, h.delta));
  rep.add(check_comultiplicative(h.algebra, h.delta));
  rep.add(check_coassoc(h.algebra, h.delta));
  rep.add(verify_counit(h.algebra, h.delta, h.eps));
  rep.add(check_crossing(h.algebra, h.delta, h.eps, h.crossing));
  return rep;
}

/// Runs the categorical side (braiding invertibility, linearity,
/// compatibility with the crossing, both hexagons, naturality) over the test
/// family and the R-matrix side, then compares them check by check. The
/// equivalence entry fails on any disagreement in verdicts or failing grade
/// tuples.
inline CheckReport check_braided_category(const TCoalgebra& h, const RMatrix& rm, const TestFamily& family) {
  CheckReport rep;
  rep.seed = family.seed;
  CheckReport structure = check_structure(h);
  if (!structure.passed()) {
    append(rep, structure);
    CheckResult skip = make_result(tag::kTheorem);
    skip.note = "not applicable: the T-coalgebra structure is invalid";
    rep.add(skip);
    return rep;
  }

  std::vector<CrossedModule> valid;
  const std::size_t excluded = family.modules.size();
  std::vector<std::size_t> valid_index(family.modules.size(), excluded);
  CheckResult crossed = make_result(tag::kCrossed);
  for (std::size_t i = 0; i < family.modules.size(); ++i) {
    CheckReport one = check_crossed_module(h.algebra, h.crossing, family.modules[i]);
    if (one.passed()) {
      valid_index[i] = valid.size();
      valid.push_back(family.modules[i]);
      continue;
    }
    for (const auto& res : one.results)
      for (auto w : res.witnesses) {
        w.detail = family.modules[i].name + ": " + w.detail;
        crossed.fail(std::move(w));
      }
  }
  rep.add(crossed);

  BraidingContext ctx(h, rm);
  CheckReport cat;
  cat.add(check_braiding_invertible(ctx, valid));
  cat.add(check_braiding_module_morphism(ctx, valid));
  cat.add(check_braiding_crossing_compat(ctx, valid));
  cat.add(check_braiding_hexagon_1(ctx, valid));
  cat.add(check_braiding_hexagon_2(ctx, valid));
  CheckResult nat = make_result(tag::kNaturality);
  for (const auto& f : family.morphisms)
    for (const auto& gm : family.morphisms) {
      std::size_t a = valid_index[f.src], a2 = valid_index[f.dst], b = valid_index[gm.src], b2 = valid_index[gm.dst];
      if (a == excluded || a2 == excluded || b == excluded || b2 == excluded) continue;
      check_naturality(ctx, valid[a], valid[a2], f.map, valid[b], valid[b2], gm.map, &nat);
    }
  cat.add(nat);

  CheckReport rside = check_quasitriangular(h.algebra, h.delta, h.crossing, rm);
  append(rep, cat);
  append(rep, rside);

  CheckResult eq = make_result(tag::kTheorem);
  bool cat_ok = cat.passed(), r_ok = rside.passed();
  if (cat_ok != r_ok)
    eq.fail({{}, {}, cat_ok ? "categorical pass" : "categorical fail", r_ok ? "R-side pass" : "R-side fail",
             "braided-category and quasitriangular verdicts disagree"});
  const std::pair<const char*, const char*> pairs[] = {{tag::kL41Invertibility, tag::kQtInvertibility},
                                                       {tag::kL41, tag::kQtCommutation},
                                                       {tag::kL42, tag::kQtInvariance},
                                                       {tag::kL431, tag::kQtHexagon1},
                                                       {tag::kL432, tag::kQtHexagon2}};
  for (auto [c, r] : pairs) {
    CheckResult one = detail::pair_agreement(cat, rside, c, r);
    for (auto& w : one.witnesses) eq.fail(std::move(w));
  }
  eq.note = std::to_string(valid.size()) + " test modules, " + std::to_string(family.morphisms.size()) + " morphisms";
  rep.add(eq);
  return rep;
}

}  // namespace mhtc
