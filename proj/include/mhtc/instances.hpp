#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mhtc/algebra.hpp"
#include "mhtc/braiding.hpp"
#include "mhtc/crossing.hpp"
#include "mhtc/error.hpp"
#include "mhtc/group.hpp"
#include "mhtc/hopf.hpp"
#include "mhtc/modules.hpp"
#include "mhtc/report.hpp"
#include "mhtc/scalar.hpp"

namespace mhtc {

/// A complete serializable instance: the Hopf T-coalgebra data, an optional
/// R-matrix and optional named crossed modules. Metadata keeps insertion
/// order so serialization is stable.
struct InstanceBundle {
  std::vector<std::pair<std::string, std::string>> meta;
  GradedAlgebra algebra;
  Comultiplication delta;
  std::optional<Counit> eps;
  std::optional<Antipode> antipode;
  Crossing crossing;
  std::optional<RMatrix> rmatrix;
  std::vector<CrossedModule> modules;

  const FiniteGroup& group() const { return algebra.group(); }
  const Field& field() const { return algebra.field(); }

  void set_meta(const std::string& key, const std::string& value) {
    for (auto& kv : meta)
      if (kv.first == key) {
        kv.second = value;
        return;
      }
    meta.emplace_back(key, value);
  }

  std::optional<std::string> get_meta(const std::string& key) const {
    for (const auto& kv : meta)
      if (kv.first == key) return kv.second;
    return std::nullopt;
  }

  /// The T-coalgebra view; the counit is derived when absent.
  TCoalgebra structure() const {
    return {algebra, delta, eps ? *eps : derive_counit(algebra, delta), crossing};
  }

  friend bool operator==(const InstanceBundle&, const InstanceBundle&) = default;
};

/// k^F: A_p = k delta_p, Delta_{p,q}(delta_pq) = delta_p (x) delta_q,
/// eps(delta_e) = 1, S(delta_p) = delta_{p^-1}, pi_q(delta_p) = delta_{qpq^-1}.
inline InstanceBundle gen_function_algebra(const FiniteGroup& g, Field f) {
  const auto n = g.order();
  InstanceBundle b;
  b.meta = {{"family", "function-algebra"}, {"group", g.name()}, {"field", f.name()}};
  b.algebra = GradedAlgebra(g, f, std::vector<Algebra>(n, Algebra::ground(f)));
  b.delta.maps.assign(n, std::vector<Matrix>(n, Matrix::identity(f, 1)));
  b.eps = Counit{{Scalar::one(f)}};
  b.antipode = Antipode{std::vector<Matrix>(n, Matrix::identity(f, 1))};
  b.crossing.rho = g.adjoint_table();
  for (GroupElem q = 0; q < n; ++q) {
    Matrix pi(f, n, n);
    for (GroupElem p = 0; p < n; ++p) pi(g.conj(q, p), p) = Scalar::one(f);
    b.crossing.pi.push_back(std::move(pi));
  }
  return b;
}

/// R_{p,q} = beta(p,q) (delta_p (x) delta_q) on a function algebra. Validity
/// is left to the checker.
inline RMatrix gen_bicharacter_R(const InstanceBundle& b, const std::vector<std::vector<Scalar>>& beta) {
  const auto& g = b.group();
  if (!g.is_abelian()) throw InputError("bicharacter: group " + g.name() + " is not abelian");
  const auto n = g.order();
  if (beta.size() != n) throw InputError("bicharacter: beta table has the wrong size");
  std::vector<std::vector<Vec>> elems(n);
  for (GroupElem p = 0; p < n; ++p) {
    if (beta[p].size() != n) throw InputError("bicharacter: beta table has the wrong size");
    for (GroupElem q = 0; q < n; ++q) {
      if (beta[p][q].is_zero())
        throw InputError("bicharacter: beta(" + std::to_string(p) + "," + std::to_string(q) + ") is not invertible");
      if (b.algebra.dim(p) != 1 || b.algebra.dim(q) != 1) throw InputError("bicharacter: components must be one-dimensional");
      elems[p].push_back({beta[p][q]});
    }
  }
  return rmatrix_from_elements(b.algebra, elems);
}

/// k^{Z_n} with R_{j,k} = omega^{jk}.
inline InstanceBundle gen_bicharacter(std::size_t n, Field f, const Scalar& omega) {
  InstanceBundle b = gen_function_algebra(cyclic_group(n), f);
  b.meta[0].second = "bicharacter";
  b.set_meta("omega", omega.to_string());
  std::vector<std::vector<Scalar>> beta(n, std::vector<Scalar>(n, Scalar::one(f)));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) beta[j][k] = omega.pow(j * k);
  b.rmatrix = gen_bicharacter_R(b, beta);
  return b;
}

/// Sweedler's four-dimensional Hopf algebra on the basis 1, g, x, gx, with
/// the R-matrix family R_lambda; trivially graded.
inline InstanceBundle gen_sweedler_h4(Field f, const Scalar& lambda) {
  if (!f.is_rational() && f.modulus() == 2) throw InputError("sweedler-h4: characteristic 2 is not allowed");
  auto s = [&](std::int64_t v) { return Scalar(f, v); };
  auto e = [&](std::size_t i) { return unit_vec(f, 4, i); };
  auto neg = [&](std::size_t i) {
    Vec v = zero_vec(f, 4);
    v[i] = s(-1);
    return v;
  };
  const Vec zero = zero_vec(f, 4);
  // products[i][j] = b_i b_j for 1, g, x, gx
  std::vector<std::vector<Vec>> products = {
      {e(0), e(1), e(2), e(3)},
      {e(1), e(0), e(3), e(2)},
      {e(2), neg(3), zero, zero},
      {e(3), neg(2), zero, zero},
  };
  Algebra h4 = Algebra::from_products(f, products);

  InstanceBundle b;
  b.meta = {{"family", "sweedler-h4"}, {"group", "trivial"}, {"field", f.name()}, {"lambda", lambda.to_string()}};
  b.algebra = GradedAlgebra(trivial_group(), f, {h4});
  // Delta as a 16 x 4 matrix; column i is Delta(b_i) with index a*4 + c.
  Matrix d(f, 16, 4);
  d(0 * 4 + 0, 0) = s(1);                          // 1 (x) 1
  d(1 * 4 + 1, 1) = s(1);                          // g (x) g
  d(2 * 4 + 0, 2) = s(1);                          // x (x) 1
  d(1 * 4 + 2, 2) = s(1);                          // g (x) x
  d(3 * 4 + 1, 3) = s(1);                          // gx (x) g
  d(0 * 4 + 3, 3) = s(1);                          // 1 (x) gx
  b.delta.maps = {{d}};
  b.eps = Counit{{s(1), s(1), s(0), s(0)}};
  Matrix anti(f, 4, 4);
  anti(0, 0) = s(1);
  anti(1, 1) = s(1);
  anti(3, 2) = s(-1);  // S(x) = -gx
  anti(2, 3) = s(1);   // S(gx) = x
  b.antipode = Antipode{{anti}};
  b.crossing = Crossing{{Matrix::identity(f, 4)}, {{0}}};

  const Scalar half = Scalar(f, 1) / Scalar(f, 2);
  const Scalar lhalf = lambda * half;
  Vec r = zero_vec(f, 16);
  r[0 * 4 + 0] = half;
  r[0 * 4 + 1] = half;
  r[1 * 4 + 0] = half;
  r[1 * 4 + 1] = -half;
  // With Delta(x) = x (x) 1 + g (x) x the lambda part reads
  // x (x) x - x (x) gx + gx (x) x + gx (x) gx; in the basis xg = -gx this is
  // x (x) x + x (x) xg + xg (x) xg - xg (x) x.
  r[2 * 4 + 2] = lhalf;
  r[2 * 4 + 3] = -lhalf;
  r[3 * 4 + 2] = lhalf;
  r[3 * 4 + 3] = lhalf;
  b.rmatrix = rmatrix_from_elements(b.algebra, {{r}});
  return b;
}

/// A crossed module over a function algebra: delta_p acts as the identity
/// on M_p and pi_{M,q} restricted to M_p is blocks[q][p].
inline CrossedModule gen_module(const InstanceBundle& b, const std::string& name, const std::vector<std::size_t>& dims,
                                const std::vector<std::vector<Matrix>>& blocks) {
  const auto& g = b.group();
  const Field f = b.field();
  if (dims.size() != g.order()) throw InputError("gen_module: dims has " + std::to_string(dims.size()) + " entries, group has " +
                                                 std::to_string(g.order()) + " elements");
  for (GroupElem p = 0; p < g.order(); ++p)
    if (b.algebra.dim(p) != 1) throw InputError("gen_module: instance is not a function algebra");
  CrossedModule m;
  m.name = name;
  m.module.dims = dims;
  m.module.action.resize(g.order());
  for (GroupElem p = 0; p < g.order(); ++p) m.module.action[p].push_back(Matrix::identity(f, dims[p]));
  if (blocks.size() != g.order()) throw InputError("gen_module: crossing has the wrong number of maps");
  for (GroupElem q = 0; q < g.order(); ++q) {
    if (blocks[q].size() != g.order()) throw InputError("gen_module: crossing has the wrong number of blocks");
    for (GroupElem p = 0; p < g.order(); ++p) {
      const Matrix& x = blocks[q][p];
      if (x.rows() != dims[g.conj(q, p)] || x.cols() != dims[p])
        throw InputError("gen_module: crossing block (" + std::to_string(q) + "," + std::to_string(p) + ") has shape " + x.shape());
    }
  }
  m.crossing.blocks = blocks;
  return m;
}

/// One-dimensional module with pi_{M,q} = chi[q].
inline CrossedModule gen_character_module(const InstanceBundle& b, const std::string& name, const std::vector<Scalar>& chi) {
  const auto& g = b.group();
  if (chi.size() != g.order())
    throw InputError("gen_module: character table has " + std::to_string(chi.size()) + " entries, group has " +
                     std::to_string(g.order()) + " elements");
  std::vector<std::vector<Matrix>> blocks(g.order());
  for (GroupElem q = 0; q < g.order(); ++q)
    for (GroupElem p = 0; p < g.order(); ++p) {
      Matrix x(b.field(), 1, 1);
      x(0, 0) = chi[q];
      blocks[q].push_back(std::move(x));
    }
  return gen_module(b, name, std::vector<std::size_t>(g.order(), 1), blocks);
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

inline std::size_t parse_index(const std::string& s, std::size_t bound, const std::string& what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw InputError("mutate: bad " + what + " '" + s + "'");
  std::size_t v = std::stoul(s);
  if (v >= bound) throw InputError("mutate: " + what + " " + s + " out of range");
  return v;
}

}  // namespace detail

/// Applies a mutation descriptor and records it in the metadata:
///   scale-delta:p,q=c        Delta_{p,q} := c Delta_{p,q}
///   zero-r:s,t               R_{s,t} := 0
///   perturb-beta:s,t=v       R_{s,t} := v (1 (x) 1)
///   break-character:NAME,q=v pi_{M,q} := v on every grade of module NAME
///   replace-pi-by-identity:q pi_q := id
///   unit-r                   R := 1 (x) 1
inline InstanceBundle mutate(InstanceBundle b, const std::string& descriptor) {
  const auto colon = descriptor.find(':');
  const std::string op = descriptor.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : descriptor.substr(colon + 1);
  const auto n = b.group().order();
  const Field f = b.field();
  auto split_value = [&](const std::string& a) -> std::pair<std::string, std::string> {
    auto eq = a.find('=');
    if (eq == std::string::npos) throw InputError("mutate: descriptor " + descriptor + " needs '=value'");
    return {a.substr(0, eq), a.substr(eq + 1)};
  };
  auto pair_of = [&](const std::string& a) {
    auto parts = detail::split(a, ',');
    if (parts.size() != 2) throw InputError("mutate: descriptor " + descriptor + " needs two grades");
    return std::pair{detail::parse_index(parts[0], n, "grade"), detail::parse_index(parts[1], n, "grade")};
  };
  auto need_r = [&]() -> RMatrix& {
    if (!b.rmatrix) throw InputError("mutate: instance has no R-matrix");
    return *b.rmatrix;
  };

  if (op == "scale-delta") {
    auto [lhs, val] = split_value(args);
    auto [p, q] = pair_of(lhs);
    b.delta.at(p, q) = Scalar::parse(f, val) * b.delta.at(p, q);
  } else if (op == "zero-r") {
    auto [s, t] = pair_of(args);
    RComponent& c = need_r().at(s, t);
    const std::size_t d = c.mult.lam.rows();
    c.mult = {Matrix(f, d, d), Matrix(f, d, d)};
    if (c.element) c.element = zero_vec(f, c.element->size());
  } else if (op == "perturb-beta") {
    auto [lhs, val] = split_value(args);
    auto [s, t] = pair_of(lhs);
    need_r();
    Algebra alg = pair_algebra(b.algebra, s, t);
    if (!alg.unit()) throw InputError("mutate: component (" + lhs + ") has no unit");
    Vec e = *alg.unit();
    const Scalar v = Scalar::parse(f, val);
    for (auto& x : e) x = v * x;
    b.rmatrix->at(s, t) = r_component_from_element(b.algebra, s, t, e);
  } else if (op == "break-character") {
    auto [lhs, val] = split_value(args);
    auto parts = detail::split(lhs, ',');
    if (parts.size() != 2) throw InputError("mutate: break-character needs NAME,q=v");
    const std::size_t q = detail::parse_index(parts[1], n, "group element");
    CrossedModule* target = nullptr;
    for (auto& m : b.modules)
      if (m.name == parts[0]) target = &m;
    if (!target) throw InputError("mutate: no module named " + parts[0]);
    const Scalar v = Scalar::parse(f, val);
    for (auto& blk : target->crossing.blocks[q]) {
      if (blk.rows() != 1 || blk.cols() != 1) throw InputError("mutate: break-character needs a one-dimensional module");
      blk(0, 0) = v;
    }
  } else if (op == "replace-pi-by-identity") {
    const std::size_t q = detail::parse_index(args, n, "group element");
    b.crossing.pi[q] = Matrix::identity(f, b.algebra.total_dim());
  } else if (op == "unit-r") {
    b.rmatrix = unit_rmatrix(b.algebra);
  } else {
    throw InputError("mutate: unknown descriptor '" + descriptor + "'");
  }
  auto prev = b.get_meta("mutation");
  b.set_meta("mutation", prev ? *prev + ";" + descriptor : descriptor);
  return b;
}

/// Default seed for randomized module families; MHTC_SEED overrides it when
/// no explicit seed is given.
inline constexpr std::uint64_t kDefaultSeed = 20240601;

inline std::uint64_t resolve_seed(std::optional<std::uint64_t> explicit_seed) {
  if (explicit_seed) return *explicit_seed;
  if (const char* env = std::getenv("MHTC_SEED")) {
    std::string s(env);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("MHTC_SEED must be a non-negative integer, got '" + s + "'");
    return std::stoull(s);
  }
  return kDefaultSeed;
}

/// The full structural suite: non-degeneracy, cograding, multiplicativity,
/// coassociativity, T1/T2 bijectivity, counit and antipode (verified when
/// present, derived otherwise), regularity and the crossing.
inline CheckReport structural_report(const InstanceBundle& b) {
  CheckReport rep;
  validate_shapes(b.algebra, b.delta);
  rep.add(check_nondegenerate(b.algebra));
  rep.add(check_cograded(b.algebra, b.delta));
  rep.add(check_comultiplicative(b.algebra, b.delta));
  rep.add(check_coassoc(b.algebra, b.delta));
  rep.add(t_maps_bijective(b.algebra, b.delta));

  std::optional<Counit> eps = b.eps;
  if (eps) {
    rep.add(verify_counit(b.algebra, b.delta, *eps));
  } else {
    try {
      eps = derive_counit(b.algebra, b.delta);
      rep.add(make_result(tag::kCounit));
    } catch (const DerivationError& e) {
      rep.add(failed_result(tag::kCounit, {{0}, {}, "", "", e.what()}));
    }
  }
  if (eps) {
    std::optional<Antipode> s = b.antipode;
    if (s) {
      rep.add(verify_antipode(b.algebra, b.delta, *eps, *s));
    } else {
      try {
        s = derive_antipode(b.algebra, b.delta, *eps);
        rep.add(make_result(tag::kAntipode));
      } catch (const DerivationError& e) {
        rep.add(failed_result(tag::kAntipode, {{}, {}, "", "", e.what()}));
      }
    }
    if (s) rep.add(check_regular(b.algebra, *s));
    rep.add(check_crossing(b.algebra, b.delta, *eps, b.crossing));
  }
  for (const auto& m : b.modules) {
    CheckReport mr = check_crossed_module(b.algebra, b.crossing, m);
    for (auto res : mr.results) {
      for (auto& w : res.witnesses) w.detail = m.name + ": " + w.detail;
      rep.add(std::move(res));
    }
  }
  return rep;
}

/// Structural suite followed by the quasitriangularity checks.
inline CheckReport qt_report(const InstanceBundle& b) {
  if (!b.rmatrix) throw InputError("instance has no [rmatrix] section");
  CheckReport rep = structural_report(b);
  append(rep, check_quasitriangular(b.algebra, b.delta, b.crossing, *b.rmatrix));
  return rep;
}

}  // namespace mhtc
