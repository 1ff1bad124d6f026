#include <gtest/gtest.h>

#include <random>

#include "mhtc/mhtc.hpp"

using namespace mhtc;

namespace {

const Field F7 = Field::prime(7);
const Field Q = Field::rationals();

std::vector<Scalar> chi(std::vector<std::int64_t> xs) {
  std::vector<Scalar> out;
  for (auto x : xs) out.emplace_back(F7, x);
  return out;
}

struct Z3Fixture {
  InstanceBundle b = gen_bicharacter(3, F7, Scalar(F7, 2));
  TCoalgebra h = b.structure();
};

}  // namespace

TEST(CharacterModule, TrivialAndPowerCharactersAreCrossed) {
  Z3Fixture z;
  for (auto c : {chi({1, 1, 1}), chi({1, 2, 4})}) {
    CrossedModule m = gen_character_module(z.b, "M", c);
    EXPECT_TRUE(check_crossed_module(z.b.algebra, z.b.crossing, m).passed());
  }
}

TEST(CharacterModule, NonCharacterFailsMultiplicativity) {
  Z3Fixture z;
  CrossedModule m = gen_character_module(z.b, "M", chi({1, 2, 3}));
  CheckReport rep = check_crossed_module(z.b.algebra, z.b.crossing, m);
  const CheckResult* r = rep.find(tag::kCrossed);
  ASSERT_NE(r, nullptr);
  ASSERT_FALSE(r->passed);
  // c_1 c_1 = 4 but c_2 = 3.
  const Witness* w = r->find({1, 1, 0});
  ASSERT_NE(w, nullptr);
  EXPECT_EQ(w->lhs, "4");
  EXPECT_EQ(w->rhs, "3");
  for (const auto& x : r->witnesses) EXPECT_EQ(x.detail.substr(0, 3), "(3)");
}

TEST(CharacterModule, DimensionMismatchThrows) {
  Z3Fixture z;
  EXPECT_THROW(gen_character_module(z.b, "M", chi({1, 2})), InputError);
  EXPECT_THROW(gen_module(z.b, "M", {1, 1}, {}), InputError);
}

TEST(Module, BrokenModulesAreRejected) {
  Z3Fixture z;
  CrossedModule m = gen_character_module(z.b, "M", chi({1, 1, 1}));
  CrossedModule zero = m;
  zero.module.action[1][0] = Matrix(F7, 1, 1);
  CheckResult r = check_module(z.b.algebra, zero.module);
  EXPECT_FALSE(r.passed);
  EXPECT_NE(r.find({1}), nullptr);

  CrossedModule law = m;
  law.module.action[2][0] = Scalar(F7, 3) * law.module.action[2][0];  // (d d).m = 3m but d.(d.m) = 9m
  EXPECT_FALSE(check_module(z.b.algebra, law.module).passed);
}

TEST(Module, NonInvertibleCrossingFailsClauseOne) {
  Z3Fixture z;
  CrossedModule m = gen_character_module(z.b, "M", chi({1, 1, 1}));
  m.crossing.blocks[2][1] = Matrix(F7, 1, 1);
  CheckResult r = check_crossed(z.b.algebra, z.b.crossing, m);
  ASSERT_FALSE(r.passed);
  EXPECT_EQ(r.witnesses[0].detail.substr(0, 3), "(1)");
}

TEST(Module, RegularAndUnitModulesAreCrossed) {
  for (const auto& b : {gen_bicharacter(3, F7, Scalar(F7, 2)), gen_sweedler_h4(F7, Scalar(F7, 1)),
                        gen_function_algebra(symmetric_group_3(), Q)}) {
    TCoalgebra h = b.structure();
    EXPECT_TRUE(check_crossed_module(h.algebra, h.crossing, regular_module(h)).passed());
    EXPECT_TRUE(check_crossed_module(h.algebra, h.crossing, unit_object(h)).passed());
    EXPECT_TRUE(check_crossed_module(h.algebra, h.crossing, direct_sum(h, regular_module(h), unit_object(h))).passed());
  }
}

TEST(MultiplierAct, UnitActsAsIdentity) {
  for (const auto& b : {gen_bicharacter(3, F7, Scalar(F7, 2)), gen_sweedler_h4(F7, Scalar(F7, 0))}) {
    TCoalgebra h = b.structure();
    for (const auto& m : make_test_family(h, 3).modules)
      for (GroupElem p = 0; p < h.group().order(); ++p) {
        const Algebra& ap = h.algebra.component(p);
        Matrix act = multiplier_act_matrix(ap, m.module.action[p], m.dim(p), unit_multiplier(ap));
        EXPECT_EQ(act, Matrix::identity(h.field(), m.dim(p))) << m.name;
      }
  }
}

TEST(MultiplierAct, ElementMultiplierMatchesPlainAction) {
  InstanceBundle b = gen_sweedler_h4(F7, Scalar(F7, 0));
  TCoalgebra h = b.structure();
  CrossedModule a = regular_module(h);
  const Algebra& alg = h.algebra.component(0);
  std::mt19937_64 rng(4);
  for (int k = 0; k < 20; ++k) {
    Vec x = alg.zero(), v = alg.zero();
    for (auto& s : x) s = Scalar(F7, static_cast<std::int64_t>(rng() % 7));
    for (auto& s : v) s = Scalar(F7, static_cast<std::int64_t>(rng() % 7));
    EXPECT_EQ(multiplier_act(alg, a.module.action[0], multiplier_from_element(alg, x), v), alg.multiply(x, v));
  }
}

TEST(Tensor, DimensionsCountFactorizations) {
  Z3Fixture z;
  CrossedModule m = gen_character_module(z.b, "M", chi({1, 1, 1}));
  CrossedModule mm = tensor(z.h, m, m);
  EXPECT_EQ(mm.dims(), (std::vector<std::size_t>{3, 3, 3}));
  EXPECT_EQ(mm.name, "(M*M)");
  InstanceBundle s3 = gen_function_algebra(symmetric_group_3(), Q);
  TCoalgebra h = s3.structure();
  EXPECT_EQ(tensor_dims(s3.group(), regular_module(h).dims(), regular_module(h).dims()), std::vector<std::size_t>(6, 6));
}

TEST(Tensor, UnitObjectIsNeutralOnDimensions) {
  Z3Fixture z;
  CrossedModule k = unit_object(z.h);
  CrossedModule a = regular_module(z.h);
  EXPECT_EQ(k.dims(), (std::vector<std::size_t>{1, 0, 0}));
  EXPECT_EQ(tensor(z.h, k, a).dims(), a.dims());
  EXPECT_EQ(tensor(z.h, a, k).dims(), a.dims());
}

TEST(Tensor, DeltaActsByFactorization) {
  // delta_r acts on m_s (x) n_t as the identity iff s + t = r; the action
  // of A_p is stored on (M (x) N)_p only, where every block has s + t = p.
  Z3Fixture z;
  CrossedModule m = gen_character_module(z.b, "M", chi({1, 1, 1}));
  AGModule t = tensor_module(z.h, m.module, m.module);
  for (GroupElem p = 0; p < 3; ++p) {
    ASSERT_EQ(t.action[p].size(), 1u);
    EXPECT_EQ(t.action[p][0], Matrix::identity(F7, 3));
    for (GroupElem s = 0; s < 3; ++s)
      for (GroupElem u = 0; u < 3; ++u) {
        Matrix blk = tensor_block_action(z.h, m.module, m.module, s, u, 0);
        EXPECT_EQ(blk, Matrix::identity(F7, 1));  // delta_{s+u} on m_s (x) n_u
      }
  }
}

TEST(Tensor, CrossingOfCharactersMultiplies) {
  Z3Fixture z;
  CrossedModule m = gen_character_module(z.b, "M", chi({1, 2, 4}));
  CrossedModule n = gen_character_module(z.b, "N", chi({1, 4, 2}));
  CrossedModule mn = tensor(z.h, m, n);
  for (GroupElem q = 0; q < 3; ++q)
    for (GroupElem p = 0; p < 3; ++p)
      EXPECT_EQ(mn.crossing.blocks[q][p], (m.crossing.blocks[q][0](0, 0) * n.crossing.blocks[q][0](0, 0)) * Matrix::identity(F7, 3));
  EXPECT_TRUE(check_crossed_module(z.b.algebra, z.b.crossing, mn).passed());
}

TEST(Tensor, TensorOfCrossedModulesIsCrossed) {
  for (const auto& b : {gen_sweedler_h4(F7, Scalar(F7, 0)), gen_function_algebra(symmetric_group_3(), Q)}) {
    TCoalgebra h = b.structure();
    auto fam = make_test_family(h, 8).modules;
    for (const auto& x : fam)
      for (const auto& y : fam) EXPECT_TRUE(check_crossed_module(h.algebra, h.crossing, tensor(h, x, y)).passed()) << x.name << y.name;
  }
}

TEST(Associator, RegroupsBasisTensors) {
  InstanceBundle s3 = gen_function_algebra(symmetric_group_3(), Q);
  const FiniteGroup& g = s3.group();
  std::vector<std::size_t> dl{1, 2, 0, 1, 1, 1}, dm{2, 1, 1, 0, 1, 1}, dn{1, 1, 2, 1, 0, 1};
  TensorLayout lm(g, dl, dm), mn(g, dm, dn);
  TensorLayout lm_n(g, lm.dims(), dn), l_mn(g, dl, mn.dims());
  BasisPermutation a = associator_permutation(g, dl, dm, dn);
  for (GroupElem x = 0; x < 6; ++x)
    for (GroupElem y = 0; y < 6; ++y)
      for (GroupElem z = 0; z < 6; ++z)
        for (std::size_t i = 0; i < dl[x]; ++i)
          for (std::size_t j = 0; j < dm[y]; ++j)
            for (std::size_t k = 0; k < dn[z]; ++k) {
              GroupElem xy = g.mul(x, y), yz = g.mul(y, z), p = g.mul(xy, z);
              std::size_t src = lm_n.index(p, xy, lm.index(xy, x, i, j), k);
              std::size_t dst = l_mn.index(p, x, i, mn.index(yz, y, j, k));
              EXPECT_EQ(a[p][src], dst);
            }
}

TEST(Associator, IsCrossedIsomorphism) {
  InstanceBundle b = gen_sweedler_h4(F7, Scalar(F7, 1));
  TCoalgebra h = b.structure();
  auto fam = make_test_family(h, 5, FamilyKind::kDefault).modules;
  for (const auto& x : fam)
    for (const auto& y : fam)
      for (const auto& z : fam) {
        AGMorphism a = associator(h, x, y, z);
        EXPECT_TRUE(is_isomorphism(a));
        EXPECT_FALSE(morphism_violation(h.algebra, h.crossing, tensor(h, tensor(h, x, y), z), tensor(h, x, tensor(h, y, z)), a));
      }
}

TEST(UnitConstraints, LeftUnitSendsKappaTensorMToKappaM) {
  Z3Fixture z;
  CrossedModule a = regular_module(z.h);
  UnitConstraints u = unit_constraints(z.h, a);
  for (GroupElem p = 0; p < 3; ++p) {
    EXPECT_EQ(u.left.maps[p], Matrix::identity(F7, 1));
    EXPECT_EQ(u.right.maps[p], Matrix::identity(F7, 1));
  }
  CrossedModule k = unit_object(z.h);
  EXPECT_FALSE(morphism_violation(z.h.algebra, z.h.crossing, tensor(z.h, k, a), a, u.left));
  EXPECT_FALSE(morphism_violation(z.h.algebra, z.h.crossing, tensor(z.h, a, k), a, u.right));
}

TEST(Morphism, ViolationsAreNamed) {
  Z3Fixture z;
  CrossedModule m = gen_character_module(z.b, "M", chi({1, 2, 4}));
  CrossedModule n = gen_character_module(z.b, "N", chi({1, 1, 1}));
  AGMorphism id = identity_morphism(F7, m);
  EXPECT_FALSE(morphism_violation(z.b.algebra, z.b.crossing, m, m, id));
  // Identity maps M -> N are linear but do not intertwine the crossings.
  auto bad = morphism_violation(z.b.algebra, z.b.crossing, m, n, id);
  ASSERT_TRUE(bad);
  EXPECT_NE(bad->find("piN_q"), std::string::npos);
  EXPECT_THROW(validate_morphism(z.b.algebra, z.b.crossing, m, n, id), InputError);
  AGMorphism wrong_shape{{Matrix(F7, 2, 1), Matrix(F7, 1, 1), Matrix(F7, 1, 1)}};
  EXPECT_TRUE(morphism_violation(z.b.algebra, z.b.crossing, m, m, wrong_shape));
}

TEST(BasisChange, TransportsStructure) {
  InstanceBundle b = gen_sweedler_h4(F7, Scalar(F7, 0));
  TCoalgebra h = b.structure();
  CrossedModule a = regular_module(h);
  Matrix p = Matrix::from_rows(F7, {{1, 2, 0, 0}, {0, 1, 0, 3}, {0, 0, 1, 0}, {5, 0, 0, 1}});
  ASSERT_TRUE(is_invertible(p));
  AGMorphism iso;
  CrossedModule pa = basis_change(h, a, {p}, "P.A", &iso);
  EXPECT_TRUE(check_crossed_module(h.algebra, h.crossing, pa).passed());
  EXPECT_FALSE(morphism_violation(h.algebra, h.crossing, a, pa, iso));
  EXPECT_THROW(basis_change(h, a, {Matrix(F7, 4, 4)}, "bad"), InputError);
}

TEST(MonoidalCoherence, HoldsOverZ3AndS3) {
  for (const auto& b : {gen_bicharacter(3, F7, Scalar(F7, 2)), gen_function_algebra(symmetric_group_3(), Q)}) {
    TCoalgebra h = b.structure();
    CheckResult r = check_monoidal_coherence(h, make_test_family(h, 1, FamilyKind::kDefault).modules);
    EXPECT_TRUE(r.passed) << (r.witnesses.empty() ? "" : r.witnesses[0].detail);
  }
}
