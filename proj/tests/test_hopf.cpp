#include <gtest/gtest.h>

#include "mhtc/mhtc.hpp"

using namespace mhtc;

namespace {

const Field F7 = Field::prime(7);
const Field Q = Field::rationals();

InstanceBundle z3() { return gen_function_algebra(cyclic_group(3), F7); }
InstanceBundle h4() { return gen_sweedler_h4(F7, Scalar(F7, 0)); }

Vec v(Field f, std::vector<std::int64_t> xs) {
  Vec out;
  for (auto x : xs) out.emplace_back(f, x);
  return out;
}

}  // namespace

TEST(Cograded, PassesOnFunctionAlgebraAndH4) {
  for (const auto& b : {z3(), h4(), gen_function_algebra(symmetric_group_3(), Q)}) {
    EXPECT_TRUE(check_cograded(b.algebra, b.delta).passed);
    EXPECT_TRUE(check_comultiplicative(b.algebra, b.delta).passed);
    EXPECT_TRUE(check_coassoc(b.algebra, b.delta).passed);
    EXPECT_TRUE(t_maps_bijective(b.algebra, b.delta).passed);
  }
}

TEST(Cograded, ZeroComponentFailsWithRankWitness) {
  InstanceBundle b = z3();
  b.delta.at(1, 2) = Matrix(F7, 1, 1);
  CheckResult r = check_cograded(b.algebra, b.delta);
  ASSERT_FALSE(r.passed);
  const Witness* w = r.find({1, 2});
  ASSERT_NE(w, nullptr);
  EXPECT_EQ(w->lhs, "0");
  EXPECT_EQ(w->rhs, "1");
  EXPECT_EQ(r.failing_grades(), (std::vector<std::vector<std::size_t>>{{1, 2}}));
  EXPECT_FALSE(t_maps_bijective(b.algebra, b.delta).passed);
}

TEST(Coassoc, ScaledComponentFails) {
  InstanceBundle b = mutate(z3(), "scale-delta:1,1=2");
  CheckResult r = check_coassoc(b.algebra, b.delta);
  ASSERT_FALSE(r.passed);
  // Oracle: every side is 2^k where k counts the factors equal to Delta_{1,1};
  // a triple fails exactly when the two counts differ.
  std::vector<std::vector<std::size_t>> expect;
  for (std::size_t p = 0; p < 3; ++p)
    for (std::size_t q = 0; q < 3; ++q)
      for (std::size_t s = 0; s < 3; ++s) {
        auto is11 = [](std::size_t x, std::size_t y) { return x == 1 && y == 1 ? 1 : 0; };
        int lhs = is11(q, s) + is11(p, (q + s) % 3);
        int rhs = is11(p, q) + is11((p + q) % 3, s);
        if (lhs != rhs) expect.push_back({p, q, s});
      }
  EXPECT_EQ(r.failing_grades(), expect);
  EXPECT_EQ(r.find({1, 1, 1}), nullptr);
  const Witness* w = r.find({2, 2, 1});
  ASSERT_NE(w, nullptr);
  EXPECT_EQ(w->lhs, "(1)");
  EXPECT_EQ(w->rhs, "(2)");
}

TEST(TMaps, DimensionConditionReported) {
  FiniteGroup z2 = cyclic_group(2);
  Algebra k = Algebra::ground(Q);
  Algebra k2 = gen_function_algebra(z2, Q).algebra.total();
  GradedAlgebra a(z2, Q, {k, k2});
  Comultiplication d;
  d.maps = {{Matrix::identity(Q, 1), Matrix::identity(Q, 2)}, {Matrix::identity(Q, 2), Matrix(Q, 4, 1)}};
  d.at(1, 1)(0, 0) = Scalar::one(Q);
  CheckResult r = t_maps_bijective(a, d);
  ASSERT_FALSE(r.passed);
  EXPECT_NE(r.find({1, 1}), nullptr);
  EXPECT_NE(r.find({1, 1})->detail.find("dimension"), std::string::npos);
}

TEST(Shapes, WrongComponentShapeThrows) {
  InstanceBundle b = z3();
  b.delta.at(0, 1) = Matrix(F7, 2, 1);
  EXPECT_THROW(check_cograded(b.algebra, b.delta), InputError);
}

TEST(Counit, DerivedValues) {
  InstanceBundle b = z3();
  EXPECT_EQ(derive_counit(b.algebra, b.delta).eps, v(F7, {1}));
  InstanceBundle h = h4();
  EXPECT_EQ(derive_counit(h.algebra, h.delta).eps, v(F7, {1, 1, 0, 0}));
}

TEST(Counit, ScaledComultiplicationHasNoSolution) {
  InstanceBundle b = z3();
  for (GroupElem p = 0; p < 3; ++p)
    for (GroupElem q = 0; q < 3; ++q) b.delta.at(p, q) = Scalar(F7, 2) * b.delta.at(p, q);
  try {
    derive_counit(b.algebra, b.delta);
    FAIL() << "expected DerivationError";
  } catch (const DerivationError& e) {
    EXPECT_NE(std::string(e.what()).find("no solution"), std::string::npos);
  }
}

TEST(Counit, VerifyRejectsWrongFunctional) {
  InstanceBundle h = h4();
  CheckResult r = verify_counit(h.algebra, h.delta, Counit{v(F7, {1, 0, 0, 0})});
  EXPECT_FALSE(r.passed);
  EXPECT_FALSE(r.witnesses.empty());
}

TEST(Antipode, DerivedValues) {
  InstanceBundle b = z3();
  Antipode s = derive_antipode(b.algebra, b.delta, *b.eps);
  for (GroupElem p = 0; p < 3; ++p) EXPECT_EQ(s.at(p), Matrix::identity(F7, 1));

  InstanceBundle h = h4();
  Antipode sh = derive_antipode(h.algebra, h.delta, *h.eps);
  // Columns: S(1) = 1, S(g) = g, S(x) = -gx, S(gx) = x.
  Matrix expect = Matrix::from_rows(F7, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}});
  EXPECT_EQ(sh.at(0), expect);
  EXPECT_EQ(sh, *h.antipode);
  EXPECT_TRUE(verify_antipode(h.algebra, h.delta, *h.eps, sh).passed);
}

TEST(Antipode, TrivialAlgebraIsIdentity) {
  InstanceBundle b = gen_function_algebra(trivial_group(), Q);
  EXPECT_EQ(derive_antipode(b.algebra, b.delta, derive_counit(b.algebra, b.delta)).at(0), Matrix::identity(Q, 1));
}

TEST(Antipode, VerifyRejectsIdentityOnH4) {
  InstanceBundle h = h4();
  CheckResult r = verify_antipode(h.algebra, h.delta, *h.eps, Antipode{{Matrix::identity(F7, 4)}});
  EXPECT_FALSE(r.passed);
}

TEST(Regular, ZeroAntipodeIsNotRegular) {
  InstanceBundle b = z3();
  EXPECT_TRUE(check_regular(b.algebra, *b.antipode).passed);
  EXPECT_FALSE(check_regular(b.algebra, Antipode{std::vector<Matrix>(3, Matrix(F7, 1, 1))}).passed);
  InstanceBundle h = h4();
  EXPECT_TRUE(check_regular(h.algebra, *h.antipode).passed);
}

TEST(HopfProperty, DerivedStructureMatchesGenerators) {
  std::vector<InstanceBundle> all = {z3(), h4(), gen_sweedler_h4(Q, Scalar(Q, 3)),
                                     gen_function_algebra(symmetric_group_3(), Q),
                                     gen_function_algebra(cyclic_group(5), Field::prime(11))};
  for (const auto& b : all) {
    Counit eps = derive_counit(b.algebra, b.delta);
    EXPECT_EQ(eps, *b.eps);
    EXPECT_EQ(derive_antipode(b.algebra, b.delta, eps), *b.antipode);
    EXPECT_TRUE(structural_report(b).passed()) << to_text(structural_report(b));
  }
}
