#include <gtest/gtest.h>

#include <cstdlib>

#include "mhtc/mhtc.hpp"

using namespace mhtc;

namespace {

const Field F7 = Field::prime(7);
const Field Q = Field::rationals();

std::vector<InstanceBundle> positives() {
  InstanceBundle s3 = gen_function_algebra(symmetric_group_3(), Q);
  s3.rmatrix = unit_rmatrix(s3.algebra);
  return {gen_function_algebra(cyclic_group(3), F7),
          gen_function_algebra(cyclic_group(4), Q),
          s3,
          gen_bicharacter(3, F7, Scalar(F7, 2)),
          gen_bicharacter(5, Field::prime(11), Scalar(Field::prime(11), 3)),
          gen_sweedler_h4(F7, Scalar(F7, 0)),
          gen_sweedler_h4(F7, Scalar(F7, 1)),
          gen_sweedler_h4(Q, Scalar::parse(Q, "-1/2"))};
}

std::vector<Scalar> chi(std::vector<std::int64_t> xs) {
  std::vector<Scalar> out;
  for (auto x : xs) out.emplace_back(F7, x);
  return out;
}

bool has_failure(const CheckReport& r, const std::string& t) {
  const CheckResult* c = r.find(t);
  return c && !c->passed;
}

}  // namespace

TEST(Generators, AllPositiveInstancesPassStructuralAndQt) {
  for (const auto& b : positives()) {
    CheckReport rep = b.rmatrix ? qt_report(b) : structural_report(b);
    EXPECT_TRUE(rep.passed()) << b.get_meta("family").value_or("?") << "\n" << to_text(rep);
  }
}

TEST(Generators, StoredCounitAndAntipodeMatchDerivation) {
  for (const auto& b : positives()) {
    ASSERT_TRUE(b.eps && b.antipode);
    Counit e = derive_counit(b.algebra, b.delta);
    EXPECT_EQ(e, *b.eps);
    EXPECT_EQ(derive_antipode(b.algebra, b.delta, e), *b.antipode);
  }
}

TEST(Generators, MetadataDescribesTheInstance) {
  InstanceBundle b = gen_bicharacter(3, F7, Scalar(F7, 2));
  EXPECT_EQ(b.get_meta("family"), "bicharacter");
  EXPECT_EQ(b.get_meta("omega"), "2");
  EXPECT_EQ(b.get_meta("field"), "F7");
  EXPECT_EQ(gen_sweedler_h4(F7, Scalar(F7, 3)).get_meta("lambda"), "3");
  EXPECT_FALSE(b.get_meta("mutation"));
}

TEST(Generators, BicharacterRejectsBadInput) {
  EXPECT_THROW(gen_bicharacter(3, F7, Scalar(F7, 0)), InputError);
  InstanceBundle s3 = gen_function_algebra(symmetric_group_3(), F7);
  std::vector<std::vector<Scalar>> ones(6, std::vector<Scalar>(6, Scalar::one(F7)));
  EXPECT_THROW(gen_bicharacter_R(s3, ones), InputError);
  EXPECT_THROW(gen_sweedler_h4(Field::prime(2), Scalar(Field::prime(2), 0)), InputError);
}

TEST(Generators, CharacterModules) {
  InstanceBundle b = gen_bicharacter(3, F7, Scalar(F7, 2));
  CrossedModule m = gen_character_module(b, "M", chi({1, 2, 4}));
  EXPECT_EQ(m.module.dims, (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_TRUE(check_crossed_module(b.algebra, b.crossing, m).passed());
  EXPECT_THROW(gen_character_module(b, "M", chi({1, 2})), InputError);
  EXPECT_THROW(gen_character_module(gen_sweedler_h4(F7, Scalar(F7, 0)), "M", chi({1})), InputError);
}

TEST(Generators, Deterministic) {
  auto a = positives(), b = positives();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i], b[i]);
    EXPECT_EQ(serialize(a[i]), serialize(b[i]));
  }
}

TEST(Mutations, EachDescriptorChangesWhatItSays) {
  InstanceBundle b = gen_bicharacter(3, F7, Scalar(F7, 2));
  b.modules.push_back(gen_character_module(b, "M", chi({1, 2, 4})));

  InstanceBundle s = mutate(b, "scale-delta:1,2=3");
  EXPECT_EQ(s.delta.at(1, 2)(0, 0), Scalar(F7, 3));
  EXPECT_EQ(s.get_meta("mutation"), "scale-delta:1,2=3");

  InstanceBundle z = mutate(b, "zero-r:1,2");
  EXPECT_TRUE(z.rmatrix->at(1, 2).mult.lam.is_zero());
  EXPECT_EQ(z.rmatrix->at(2, 1), b.rmatrix->at(2, 1));

  InstanceBundle p = mutate(b, "perturb-beta:1,2=5");
  EXPECT_EQ(*p.rmatrix->at(1, 2).element, (Vec{Scalar(F7, 5)}));

  InstanceBundle c = mutate(b, "break-character:M,1=3");
  for (const auto& blk : c.modules[0].crossing.blocks[1]) EXPECT_EQ(blk(0, 0), Scalar(F7, 3));

  InstanceBundle r = mutate(b, "replace-pi-by-identity:1");
  EXPECT_EQ(r.crossing.pi[1], Matrix::identity(F7, 3));

  InstanceBundle u = mutate(b, "unit-r");
  EXPECT_EQ(*u.rmatrix, unit_rmatrix(b.algebra));

  InstanceBundle twice = mutate(mutate(b, "unit-r"), "zero-r:0,0");
  EXPECT_EQ(twice.get_meta("mutation"), "unit-r;zero-r:0,0");
}

TEST(Mutations, BadDescriptorsAreInputErrors) {
  InstanceBundle b = gen_bicharacter(3, F7, Scalar(F7, 2));
  for (const char* d : {"frobnicate", "scale-delta:1,2", "scale-delta:1=2", "zero-r:1,9", "zero-r:a,b",
                        "break-character:M,1=2", "replace-pi-by-identity:7", "perturb-beta:1,2=x"})
    EXPECT_THROW(mutate(b, d), InputError) << d;
  EXPECT_THROW(mutate(gen_function_algebra(cyclic_group(3), F7), "zero-r:1,1"), InputError);
}

TEST(Mutations, NegativeMatrixFailsTheExpectedClass) {
  InstanceBundle z3 = gen_bicharacter(3, F7, Scalar(F7, 2));
  z3.modules.push_back(gen_character_module(z3, "M", chi({1, 2, 4})));
  InstanceBundle s3 = gen_function_algebra(symmetric_group_3(), Q);
  s3.rmatrix = unit_rmatrix(s3.algebra);
  struct Case {
    const InstanceBundle* base;
    const char* op;
    const char* tag;
  };
  const Case cases[] = {
      {&z3, "scale-delta:1,1=2", tag::kCoassoc},
      {&z3, "zero-r:1,2", tag::kQtInvertibility},
      {&z3, "perturb-beta:1,2=5", tag::kQtHexagon1},
      {&z3, "break-character:M,1=3", tag::kCrossed},
      {&s3, "replace-pi-by-identity:1", tag::kCrossing},
      {&s3, "zero-r:1,2", tag::kQtInvariance},
  };
  for (const auto& c : cases) {
    InstanceBundle m = mutate(*c.base, c.op);
    CheckReport rep = qt_report(m);
    EXPECT_TRUE(has_failure(rep, c.tag)) << c.op << "\n" << to_text(rep);
  }
  InstanceBundle h4 = mutate(gen_sweedler_h4(F7, Scalar(F7, 0)), "unit-r");
  CheckReport rep = qt_report(h4);
  EXPECT_TRUE(has_failure(rep, tag::kQtCommutation));
  EXPECT_FALSE(has_failure(rep, tag::kQtHexagon1));
}

TEST(Seeds, ExplicitThenEnvironmentThenDefault) {
  unsetenv("MHTC_SEED");
  EXPECT_EQ(resolve_seed(std::nullopt), kDefaultSeed);
  EXPECT_EQ(resolve_seed(5), 5u);
  setenv("MHTC_SEED", "123", 1);
  EXPECT_EQ(resolve_seed(std::nullopt), 123u);
  EXPECT_EQ(resolve_seed(9), 9u);
  setenv("MHTC_SEED", "-4", 1);
  EXPECT_THROW(resolve_seed(std::nullopt), InputError);
  unsetenv("MHTC_SEED");
}

TEST(Reports, QtReportNeedsAnRMatrix) {
  EXPECT_THROW(qt_report(gen_function_algebra(cyclic_group(3), F7)), InputError);
}

TEST(Reports, MissingCounitIsDerived) {
  InstanceBundle b = gen_sweedler_h4(F7, Scalar(F7, 1));
  b.eps.reset();
  b.antipode.reset();
  CheckReport rep = structural_report(b);
  EXPECT_TRUE(rep.passed()) << to_text(rep);
  InstanceBundle bad = mutate(gen_function_algebra(cyclic_group(3), F7), "scale-delta:0,0=2");
  bad.eps.reset();
  EXPECT_TRUE(has_failure(structural_report(bad), tag::kCounit));
}
