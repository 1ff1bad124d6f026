#include <gtest/gtest.h>

#include <random>

#include "mhtc/matrix.hpp"

using namespace mhtc;

namespace {

const Field F7 = Field::prime(7);
const Field Q = Field::rationals();

Matrix col(Field f, std::vector<std::int64_t> v) {
  std::vector<std::vector<std::int64_t>> rows;
  for (auto x : v) rows.push_back({x});
  return Matrix::from_rows(f, rows);
}

Matrix random_matrix(std::mt19937_64& rng, Field f, std::size_t r, std::size_t c) {
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar(f, static_cast<std::int64_t>(rng() % 7) - 3);
  return m;
}

}  // namespace

TEST(Solve, IdentityHasUniqueSolution) {
  auto res = solve_linear(Matrix::identity(F7, 2), col(F7, {3, 5}));
  ASSERT_TRUE(res.unique());
  EXPECT_EQ(res.particular, col(F7, {3, 5}));
}

TEST(Solve, InconsistentSystem) {
  auto a = Matrix::from_rows(Q, {{1, 1}, {2, 2}});
  EXPECT_EQ(solve_linear(a, col(Q, {1, 3})).kind, SolveResult::Kind::kNone);
}

TEST(Solve, AffineSolutionSet) {
  auto a = Matrix::from_rows(Q, {{1, 1}, {2, 2}});
  auto res = solve_linear(a, col(Q, {1, 2}));
  ASSERT_EQ(res.kind, SolveResult::Kind::kAffine);
  EXPECT_EQ(a * res.particular, col(Q, {1, 2}));
  ASSERT_EQ(res.kernel.cols(), 1u);
  // The kernel direction is (1,-1) up to scale.
  EXPECT_EQ(res.kernel(0, 0), -res.kernel(1, 0));
  EXPECT_FALSE(res.kernel(0, 0).is_zero());
}

TEST(Solve, ShapeMismatchThrows) {
  EXPECT_THROW(solve_linear(Matrix::identity(Q, 2), col(Q, {1, 2, 3})), InputError);
}

TEST(Rank, SmallCases) {
  EXPECT_EQ(rank(Matrix(Q, 3, 3)), 0u);
  EXPECT_EQ(rank(Matrix::identity(F7, 5)), 5u);
  EXPECT_EQ(rank(Matrix::from_rows(Q, {{1, 2}, {2, 4}})), 1u);
  // Singular mod 7 but not over Q: det = 7.
  EXPECT_EQ(rank(Matrix::from_rows(Q, {{1, 2}, {3, 13}})), 2u);
  EXPECT_EQ(rank(Matrix::from_rows(F7, {{1, 2}, {3, 13}})), 1u);
}

TEST(Kron, IndexConvention) {
  auto a = Matrix::from_rows(Q, {{1, 2}, {3, 4}});
  auto b = Matrix::from_rows(Q, {{0, 5}, {6, 7}});
  Matrix k = kron(a, b);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t s = 0; s < 2; ++s) EXPECT_EQ(k(i * 2 + r, j * 2 + s), a(i, j) * b(r, s));
}

TEST(MatrixProperty, RankNullity) {
  std::mt19937_64 rng(3);
  for (Field f : {Q, F7}) {
    for (int k = 0; k < 60; ++k) {
      std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
      Matrix a = random_matrix(rng, f, r, c);
      Matrix ker = kernel_basis(a);
      EXPECT_EQ(rank(a) + ker.cols(), c);
      EXPECT_TRUE((a * ker).is_zero());
    }
  }
}

TEST(MatrixProperty, InverseIsTwoSided) {
  std::mt19937_64 rng(4);
  for (Field f : {Q, F7}) {
    for (int k = 0; k < 60; ++k) {
      std::size_t n = 1 + rng() % 5;
      Matrix a = random_matrix(rng, f, n, n);
      auto inv = inverse(a);
      EXPECT_EQ(inv.has_value(), is_invertible(a));
      if (!inv) continue;
      EXPECT_EQ(a * *inv, Matrix::identity(f, n));
      EXPECT_EQ(*inv * a, Matrix::identity(f, n));
    }
  }
}

TEST(MatrixProperty, SolveReproducesRightHandSide) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 80; ++k) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    Matrix a = random_matrix(rng, F7, r, c);
    Matrix x = random_matrix(rng, F7, c, 2);
    Matrix b = a * x;
    auto res = solve_linear(a, b);
    ASSERT_TRUE(res.solvable());
    EXPECT_EQ(a * res.particular, b);
    EXPECT_EQ(res.unique(), rank(a) == c);
  }
}
