#include <gtest/gtest.h>

#include <random>

#include "trideco/exact_eigen.hpp"

using namespace trideco;

namespace {

Cyclotomic random_element(std::mt19937& rng, int order) {
  std::uniform_int_distribution<int> d(-4, 4);
  Cyclotomic x;
  for (int k = 0; k < order; ++k) x += Cyclotomic(static_cast<long>(d(rng))) * root_of_unity(order, k);
  return x;
}

Matrix from_ints(std::size_t r, std::size_t c, std::initializer_list<long> v) {
  std::vector<Cyclotomic> e;
  for (long x : v) e.emplace_back(x);
  return Matrix(r, c, std::move(e));
}

}  // namespace

TEST(Cyclotomic, RootsOfUnity) {
  EXPECT_TRUE(root_of_unity(1, 0).is_one());
  EXPECT_EQ(root_of_unity(2, 1), Cyclotomic(-1L));
  EXPECT_TRUE((root_of_unity(3, 1) * root_of_unity(3, 2)).is_one());
  EXPECT_EQ(root_of_unity(4, 1) * root_of_unity(4, 1), Cyclotomic(-1L));
  // zeta_6 = -zeta_3^2, seen across orders.
  EXPECT_EQ(root_of_unity(6, 1), -root_of_unity(3, 2));
  Cyclotomic sum;
  for (int k = 0; k < 5; ++k) sum += root_of_unity(5, k);
  EXPECT_TRUE(sum.is_zero());
}

TEST(Cyclotomic, PolynomialDegrees) {
  for (int n : {1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15}) {
    EXPECT_EQ(detail::cyclotomic_poly(n).size() - 1, static_cast<std::size_t>(detail::euler_phi(n))) << n;
  }
  EXPECT_EQ(detail::cyclotomic_poly(6), (std::vector<long>{1, -1, 1}));
}

TEST(Cyclotomic, FieldAxiomsRandom) {
  std::mt19937 rng(7);
  for (int order : {3, 4, 5, 12}) {
    for (int t = 0; t < 20; ++t) {
      const auto a = random_element(rng, order), b = random_element(rng, order), c = random_element(rng, order);
      EXPECT_EQ((a + b) * c, a * c + b * c);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ((a * b) * c, a * (b * c));
      if (!a.is_zero()) {
        EXPECT_TRUE((a * a.inverse()).is_one());
      }
    }
  }
}

TEST(Cyclotomic, EvaluateAndMixedOrders) {
  const auto z = root_of_unity(3, 1).evaluate();
  EXPECT_NEAR(z.real(), -0.5, 1e-12);
  EXPECT_NEAR(z.imag(), std::sqrt(3.0) / 2, 1e-12);
  const auto x = root_of_unity(3, 1) + root_of_unity(4, 1);
  EXPECT_EQ(x.order(), 12);
  EXPECT_EQ(x - root_of_unity(4, 1), root_of_unity(3, 1));
  EXPECT_THROW(Cyclotomic().inverse(), Error);
}

TEST(Matrix, KernelAndSolve) {
  const auto m = from_ints(2, 3, {1, 2, 3, 2, 4, 6});
  EXPECT_EQ(rank(m), 1u);
  const auto k = kernel_basis(m);
  EXPECT_EQ(k.cols(), 2u);
  EXPECT_TRUE((m * k).is_zero());

  const auto a = from_ints(2, 2, {2, 1, 1, 1});
  const auto x = solve(a, from_ints(2, 1, {3, 2}));
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(*x, from_ints(2, 1, {1, 1}));
  EXPECT_FALSE(solve(from_ints(2, 2, {1, 1, 1, 1}), from_ints(2, 1, {0, 1})).has_value());
  const auto inv = inverse(a);
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(*inv * a, Matrix::identity(2));
}

TEST(Matrix, RankInvariantUnderInvertibleMaps) {
  std::mt19937 rng(11);
  for (int t = 0; t < 10; ++t) {
    Matrix m(4, 5), p(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 5; ++j) m(i, j) = random_element(rng, 3) * Cyclotomic(static_cast<long>(j % 2));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) p(i, j) = i <= j ? random_element(rng, 5) : Cyclotomic();
    for (std::size_t i = 0; i < 4; ++i)
      if (p(i, i).is_zero()) p(i, i) = Cyclotomic(1L);
    EXPECT_EQ(rank(p * m), rank(m));
  }
}

TEST(Matrix, LeftInverseAndKron) {
  const auto b = from_ints(3, 2, {1, 0, 1, 1, 0, 1});
  EXPECT_EQ(left_inverse(b) * b, Matrix::identity(2));
  const auto a = from_ints(2, 2, {0, 1, 1, 0});
  const auto k = kron(a, Matrix::identity(2));
  EXPECT_EQ(k * k, Matrix::identity(4));
  EXPECT_EQ(k(0, 2), Cyclotomic(1L));
}

TEST(ExactEigen, RecoversCyclotomicSpectra) {
  // Companion matrix of x^2 + x + 1 has eigenvalues zeta_3, zeta_3^2.
  const auto c = from_ints(2, 2, {0, -1, 1, -1});
  const auto ev = exact_eigenvalues(c, 3);
  ASSERT_EQ(ev.size(), 2u);
  for (const auto& e : ev) EXPECT_TRUE((e * e * e).is_one());
  EXPECT_THROW(exact_eigenvalues(c, 1), Error);

  // Rational spectrum with a repeated root and non-integral entries.
  Matrix d(3, 3);
  d(0, 0) = Cyclotomic(Rational(1, 2));
  d(0, 1) = Cyclotomic(1L);
  d(1, 1) = Cyclotomic(Rational(1, 2));
  d(2, 2) = root_of_unity(4, 1);
  const auto ev2 = exact_eigenvalues(d);
  ASSERT_EQ(ev2.size(), 2u);
  EXPECT_EQ(ev2[0] * ev2[1], root_of_unity(4, 1) * Cyclotomic(Rational(1, 2)));
}
