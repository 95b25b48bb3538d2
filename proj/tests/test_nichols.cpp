#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace trideco;
using namespace fixtures;
using namespace oracles;

namespace {

std::vector<std::size_t> trimmed(std::vector<std::size_t> h) {
  while (h.size() > 1 && h.back() == 0) h.pop_back();
  return h;
}

}  // namespace

TEST(Symmetrizer, SmallCases) {
  Matrix c = scalar(root_of_unity(3, 1));
  EXPECT_EQ(quantum_symmetrizer(c, 1, 1), Matrix::identity(1));
  EXPECT_EQ(quantum_symmetrizer(c, 1, 2)(0, 0), Cyclotomic(1L) + root_of_unity(3, 1));
  EXPECT_TRUE(quantum_symmetrizer(c, 1, 3).is_zero());
}

TEST(Symmetrizer, MatchesPermutationSum) {
  const FDHopf s3 = s3_group_algebra();
  const DoubleTower t = tower(s3, fk3_over_s3(s3));
  const Matrix c = braiding(t.v, t.v);
  for (std::size_t n = 1; n <= 4; ++n)
    EXPECT_EQ(rank(quantum_symmetrizer(c, 3, n)), oracle_hilbert(c, 3, n).back()) << n;
}

TEST(Nichols, TaftLines) {
  for (std::size_t n = 2; n <= 5; ++n) {
    const FDHopf k = cyclic(n);
    const DoubleTower t = tower(k, line_over_cyclic(k, n));
    const NicholsAlgebra b = build_nichols(t.d.hopf, t.v, 12, true);
    EXPECT_EQ(trimmed(b.hilbert()), std::vector<std::size_t>(n, 1));
    ASSERT_TRUE(b.n_top);
    EXPECT_EQ(*b.n_top, n - 1);
    EXPECT_EQ(trimmed(b.hilbert()), trimmed(oracle_hilbert(b.c, 1, n))) << n;
  }
}

TEST(Nichols, FominKirillov) {
  const FDHopf s3 = s3_group_algebra();
  const DoubleTower t = tower(s3, fk3_over_s3(s3));
  const NicholsAlgebra b = build_nichols(t.d.hopf, t.v, 8, true);
  EXPECT_EQ(trimmed(b.hilbert()), (std::vector<std::size_t>{1, 3, 4, 3, 1}));
  EXPECT_EQ(b.total_dim(), 12u);
  EXPECT_TRUE(b.palindromic());
  EXPECT_EQ(trimmed(b.hilbert()), trimmed(oracle_hilbert(b.c, 3, 5)));
  const NicholsAlgebra bo = build_nichols(t.d.hopf, t.ov, 8, true);
  EXPECT_EQ(bo.hilbert(), b.hilbert());
}

TEST(Nichols, ZeroSpace) {
  const FDHopf k = cyclic(2);
  YDModule zero;
  zero.action.assign(2, Matrix(0, 0));
  const NicholsAlgebra b = build_nichols(k, zero, 4, true);
  EXPECT_EQ(b.total_dim(), 1u);
  EXPECT_EQ(*b.n_top, 0u);
}

TEST(Nichols, AssociativeAndGraded) {
  const FDHopf s3 = s3_group_algebra();
  const DoubleTower t = tower(s3, fk3_over_s3(s3));
  const NicholsAlgebra b = build_nichols(t.d.hopf, t.v, 8, true);
  const std::size_t top = *b.n_top;
  for (std::size_t p = 0; p <= top; ++p)
    for (std::size_t q = 0; p + q <= top; ++q)
      for (std::size_t r = 0; p + q + r <= top; ++r) {
        const Matrix lhs = b.mult_matrix(p + q, r) * kron(b.mult_matrix(p, q), Matrix::identity(b.dim(r)));
        const Matrix rhs = b.mult_matrix(p, q + r) * kron(Matrix::identity(b.dim(p)), b.mult_matrix(q, r));
        EXPECT_EQ(lhs, rhs) << p << q << r;
      }
  // Words project consistently: x_i x_j in B^2 equals the product of degree-one generators.
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      EXPECT_EQ(b.project_word(2, i * 3 + j), b.multiply_basis(1, i, 1, j));
  // Relations of the Fomin-Kirillov algebra: x_t^2 = 0.
  for (std::size_t i = 0; i < 3; ++i)
    EXPECT_TRUE(std::all_of(b.project_word(2, i * 4).begin(), b.project_word(2, i * 4).end(),
                            [](const Cyclotomic& x) { return x.is_zero(); }));
}

TEST(Nichols, Coalgebra) {
  const FDHopf k = cyclic(5);
  const DoubleTower t = tower(k, line_over_cyclic(k, 5));
  const NicholsAlgebra b = build_nichols(t.d.hopf, t.v, 8, true);
  // Delta_{1,1}(x^2) = (1 + q) x (x) x.
  const Vector x2 = b.project_word(2, 0);
  const Matrix d11 = b.comult_component(1, 1);
  EXPECT_EQ((d11 * x2)[0], Cyclotomic(1L) + root_of_unity(5, 1));

  const FDHopf s3 = s3_group_algebra();
  const DoubleTower f = tower(s3, fk3_over_s3(s3));
  const NicholsAlgebra fb = build_nichols(f.d.hopf, f.v, 8, true);
  const std::size_t top = *fb.n_top;
  for (std::size_t n = 0; n <= top; ++n) {
    EXPECT_EQ(fb.comult_component(0, n), Matrix::identity(fb.dim(n)));
    EXPECT_EQ(fb.comult_component(n, 0), Matrix::identity(fb.dim(n)));
  }
  for (std::size_t p = 0; p <= top; ++p)
    for (std::size_t q = 0; p + q <= top; ++q)
      for (std::size_t r = 0; p + q + r <= top; ++r) {
        const Matrix lhs = kron(fb.comult_component(p, q), Matrix::identity(fb.dim(r))) * fb.comult_component(p + q, r);
        const Matrix rhs = kron(Matrix::identity(fb.dim(p)), fb.comult_component(q, r)) * fb.comult_component(p, q + r);
        EXPECT_EQ(lhs, rhs) << p << q << r;
      }
  // m (S (x) id) Delta vanishes in positive degree.
  for (std::size_t n = 1; n <= top; ++n) {
    Matrix total(fb.dim(n), fb.dim(n));
    for (std::size_t p = 0; p <= n; ++p)
      total += fb.mult_matrix(p, n - p) * kron(fb.antipode_component(p), Matrix::identity(fb.dim(n - p))) *
               fb.comult_component(p, n - p);
    EXPECT_TRUE(total.is_zero()) << n;
  }
}

TEST(Nichols, TopData) {
  const FDHopf k = cyclic(3);
  const DoubleTower t = tower(k, line_over_cyclic(k, 3));
  const NicholsAlgebra b = build_nichols(t.d.hopf, t.v, 8, true);
  const NicholsAlgebra bo = build_nichols(t.d.hopf, t.ov, 8, true);
  const TopData top = top_data(t.d.hopf, b), otop = top_data(t.d.hopf, bo);
  EXPECT_EQ(top.n_top, 2u);
  // lambda_V lambda_oV = eps.
  const FDHopf& h = t.d.hopf;
  for (std::size_t a = 0; a < h.dim; ++a) {
    Cyclotomic prod;
    for (const auto& [key, c] : h.comult[a]) prod += c * top.lambda[key[0]](0, 0) * otop.lambda[key[1]](0, 0);
    EXPECT_EQ(prod, h.counit[a]);
  }
  // The degree-n character of B(oV) is the S-dual of that of B(V).
  for (std::size_t n = 0; n <= 2; ++n) {
    const Vector chi = b.h_character(n), ochi = bo.h_character(n);
    for (std::size_t a = 0; a < h.dim; ++a) {
      Cyclotomic dual;
      for (const auto& [s, cs] : h.S(basis_elem(a))) dual += cs * chi[s];
      EXPECT_EQ(ochi[a], dual);
    }
  }

  const FDHopf s3 = s3_group_algebra();
  const DoubleTower f = tower(s3, fk3_over_s3(s3));
  const TopData ft = top_data(f.d.hopf, build_nichols(f.d.hopf, f.v, 8, true));
  EXPECT_EQ(ft.n_top, 4u);
  EXPECT_TRUE(is_grouplike(f.d.hopf, ft.g_top));
}

TEST(Nichols, DirectSumDimensions) {
  const FDHopf k = cyclic(3);
  const DoubleTower t = tower(k, line_over_cyclic(k, 3));
  const YDModule sum = direct_sum(t.v, t.ov);
  const NicholsAlgebra b = build_nichols(t.d.hopf, sum, 8, true);
  EXPECT_EQ(b.total_dim(), 9u);
  EXPECT_EQ(trimmed(b.hilbert()), (std::vector<std::size_t>{1, 2, 3, 2, 1}));
}

TEST(Nichols, BosonizationOfExteriorLine) {
  const FDHopf k = cyclic(2);
  const YDModule v = line_over_cyclic(k, 2);
  const NicholsAlgebra b = build_nichols(k, v, 4, true);
  const FDHopf boson = bosonization(to_braided_data(b), k);
  EXPECT_EQ(boson.dim, 4u);
  EXPECT_FALSE(boson.axiom_failure());
  EXPECT_EQ(grouplikes(boson).size(), 2u);
}

TEST(Nichols, DegreeBudget) {
  // q = 1 on a line gives an infinite symmetric algebra.
  const FDHopf k = cyclic(2);
  std::vector<Matrix> act(2, Matrix::identity(1));
  const YDModule v = yd_over_group(k, act, {0});
  try {
    (void)build_nichols(k, v, 5, true);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "DegreeBudgetExceeded");
  }
}
