#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "trideco/triangular.hpp"

using namespace trideco;
using namespace fixtures;

namespace {

TriangularHopf taft_u(std::size_t n) {
  const FDHopf k = cyclic(n);
  const DoubleTower t = tower(k, line_over_cyclic(k, n));
  return build_u(t.d, t.v);
}

std::vector<std::size_t> all_indices(const TriangularHopf& u) {
  std::vector<std::size_t> v(u.dim());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

TEST(Triangular, Dimensions) {
  EXPECT_EQ(taft_u(2).dim(), 16u);
  EXPECT_EQ(taft_u(3).dim(), 81u);
  const QuasitriangularHopf q = qt_abelian({{2}}, 3);
  const TriangularHopf u = build_u(q, yd_from_qt(q, abelian_module({{2}}, 3)));
  EXPECT_EQ(u.dim(), 27u);
}

TEST(Triangular, ZeroSpaceGivesBase) {
  const FDHopf k = cyclic(2);
  const QuasitriangularHopf d = drinfeld_double(k);
  YDModule zero;
  zero.action.assign(d.hopf.dim, Matrix(0, 0));
  const TriangularHopf u = build_u(d, zero);
  EXPECT_EQ(u.dim(), 4u);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) EXPECT_EQ(u.mult_basis(a, b), d.hopf.mul_basis(a, b));
}

TEST(Triangular, SweedlerStraightening) {
  const TriangularHopf u = taft_u(2);
  const Elem& yx = u.straighten_yx(0, 0);
  // yx = -xy + 1 - K with K a group-like of H.
  Elem xy = u.multiply(u.x(0), u.y(0));
  Elem rest = yx;
  add_scaled(rest, xy, Cyclotomic(1L));
  add_scaled(rest, u.unit(), Cyclotomic(-1L));
  Elem k;
  for (const auto& [t, c] : rest) {
    const Triple tr = u.triple(t);
    ASSERT_EQ(tr.minus, 0u);
    ASSERT_EQ(tr.plus, 0u);
    accumulate(k, tr.h, -c);
  }
  EXPECT_TRUE(is_grouplike(u.H(), k));
  EXPECT_NE(k, u.H().unit);
  for (const auto& [t, c] : yx) EXPECT_EQ(u.degree(t), 0);
}

TEST(Triangular, TrivialBraidingCommutes) {
  // R = 1 (x) 1 on kZ/2 with the trivial module: the H-terms cancel and yx = xy.
  const FDHopf k = cyclic(2);
  QuasitriangularHopf q{k, k.unit_tensor(2)};
  const YDModule v = yd_from_qt(q, {Matrix::identity(1), Matrix::identity(1)});
  const Straightening st = straighten_generators(k, v, dual_yd(q, v), compute_pairing(q), 0, 0);
  EXPECT_EQ(st.xy, Matrix::identity(1));
  Cyclotomic total = st.scalar;
  for (const auto& [g, c] : st.h_term) total += c;
  EXPECT_TRUE(total.is_zero());
}

TEST(Triangular, SweedlerAlgebraAxioms) {
  const TriangularHopf u = taft_u(2);
  const auto assoc = check_associativity(u);
  EXPECT_TRUE(assoc.ok()) << assoc.first_failure;
  EXPECT_EQ(assoc.checked, 16u * 16u * 16u);
  EXPECT_TRUE(check_grading(u, all_indices(u)).ok());
  for (std::size_t t = 0; t < u.dim(); ++t) {
    EXPECT_EQ(u.multiply(u.unit(), Elem{{t, Cyclotomic(1L)}}), (Elem{{t, Cyclotomic(1L)}}));
    EXPECT_EQ(u.multiply(Elem{{t, Cyclotomic(1L)}}, u.unit()), (Elem{{t, Cyclotomic(1L)}}));
  }
  const auto hopf = check_hopf(u, all_indices(u));
  EXPECT_TRUE(hopf.ok()) << hopf.first_failure;
}

TEST(Triangular, TaftThreeAxioms) {
  const TriangularHopf u = taft_u(3);
  const auto assoc = check_associativity(u, 50, 400);
  EXPECT_TRUE(assoc.ok()) << assoc.first_failure;
  EXPECT_TRUE(check_grading(u, all_indices(u)).ok());
  const auto hopf = check_hopf(u, all_indices(u));
  EXPECT_TRUE(hopf.ok()) << hopf.first_failure;
}

TEST(Triangular, SmallQuantumSl2) {
  const QuasitriangularHopf q = qt_abelian({{2}}, 3);
  EXPECT_TRUE(verify_qt(q).ok());
  const TriangularHopf u = build_u(q, yd_from_qt(q, abelian_module({{2}}, 3)));
  const auto assoc = check_associativity(u);
  EXPECT_TRUE(assoc.ok()) << assoc.first_failure;
  const auto hopf = check_hopf(u, all_indices(u));
  EXPECT_TRUE(hopf.ok()) << hopf.first_failure;
}

TEST(Triangular, QtAbelian) {
  EXPECT_EQ(qt_abelian({{0}}, 1).hopf.dim, 1u);
  EXPECT_TRUE(verify_qt(qt_abelian({{0}}, 1)).ok());
  EXPECT_TRUE(verify_qt(qt_abelian({{1}}, 2)).ok());
  const QuasitriangularHopf sl3 = qt_abelian({{2, -1}, {-1, 2}}, 5);
  EXPECT_EQ(sl3.hopf.dim, 25u);
  EXPECT_TRUE(verify_qt(sl3).ok());
  // The Cartan determinant 3 makes the bicharacter degenerate mod 3.
  EXPECT_FALSE(verify_qt(qt_abelian({{2, -1}, {-1, 2}}, 3)).ok());
}

TEST(Triangular, NegativeBorelIsBosonization) {
  const TriangularHopf u = taft_u(3);
  const FDHopf boson = bosonization(to_braided_data(u.BV), u.H());
  const std::size_t nh = u.H().dim;
  for (std::size_t a = 0; a < boson.dim; ++a)
    for (std::size_t b = 0; b < boson.dim; ++b) {
      Elem expected;
      for (const auto& [k, c] : boson.mul_basis(a, b)) accumulate(expected, u.index(k / nh, k % nh, 0), c);
      EXPECT_EQ(u.mult_basis(u.index(a / nh, a % nh, 0), u.index(b / nh, b % nh, 0)), expected);
    }
}

TEST(Triangular, CoidealIdentity) {
  const FDHopf k = cyclic(2);
  QuasitriangularHopf trivial{k, k.unit_tensor(2)};
  EXPECT_TRUE(coideal_check(trivial, yd_from_qt(trivial, {Matrix::identity(1), Matrix::identity(1)})).ok());
  for (std::size_t n : {2u, 3u}) {
    const FDHopf kn = cyclic(n);
    const DoubleTower t = tower(kn, line_over_cyclic(kn, n));
    const CoidealReport rep = coideal_check(t.d, t.v);
    EXPECT_TRUE(rep.ok()) << n << " coideal " << rep.coideal_failures << " aux " << rep.auxiliary_failures;
    EXPECT_EQ(rep.pairs, 1u);
  }
  const QuasitriangularHopf q = qt_abelian({{2}}, 3);
  EXPECT_TRUE(coideal_check(q, yd_from_qt(q, abelian_module({{2}}, 3))).ok());
}

TEST(Triangular, CoidealIdentityOverS3) {
  const FDHopf s3 = s3_group_algebra();
  const DoubleTower t = tower(s3, fk3_over_s3(s3));
  const CoidealReport rep = coideal_check(t.d, t.v);
  EXPECT_EQ(rep.pairs, 9u);
  EXPECT_TRUE(rep.ok()) << rep.coideal_failures << " " << rep.auxiliary_failures;
}

TEST(Triangular, FominKirillovDouble) {
  const FDHopf s3 = s3_group_algebra();
  const DoubleTower t = tower(s3, fk3_over_s3(s3));
  const TriangularHopf u = build_u(t.d, t.v);
  // Drinfeld double of B(V) # kS3: (12 * 6)^2.
  EXPECT_EQ(u.dim(), 5184u);
  const auto assoc = check_associativity(u, 0, 60);
  EXPECT_TRUE(assoc.ok()) << assoc.first_failure;
}
