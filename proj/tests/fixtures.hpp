#pragma once

// Hand-built inputs shared by the unit tests.

#include "trideco/nichols.hpp"

namespace fixtures {

using namespace trideco;

inline Matrix scalar(const Cyclotomic& c) {
  Matrix m(1, 1);
  m(0, 0) = c;
  return m;
}

/// Z/n with field order n.
inline FDHopf cyclic(std::size_t n) {
  FDHopf k = cyclic_group_algebra(n);
  k.field_order = static_cast<int>(n);
  return k;
}

/// 1-dim YD module over kZ/n: g^a . x = zeta_n^(e a), x -> g (x) x.
inline YDModule line_over_cyclic(const FDHopf& k, std::size_t n, long e = 1) {
  std::vector<Matrix> act;
  for (std::size_t a = 0; a < n; ++a) act.push_back(scalar(root_of_unity(static_cast<int>(n), e * static_cast<long>(a))));
  return yd_over_group(k, act, {n > 1 ? 1u : 0u});
}

inline int sign_of_s3(std::size_t g) { return (g >= 1 && g <= 3) ? -1 : 1; }

/// The 3-dim module over kS3 on transpositions: g . x_t = sgn(g) x_{g t g^-1}.
inline YDModule fk3_over_s3(const FDHopf& s3) {
  const std::vector<std::size_t> trans = {1, 2, 3};
  std::vector<Matrix> act;
  for (std::size_t g = 0; g < 6; ++g) {
    Matrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
      const std::size_t t = trans[i];
      const Elem conj = s3.mul(s3.mul_basis(g, t), s3.S(basis_elem(g)));
      const std::size_t target = conj.begin()->first;
      const std::size_t j = static_cast<std::size_t>(std::find(trans.begin(), trans.end(), target) - trans.begin());
      m(j, i) = Cyclotomic(static_cast<long>(sign_of_s3(g)));
    }
    act.push_back(m);
  }
  return yd_over_group(s3, act, trans);
}

/// The 2-dim module over kS3 on the 3-cycles with conjugation action.
inline YDModule rotations_over_s3(const FDHopf& s3) {
  const std::vector<std::size_t> rots = {4, 5};
  std::vector<Matrix> act;
  for (std::size_t g = 0; g < 6; ++g) {
    Matrix m(2, 2);
    for (std::size_t i = 0; i < 2; ++i) {
      const Elem conj = s3.mul(s3.mul_basis(g, rots[i]), s3.S(basis_elem(g)));
      const std::size_t j = conj.begin()->first == rots[0] ? 0 : 1;
      m(j, i) = Cyclotomic(1L);
    }
    act.push_back(m);
  }
  return yd_over_group(s3, act, rots);
}

/// The tower over a double: D(K), V with the coaction induced by R, and oV.
struct DoubleTower {
  QuasitriangularHopf d;
  YDModule v;
  YDModule ov;
};

inline DoubleTower tower(const FDHopf& k, const YDModule& yd) {
  DoubleTower t{drinfeld_double(k), {}, {}};
  t.d.hopf.field_order = k.field_order;
  t.v = yd_from_qt(t.d, to_double_module(k, yd));
  t.ov = dual_yd(t.d, t.v);
  return t;
}

}  // namespace fixtures
