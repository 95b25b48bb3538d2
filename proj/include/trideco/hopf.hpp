#pragma once

// Finite-dimensional Hopf algebras given by structure constants.
//
// Elements are sparse maps from basis index to coefficient; elements of
// tensor powers are sparse maps from index tuples.

#include <boost/container/small_vector.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trideco/algebra_tools.hpp"

namespace trideco {

using Elem = std::map<std::size_t, Cyclotomic>;
using Key = boost::container::small_vector<std::size_t, 4>;
using Tensor = std::map<Key, Cyclotomic>;

inline void accumulate(Elem& e, std::size_t i, const Cyclotomic& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = e.try_emplace(i, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) e.erase(it);
  }
}

inline void accumulate(Tensor& t, const Key& k, const Cyclotomic& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = t.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
  }
}

inline void add_scaled(Elem& dst, const Elem& src, const Cyclotomic& c) {
  if (c.is_zero()) return;
  for (const auto& [i, x] : src) accumulate(dst, i, x * c);
}

inline void add_scaled(Tensor& dst, const Tensor& src, const Cyclotomic& c) {
  if (c.is_zero()) return;
  for (const auto& [k, x] : src) accumulate(dst, k, x * c);
}

inline Elem basis_elem(std::size_t i) { return Elem{{i, Cyclotomic(1L)}}; }

inline Vector to_dense(const Elem& e, std::size_t dim) {
  Vector v(dim);
  for (const auto& [i, c] : e) v[i] = c;
  return v;
}

inline Elem from_dense(const Vector& v) {
  Elem e;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) e.emplace(i, v[i]);
  return e;
}

inline Elem apply_matrix(const Matrix& m, const Elem& e) {
  Elem out;
  for (const auto& [j, c] : e)
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) accumulate(out, i, m(i, j) * c);
  return out;
}

inline std::string describe(const Tensor& t) {
  std::string s;
  for (const auto& [k, c] : t) {
    s += (s.empty() ? "" : " + ") + c.to_string() + "*(";
    for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
    s += ")";
  }
  return s.empty() ? "0" : s;
}

class FDHopf {
 public:
  std::size_t dim = 0;
  std::vector<std::string> labels;
  std::vector<Elem> mult;       // mult[a * dim + b] = e_a e_b
  Elem unit;
  std::vector<Tensor> comult;   // comult[a] = Delta(e_a), keys of length 2
  Vector counit;
  Matrix antipode;              // column a holds S(e_a)
  Matrix antipode_inv;
  int field_order = 1;

  const Elem& mul_basis(std::size_t a, std::size_t b) const { return mult[a * dim + b]; }

  Elem mul(const Elem& x, const Elem& y) const {
    Elem out;
    for (const auto& [a, ca] : x)
      for (const auto& [b, cb] : y) add_scaled(out, mul_basis(a, b), ca * cb);
    return out;
  }

  Tensor delta(const Elem& x) const {
    Tensor out;
    for (const auto& [a, c] : x) add_scaled(out, comult[a], c);
    return out;
  }

  Cyclotomic eps(const Elem& x) const {
    Cyclotomic s;
    for (const auto& [a, c] : x) s += counit[a] * c;
    return s;
  }

  Elem S(const Elem& x) const { return apply_matrix(antipode, x); }
  Elem S_inv(const Elem& x) const { return apply_matrix(antipode_inv, x); }

  /// Matrix of left multiplication by e_a.
  Matrix left_matrix(std::size_t a) const {
    Matrix m(dim, dim);
    for (std::size_t b = 0; b < dim; ++b)
      for (const auto& [k, c] : mul_basis(a, b)) m(k, b) = c;
    return m;
  }

  Algebra as_algebra() const {
    Algebra alg;
    alg.dim = dim;
    alg.field_order = field_order;
    alg.unit = to_dense(unit, dim);
    for (std::size_t a = 0; a < dim; ++a) alg.left.push_back(left_matrix(a));
    return alg;
  }

  /// Legwise product of two elements of the same tensor power.
  Tensor tensor_mul(const Tensor& x, const Tensor& y) const {
    Tensor out;
    for (const auto& [kx, cx] : x)
      for (const auto& [ky, cy] : y) {
        Tensor partial{{Key{}, cx * cy}};
        for (std::size_t leg = 0; leg < kx.size(); ++leg) {
          Tensor next;
          const Elem& p = mul_basis(kx[leg], ky[leg]);
          for (const auto& [k, c] : partial)
            for (const auto& [i, ci] : p) {
              Key nk = k;
              nk.push_back(i);
              accumulate(next, nk, c * ci);
            }
          partial = std::move(next);
        }
        add_scaled(out, partial, Cyclotomic(1L));
      }
    return out;
  }

  /// Applies Delta to one leg, which becomes two adjacent legs.
  Tensor delta_at(const Tensor& t, std::size_t leg) const {
    Tensor out;
    for (const auto& [k, c] : t)
      for (const auto& [dk, dc] : comult[k[leg]]) {
        Key nk;
        for (std::size_t i = 0; i < k.size(); ++i) {
          if (i == leg) {
            nk.push_back(dk[0]);
            nk.push_back(dk[1]);
          } else {
            nk.push_back(k[i]);
          }
        }
        accumulate(out, nk, c * dc);
      }
    return out;
  }

  /// Applies a linear map (given as a matrix on the basis) to one leg.
  Tensor apply_at(const Tensor& t, std::size_t leg, const Matrix& m) const {
    Tensor out;
    for (const auto& [k, c] : t)
      for (std::size_t i = 0; i < m.rows(); ++i) {
        const Cyclotomic& x = m(i, k[leg]);
        if (x.is_zero()) continue;
        Key nk = k;
        nk[leg] = i;
        accumulate(out, nk, c * x);
      }
    return out;
  }

  /// Applies the counit to one leg, removing it.
  Tensor counit_at(const Tensor& t, std::size_t leg) const {
    Tensor out;
    for (const auto& [k, c] : t) {
      if (counit[k[leg]].is_zero()) continue;
      Key nk;
      for (std::size_t i = 0; i < k.size(); ++i)
        if (i != leg) nk.push_back(k[i]);
      accumulate(out, nk, c * counit[k[leg]]);
    }
    return out;
  }

  /// Swaps two legs.
  static Tensor swap_legs(const Tensor& t, std::size_t i, std::size_t j) {
    Tensor out;
    for (const auto& [k, c] : t) {
      Key nk = k;
      std::swap(nk[i], nk[j]);
      accumulate(out, nk, c);
    }
    return out;
  }

  /// Places the legs of t at the given positions of an arity-n tensor and
  /// fills the remaining legs with the unit.
  Tensor embed_legs(const Tensor& t, std::size_t arity, const std::vector<std::size_t>& positions) const {
    Tensor out;
    for (const auto& [k, c] : t) {
      Tensor partial{{Key(arity, 0), c}};
      for (std::size_t p = 0; p < arity; ++p) {
        auto pos = std::find(positions.begin(), positions.end(), p);
        Tensor next;
        for (const auto& [pk, pc] : partial) {
          if (pos != positions.end()) {
            Key nk = pk;
            nk[p] = k[static_cast<std::size_t>(pos - positions.begin())];
            accumulate(next, nk, pc);
          } else {
            for (const auto& [u, uc] : unit) {
              Key nk = pk;
              nk[p] = u;
              accumulate(next, nk, pc * uc);
            }
          }
        }
        partial = std::move(next);
      }
      add_scaled(out, partial, Cyclotomic(1L));
    }
    return out;
  }

  Tensor unit_tensor(std::size_t arity) const { return embed_legs(Tensor{{Key{}, Cyclotomic(1L)}}, arity, {}); }

  /// Product of the legs of a tensor, left to right.
  Elem multiply_legs(const Tensor& t) const {
    Elem out;
    for (const auto& [k, c] : t) {
      Elem acc = basis_elem(k[0]);
      for (std::size_t i = 1; i < k.size(); ++i) acc = mul(acc, basis_elem(k[i]));
      add_scaled(out, acc, c);
    }
    return out;
  }

  /// First violated Hopf axiom, checked exhaustively on basis tuples.
  std::optional<std::string> axiom_failure() const {
    if (mult.size() != dim * dim || comult.size() != dim || counit.size() != dim || antipode.rows() != dim ||
        antipode_inv.rows() != dim)
      return "structure tensors have the wrong shape";
    for (std::size_t a = 0; a < dim; ++a) {
      const Elem ea = basis_elem(a);
      if (mul(unit, ea) != ea || mul(ea, unit) != ea) return "unit law fails at " + std::to_string(a);
    }
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b) {
        const Elem& ab = mul_basis(a, b);
        for (std::size_t c = 0; c < dim; ++c)
          if (mul(ab, basis_elem(c)) != mul(basis_elem(a), mul_basis(b, c)))
            return "associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                   std::to_string(c) + ")";
      }
    for (std::size_t a = 0; a < dim; ++a) {
      if (delta_at(comult[a], 0) != delta_at(comult[a], 1)) return "coassociativity fails at " + std::to_string(a);
      Tensor left = counit_at(comult[a], 0), right = counit_at(comult[a], 1);
      const Tensor ea{{Key{a}, Cyclotomic(1L)}};
      if (left != ea || right != ea) return "counit law fails at " + std::to_string(a);
    }
    if (delta(unit) != unit_tensor(2)) return "Delta(1) != 1 (x) 1";
    if (!eps(unit).is_one()) return "eps(1) != 1";
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b) {
        if (delta(mul_basis(a, b)) != tensor_mul(comult[a], comult[b]))
          return "Delta is not multiplicative at (" + std::to_string(a) + "," + std::to_string(b) + ")";
        if (eps(mul_basis(a, b)) != counit[a] * counit[b])
          return "eps is not multiplicative at (" + std::to_string(a) + "," + std::to_string(b) + ")";
      }
    for (std::size_t a = 0; a < dim; ++a) {
      Elem expect;
      add_scaled(expect, unit, counit[a]);
      if (multiply_legs(apply_at(comult[a], 0, antipode)) != expect ||
          multiply_legs(apply_at(comult[a], 1, antipode)) != expect)
        return "antipode axiom fails at " + std::to_string(a);
    }
    if (antipode_inv * antipode != Matrix::identity(dim) || antipode * antipode_inv != Matrix::identity(dim))
      return "antipode_inv is not the inverse of the antipode";
    return std::nullopt;
  }

  void validate() const {
    if (auto f = axiom_failure()) throw invariant_error("HopfAxiom", *f);
  }
};

/// Group algebra from a Cayley table (table[a][b] = index of ab).
inline FDHopf group_algebra(const std::vector<std::vector<std::size_t>>& table,
                            const std::vector<std::size_t>& inverse_of, std::size_t identity,
                            std::vector<std::string> labels = {}) {
  const std::size_t n = table.size();
  auto fail = [](const std::string& why) { return config_error("NotAGroup", why); };
  if (n == 0 || identity >= n || inverse_of.size() != n) throw fail("empty table or bad identity/inverse list");
  for (const auto& row : table) {
    if (row.size() != n) throw fail("table is not square");
    for (auto x : row)
      if (x >= n) throw fail("table entry out of range");
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (table[identity][a] != a || table[a][identity] != a) throw fail("identity law fails");
    if (inverse_of[a] >= n || table[a][inverse_of[a]] != identity || table[inverse_of[a]][a] != identity)
      throw fail("inverse law fails at " + std::to_string(a));
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]]) throw fail("associativity fails");

  FDHopf h;
  h.dim = n;
  if (labels.size() != n) {
    labels.clear();
    for (std::size_t a = 0; a < n; ++a) labels.push_back("g" + std::to_string(a));
  }
  h.labels = std::move(labels);
  h.mult.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) h.mult[a * n + b] = basis_elem(table[a][b]);
  h.unit = basis_elem(identity);
  h.comult.resize(n);
  for (std::size_t a = 0; a < n; ++a) h.comult[a] = Tensor{{Key{a, a}, Cyclotomic(1L)}};
  h.counit.assign(n, Cyclotomic(1L));
  h.antipode = Matrix(n, n);
  for (std::size_t a = 0; a < n; ++a) h.antipode(inverse_of[a], a) = Cyclotomic(1L);
  h.antipode_inv = h.antipode;
  return h;
}

/// Cyclic group Z/n as a Cayley table.
inline FDHopf cyclic_group_algebra(std::size_t n) {
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  std::vector<std::size_t> inv(n);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    inv[a] = (n - a) % n;
    labels.push_back("g^" + std::to_string(a));
  }
  return group_algebra(t, inv, 0, labels);
}

/// Dual Hopf algebra on the dual basis f_i. With op (resp. cop) the
/// multiplication (resp. comultiplication) is reversed.
inline FDHopf dual_hopf(const FDHopf& k, bool op = false, bool cop = false) {
  const std::size_t n = k.dim;
  FDHopf d;
  d.dim = n;
  d.field_order = k.field_order;
  for (const auto& l : k.labels) d.labels.push_back("f[" + l + "]");
  d.mult.resize(n * n);
  for (std::size_t c = 0; c < n; ++c)
    for (const auto& [key, x] : k.comult[c]) {
      const std::size_t a = op ? key[1] : key[0], b = op ? key[0] : key[1];
      accumulate(d.mult[a * n + b], c, x);
    }
  d.comult.resize(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (const auto& [c, x] : k.mul_basis(a, b)) accumulate(d.comult[c], cop ? Key{b, a} : Key{a, b}, x);
  d.unit = from_dense(k.counit);
  d.counit = to_dense(k.unit, n);
  if (op != cop) {
    d.antipode = k.antipode_inv.transpose();
    d.antipode_inv = k.antipode.transpose();
  } else {
    d.antipode = k.antipode.transpose();
    d.antipode_inv = k.antipode_inv.transpose();
  }
  return d;
}

class QuasitriangularHopf {
 public:
  FDHopf hopf;
  Tensor R;  // keys of length 2

  /// Coefficient matrix C with R = sum C(i, j) e_i (x) e_j.
  Matrix r_matrix() const {
    Matrix c(hopf.dim, hopf.dim);
    for (const auto& [k, x] : R) c(k[0], k[1]) = x;
    return c;
  }
};

/// Drinfeld double on the basis a_i (x) f_j, index i * dim + j.
inline QuasitriangularHopf drinfeld_double(const FDHopf& k) {
  const std::size_t n = k.dim, dd = n * n;
  auto idx = [n](std::size_t i, std::size_t j) { return i * n + j; };

  // Delta(f_j) in K*: coefficient of f_x (x) f_y is the e_j-coefficient of e_x e_y.
  std::vector<Tensor> dual_comult(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (const auto& [j, c] : k.mul_basis(x, y)) accumulate(dual_comult[j], Key{x, y}, c);
  // Convolution product f_l f_y in K*.
  std::vector<Elem> dual_mult(n * n);
  for (std::size_t m = 0; m < n; ++m)
    for (const auto& [key, c] : k.comult[m]) accumulate(dual_mult[key[0] * n + key[1]], m, c);

  // sandwich[(p * n + r) * n + j][y] = e_j-coefficient of e_p e_y S(e_r).
  std::vector<Elem> sandwich(n * n * n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t r = 0; r < n; ++r) {
      const Elem sr = k.S(basis_elem(r));
      for (std::size_t y = 0; y < n; ++y) {
        const Elem v = k.mul(k.mul_basis(p, y), sr);
        for (const auto& [j, c] : v) accumulate(sandwich[(p * n + r) * n + j], y, c);
      }
    }

  std::vector<Tensor> delta2(n);
  for (std::size_t a = 0; a < n; ++a) delta2[a] = k.delta_at(k.comult[a], 1);

  FDHopf d;
  d.dim = dd;
  d.field_order = k.field_order;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d.labels.push_back(k.labels[i] + "#f[" + k.labels[j] + "]");

  // (a_i f_j)(a_k f_l) = sum <f_j1, a_k1><f_j3, S(a_k3)> a_i a_k2 (x) f_l f_j2.
  d.mult.resize(dd * dd);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t kk = 0; kk < n; ++kk)
        for (std::size_t l = 0; l < n; ++l) {
          Elem& out = d.mult[idx(i, j) * dd + idx(kk, l)];
          for (const auto& [key, c] : delta2[kk]) {
            const std::size_t p = key[0], q = key[1], r = key[2];
            const Elem& weights = sandwich[(p * n + r) * n + j];
            if (weights.empty()) continue;
            const Elem& aq = k.mul_basis(i, q);
            for (const auto& [y, w] : weights)
              for (const auto& [u, cu] : aq)
                for (const auto& [v, cv] : dual_mult[l * n + y]) accumulate(out, idx(u, v), c * w * cu * cv);
          }
        }

  d.unit.clear();
  for (const auto& [u, cu] : k.unit)
    for (std::size_t v = 0; v < n; ++v)
      if (!k.counit[v].is_zero()) accumulate(d.unit, idx(u, v), cu * k.counit[v]);

  d.comult.resize(dd);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [ka, ca] : k.comult[i])
        for (const auto& [kf, cf] : dual_comult[j])
          accumulate(d.comult[idx(i, j)], Key{idx(ka[0], kf[0]), idx(ka[1], kf[1])}, ca * cf);

  d.counit.assign(dd, Cyclotomic());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto it = k.unit.find(j);
      if (it != k.unit.end()) d.counit[idx(i, j)] = k.counit[i] * it->second;
    }

  // S(a (x) f) = (1 (x) S_{K*}^{-1}(f)) (S_K(a) (x) eps); S_{K*}^{-1}(f_j) = sum_m S^{-1}(j, m) f_m.
  d.antipode = Matrix(dd, dd);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Elem left, right;
      for (const auto& [u, cu] : k.unit)
        for (std::size_t m = 0; m < n; ++m)
          if (!k.antipode_inv(j, m).is_zero()) accumulate(left, idx(u, m), cu * k.antipode_inv(j, m));
      for (const auto& [s, cs] : k.S(basis_elem(i)))
        for (std::size_t v = 0; v < n; ++v)
          if (!k.counit[v].is_zero()) accumulate(right, idx(s, v), cs * k.counit[v]);
      for (const auto& [t, ct] : d.mul(left, right)) d.antipode(t, idx(i, j)) = ct;
    }
  auto inv = inverse(d.antipode);
  if (!inv) throw invariant_error("HopfAxiom", "antipode of the double is not invertible");
  d.antipode_inv = *inv;

  // R = sum_i (1 (x) f_i) (x) (a_i (x) eps).
  Tensor r;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [u, cu] : k.unit)
      for (std::size_t v = 0; v < n; ++v)
        if (!k.counit[v].is_zero()) accumulate(r, Key{idx(u, i), idx(i, v)}, cu * k.counit[v]);

  return QuasitriangularHopf{std::move(d), std::move(r)};
}

struct AxiomStatus {
  std::string name;
  bool passed = true;
  std::optional<std::size_t> first_failing;  // basis index, when the axiom is indexed
  std::string detail;
};

struct QtReport {
  std::vector<AxiomStatus> axioms;
  bool ok() const {
    for (const auto& a : axioms)
      if (!a.passed) return false;
    return true;
  }
  std::string summary() const {
    std::string s;
    for (const auto& a : axioms)
      if (!a.passed)
        s += a.name + (a.first_failing ? " at " + std::to_string(*a.first_failing) : "") + "; ";
    return s.empty() ? "all axioms hold" : s;
  }
};

/// Checks every quasitriangular axiom exactly; failures carry the first
/// failing basis index where the axiom is quantified over basis elements.
inline QtReport verify_qt(const QuasitriangularHopf& q) {
  const FDHopf& h = q.hopf;
  QtReport rep;
  const Tensor r13 = h.embed_legs(q.R, 3, {0, 2});
  const Tensor r23 = h.embed_legs(q.R, 3, {1, 2});
  const Tensor r12 = h.embed_legs(q.R, 3, {0, 1});
  rep.axioms.push_back({"(Delta x id)R = R13 R23", h.delta_at(q.R, 0) == h.tensor_mul(r13, r23), {}, {}});
  rep.axioms.push_back({"(id x Delta)R = R13 R12", h.delta_at(q.R, 1) == h.tensor_mul(r13, r12), {}, {}});
  rep.axioms.push_back({"(eps x id)R = 1", h.counit_at(q.R, 0) == h.unit_tensor(1), {}, {}});
  rep.axioms.push_back({"(id x eps)R = 1", h.counit_at(q.R, 1) == h.unit_tensor(1), {}, {}});

  AxiomStatus cop{"Delta^cop(h) R = R Delta(h)", true, {}, {}};
  for (std::size_t a = 0; a < h.dim && cop.passed; ++a) {
    const Tensor lhs = h.tensor_mul(FDHopf::swap_legs(h.comult[a], 0, 1), q.R);
    const Tensor rhs = h.tensor_mul(q.R, h.comult[a]);
    if (lhs != rhs) {
      cop.passed = false;
      cop.first_failing = a;
      cop.detail = h.labels.empty() ? "" : h.labels[a];
    }
  }
  rep.axioms.push_back(cop);

  const Tensor rinv = h.apply_at(q.R, 0, h.antipode);
  const Tensor one = h.unit_tensor(2);
  rep.axioms.push_back({"R (S x id)R = 1", h.tensor_mul(q.R, rinv) == one, {}, {}});
  rep.axioms.push_back({"(S x id)R R = 1", h.tensor_mul(rinv, q.R) == one, {}, {}});
  return rep;
}

/// The pairing between R_l and R_r, with an extension to all of H.
struct PairingData {
  Matrix rl_basis;  // columns inside H
  Matrix rr_basis;
  Matrix pairing;   // <rl_s, rr_t>
  Matrix extended;  // dim x dim; <a, b> = a^T extended b for a in R_l, b in R_r

  Cyclotomic pair(const Elem& a, const Elem& b) const {
    Cyclotomic s;
    for (const auto& [i, ca] : a)
      for (const auto& [j, cb] : b)
        if (!extended(i, j).is_zero()) s += ca * cb * extended(i, j);
    return s;
  }
  Cyclotomic pair_basis(std::size_t i, std::size_t j) const { return extended(i, j); }
};

struct PairingReport {
  bool multiplicative_left = true;   // <aa', b> = <a, b2><a', b1>
  bool multiplicative_right = true;  // <a, bb'> = <a1, b><a2, b'>
  bool antipode = true;              // <a, S(b)> = <S^{-1}(a), b>
  bool double_relation = true;       // ab = <a1,b1><a3,S(b3)> b2 a2
  bool ok() const { return multiplicative_left && multiplicative_right && antipode && double_relation; }
};

inline PairingReport check_pairing(const QuasitriangularHopf& q, const PairingData& p) {
  const FDHopf& h = q.hopf;
  PairingReport rep;
  std::vector<Elem> as, bs;
  for (std::size_t s = 0; s < p.rl_basis.cols(); ++s) as.push_back(from_dense(p.rl_basis.col(s)));
  for (std::size_t t = 0; t < p.rr_basis.cols(); ++t) bs.push_back(from_dense(p.rr_basis.col(t)));

  for (const auto& a : as)
    for (const auto& a2 : as)
      for (const auto& b : bs) {
        // <a a', b> = <a, b2><a', b1>
        const Cyclotomic lhs = p.pair(h.mul(a, a2), b);
        Cyclotomic rhs;
        for (const auto& [k, c] : h.delta(b)) rhs += c * p.pair(a, basis_elem(k[1])) * p.pair(a2, basis_elem(k[0]));
        if (lhs != rhs) rep.multiplicative_left = false;
      }
  for (const auto& a : as)
    for (const auto& b : bs)
      for (const auto& b2 : bs) {
        const Cyclotomic lhs = p.pair(a, h.mul(b, b2));
        Cyclotomic rhs;
        for (const auto& [k, c] : h.delta(a)) rhs += c * p.pair(basis_elem(k[0]), b) * p.pair(basis_elem(k[1]), b2);
        if (lhs != rhs) rep.multiplicative_right = false;
      }
  for (const auto& a : as)
    for (const auto& b : bs) {
      if (p.pair(a, h.S(b)) != p.pair(h.S_inv(a), b)) rep.antipode = false;

      // ab = <a1, b1><a3, S(b3)> b2 a2
      const Tensor a3 = h.delta_at(h.delta(a), 1);
      const Tensor b3 = h.apply_at(h.delta_at(h.delta(b), 1), 2, h.antipode);
      // Combine: sum over a-legs (x, y, z) and b-legs (u, v, w).
      Elem rhs;
      std::map<std::pair<std::size_t, std::size_t>, Cyclotomic> middles;
      for (const auto& [ka, ca] : a3)
        for (const auto& [kb, cb] : b3) {
          const Cyclotomic w = ca * cb * p.pair_basis(ka[0], kb[0]) * p.pair_basis(ka[2], kb[2]);
          if (w.is_zero()) continue;
          auto [it, ins] = middles.try_emplace({kb[1], ka[1]}, w);
          if (!ins) it->second += w;
        }
      for (const auto& [mid, w] : middles) add_scaled(rhs, h.mul_basis(mid.first, mid.second), w);
      if (h.mul(a, b) != rhs) rep.double_relation = false;
    }
  return rep;
}

/// R_l = span{R^1 f(R^2)}, R_r = span{f(R^1) R^2} and the pairing induced by
/// inverting p -> p(R^1) R^2. Throws PsiNotInvertible if that map is not
/// bijective, and PairingInvariant if the resulting pairing is inconsistent.
inline PairingData compute_pairing(const QuasitriangularHopf& q, bool check = true) {
  const Matrix c = q.r_matrix();
  PairingData p;
  p.rl_basis = span_basis(c);
  p.rr_basis = span_basis(c.transpose());
  if (p.rl_basis.cols() != p.rr_basis.cols())
    throw invariant_error("PsiNotInvertible", "R_l and R_r have different dimensions");
  const Matrix ll = left_inverse(p.rl_basis);
  const Matrix lr = left_inverse(p.rr_basis);
  // R = sum M(s, t) rl_s (x) rr_t.
  const Matrix m = ll * c * lr.transpose();
  if (p.rl_basis * m * p.rr_basis.transpose() != c)
    throw invariant_error("PsiNotInvertible", "R does not factor through R_l (x) R_r");
  const auto minv = inverse(m);
  if (!minv) throw invariant_error("PsiNotInvertible", "p -> p(R^1)R^2 is not bijective");
  p.pairing = minv->transpose();
  p.extended = ll.transpose() * p.pairing * lr;
  if (check && !check_pairing(q, p).ok())
    throw invariant_error("PairingInvariant", "pairing identities fail; the R-matrix is malformed");
  return p;
}

/// Data of a finite-dimensional braided Hopf algebra in YD modules over H,
/// enough to build its bosonization.
struct BraidedHopfData {
  std::size_t dim = 0;
  std::vector<std::string> labels;
  std::vector<Elem> mult;          // mult[a * dim + b]
  Elem unit;
  std::vector<Tensor> comult;      // braided Delta
  Vector counit;
  Matrix antipode;                 // braided antipode
  std::vector<Matrix> action;      // action[h] on B, per H basis element
  std::vector<Tensor> coaction;    // coaction[b] = sum c h (x) b', keys (h, b')
};

/// Bosonization B#H on the basis x_k # h_l, index k * dim(H) + l.
inline FDHopf bosonization(const BraidedHopfData& b, const FDHopf& h) {
  const std::size_t nb = b.dim, nh = h.dim, n = nb * nh;
  auto idx = [nh](std::size_t x, std::size_t y) { return x * nh + y; };
  FDHopf out;
  out.dim = n;
  out.field_order = h.field_order;
  for (std::size_t x = 0; x < nb; ++x)
    for (std::size_t y = 0; y < nh; ++y)
      out.labels.push_back((b.labels.empty() ? "b" + std::to_string(x) : b.labels[x]) + "#" + h.labels[y]);

  auto act = [&](std::size_t hh, std::size_t x) {
    Elem e;
    for (std::size_t i = 0; i < nb; ++i)
      if (!b.action[hh](i, x).is_zero()) e.emplace(i, b.action[hh](i, x));
    return e;
  };
  auto bmul = [&](const Elem& x, const Elem& y) {
    Elem o;
    for (const auto& [i, ci] : x)
      for (const auto& [j, cj] : y) add_scaled(o, b.mult[i * nb + j], ci * cj);
    return o;
  };

  // (x#h)(x'#h') = x (h1 . x') # h2 h'
  out.mult.resize(n * n);
  for (std::size_t x = 0; x < nb; ++x)
    for (std::size_t y = 0; y < nh; ++y)
      for (std::size_t x2 = 0; x2 < nb; ++x2)
        for (std::size_t y2 = 0; y2 < nh; ++y2) {
          Elem& o = out.mult[idx(x, y) * n + idx(x2, y2)];
          for (const auto& [k, c] : h.comult[y]) {
            const Elem bx = bmul(basis_elem(x), act(k[0], x2));
            const Elem hh = h.mul_basis(k[1], y2);
            for (const auto& [i, ci] : bx)
              for (const auto& [j, cj] : hh) accumulate(o, idx(i, j), c * ci * cj);
          }
        }

  out.unit.clear();
  for (const auto& [i, ci] : b.unit)
    for (const auto& [j, cj] : h.unit) accumulate(out.unit, idx(i, j), ci * cj);

  // Delta(x#h) = x1 # (x2)_{-1} h1 (x) (x2)_0 # h2
  out.comult.resize(n);
  for (std::size_t x = 0; x < nb; ++x)
    for (std::size_t y = 0; y < nh; ++y)
      for (const auto& [kb, cb] : b.comult[x])
        for (const auto& [kc, cc] : b.coaction[kb[1]])
          for (const auto& [kh, ch] : h.comult[y])
            for (const auto& [g, cg] : h.mul_basis(kc[0], kh[0]))
              accumulate(out.comult[idx(x, y)], Key{idx(kb[0], g), idx(kc[1], kh[1])}, cb * cc * ch * cg);

  out.counit.assign(n, Cyclotomic());
  for (std::size_t x = 0; x < nb; ++x)
    for (std::size_t y = 0; y < nh; ++y) out.counit[idx(x, y)] = b.counit[x] * h.counit[y];

  // S(x#h) = (1 # S_H(x_{-1} h)) (S_B(x_0) # 1)
  out.antipode = Matrix(n, n);
  for (std::size_t x = 0; x < nb; ++x)
    for (std::size_t y = 0; y < nh; ++y) {
      Elem total;
      for (const auto& [kc, cc] : b.coaction[x]) {
        const Elem sh = h.S(h.mul_basis(kc[0], y));
        Elem left, right;
        for (const auto& [i, ci] : b.unit)
          for (const auto& [j, cj] : sh) accumulate(left, idx(i, j), ci * cj);
        for (std::size_t i = 0; i < nb; ++i)
          if (!b.antipode(i, kc[1]).is_zero())
            for (const auto& [j, cj] : h.unit) accumulate(right, idx(i, j), b.antipode(i, kc[1]) * cj);
        add_scaled(total, out.mul(left, right), cc);
      }
      for (const auto& [t, ct] : total) out.antipode(t, idx(x, y)) = ct;
    }
  auto inv = inverse(out.antipode);
  if (!inv) throw invariant_error("HopfAxiom", "antipode of the bosonization is not invertible");
  out.antipode_inv = *inv;
  return out;
}

/// The trivial braided Hopf algebra k in YD over H.
inline BraidedHopfData trivial_braided(const FDHopf& h) {
  BraidedHopfData b;
  b.dim = 1;
  b.labels = {"1"};
  b.mult = {basis_elem(0)};
  b.unit = basis_elem(0);
  b.comult = {Tensor{{Key{0, 0}, Cyclotomic(1L)}}};
  b.counit = {Cyclotomic(1L)};
  b.antipode = Matrix::identity(1);
  for (std::size_t a = 0; a < h.dim; ++a) {
    Matrix m(1, 1);
    m(0, 0) = h.counit[a];
    b.action.push_back(m);
  }
  Tensor co;
  for (const auto& [u, cu] : h.unit) accumulate(co, Key{u, 0}, cu);
  b.coaction = {co};
  return b;
}

inline bool is_grouplike(const FDHopf& k, const Elem& g) {
  if (!k.eps(g).is_one()) return false;
  Tensor gg;
  for (const auto& [i, ci] : g)
    for (const auto& [j, cj] : g) accumulate(gg, Key{i, j}, ci * cj);
  return k.delta(g) == gg;
}

/// All group-like elements of K. They are the algebra maps K* -> field,
/// g = sum chi(f_i) a_i, found as characters of the dual algebra.
inline std::vector<Elem> grouplikes(const FDHopf& k) {
  const FDHopf dual = dual_hopf(k);
  std::vector<Elem> out;
  for (const auto& chi : algebra_characters(dual.as_algebra())) {
    Elem g = from_dense(chi);
    if (!is_grouplike(k, g)) throw invariant_error("GrouplikeCheck", "character of K* did not give a group-like");
    out.push_back(std::move(g));
  }
  std::sort(out.begin(), out.end(), [](const Elem& a, const Elem& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](const auto& x, const auto& y) {
      if (x.first != y.first) return x.first < y.first;
      return x.second.to_string() < y.second.to_string();
    });
  });
  return out;
}

inline bool is_central(const FDHopf& k, const Elem& z) {
  for (std::size_t b = 0; b < k.dim; ++b)
    if (k.mul(z, basis_elem(b)) != k.mul(basis_elem(b), z)) return false;
  return true;
}

/// Symmetric group S3 on {0,1,2}; elements ordered e, (01), (02), (12), (012), (021).
inline FDHopf s3_group_algebra() {
  const std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  const std::vector<std::string> labels = {"e", "(01)", "(02)", "(12)", "(012)", "(021)"};
  auto find = [&](const std::array<int, 3>& p) {
    return static_cast<std::size_t>(std::find(perms.begin(), perms.end(), p) - perms.begin());
  };
  std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
  std::vector<std::size_t> inv(6);
  for (std::size_t a = 0; a < 6; ++a) {
    for (std::size_t b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];  // (ab)(i) = a(b(i))
      t[a][b] = find(c);
    }
    std::array<int, 3> r{};
    for (int i = 0; i < 3; ++i) r[perms[a][i]] = i;
    inv[a] = find(r);
  }
  return group_algebra(t, inv, 0, labels);
}

}  // namespace trideco
