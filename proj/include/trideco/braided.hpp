#pragma once

// Yetter-Drinfeld modules, braidings, the duals oV and V*, and the passage
// from YD modules over K to modules over the Drinfeld double D(K).

#include <optional>
#include <string>
#include <vector>

#include "trideco/hopf.hpp"

namespace trideco {

/// Matrix of the action of an arbitrary element.
inline Matrix act_matrix(const std::vector<Matrix>& action, const Elem& h, std::size_t dim) {
  Matrix m(dim, dim);
  for (const auto& [a, c] : h) m += action[a] * c;
  return m;
}

/// First violation of the module axioms for action matrices over H.
inline std::optional<std::string> module_failure(const FDHopf& h, const std::vector<Matrix>& action) {
  if (action.size() != h.dim) return "need one action matrix per basis element";
  const std::size_t m = action.empty() ? 0 : action.front().rows();
  for (const auto& a : action)
    if (a.rows() != m || a.cols() != m) return "action matrices have inconsistent shapes";
  if (act_matrix(action, h.unit, m) != Matrix::identity(m)) return "unit does not act as identity";
  for (std::size_t a = 0; a < h.dim; ++a)
    for (std::size_t b = 0; b < h.dim; ++b)
      if (action[a] * action[b] != act_matrix(action, h.mul_basis(a, b), m))
        return "action is not multiplicative at (" + std::to_string(a) + "," + std::to_string(b) + ")";
  return std::nullopt;
}

inline void require_module(const FDHopf& h, const std::vector<Matrix>& action) {
  if (auto f = module_failure(h, action)) throw config_error("NotAModule", *f);
}

struct YDModule {
  std::size_t dim = 0;
  std::vector<Matrix> action;    // per H basis element
  std::vector<Tensor> coaction;  // coaction[m] = sum c h (x) m', keys (h, m')

  /// Coaction of an arbitrary vector, as a tensor with keys (h, m').
  Tensor coact(const Vector& v) const {
    Tensor out;
    for (std::size_t i = 0; i < dim; ++i)
      if (!v[i].is_zero()) add_scaled(out, coaction[i], v[i]);
    return out;
  }
};

/// First violation of the module, comodule or Yetter-Drinfeld axioms.
inline std::optional<std::string> yd_failure(const FDHopf& h, const YDModule& m) {
  if (auto f = module_failure(h, m.action)) return f;
  if (m.coaction.size() != m.dim) return "need one coaction entry per basis vector";
  for (std::size_t i = 0; i < m.dim; ++i) {
    const Tensor& d = m.coaction[i];
    if (h.counit_at(d, 0) != Tensor{{Key{i}, Cyclotomic(1L)}}) return "comodule counit fails at " + std::to_string(i);
    // (Delta x id) delta = (id x delta) delta
    Tensor rhs;
    for (const auto& [k, c] : d)
      for (const auto& [k2, c2] : m.coaction[k[1]]) accumulate(rhs, Key{k[0], k2[0], k2[1]}, c * c2);
    if (h.delta_at(d, 0) != rhs) return "comodule coassociativity fails at " + std::to_string(i);
  }
  // delta(h . m) = h1 m_{-1} S(h3) (x) h2 . m0
  for (std::size_t a = 0; a < h.dim; ++a) {
    const Tensor h3 = h.delta_at(h.comult[a], 1);
    for (std::size_t i = 0; i < m.dim; ++i) {
      const Tensor lhs = m.coact(m.action[a].col(i));
      Tensor rhs;
      for (const auto& [kh, ch] : h3) {
        const Elem sh3 = h.S(basis_elem(kh[2]));
        for (const auto& [km, cm] : m.coaction[i]) {
          const Elem left = h.mul(h.mul_basis(kh[0], km[0]), sh3);
          for (std::size_t j = 0; j < m.dim; ++j) {
            const Cyclotomic& x = m.action[kh[1]](j, km[1]);
            if (x.is_zero()) continue;
            for (const auto& [g, cg] : left) accumulate(rhs, Key{g, j}, ch * cm * x * cg);
          }
        }
      }
      if (lhs != rhs)
        return "Yetter-Drinfeld compatibility fails at (" + std::to_string(a) + "," + std::to_string(i) + ")";
    }
  }
  return std::nullopt;
}

enum class BraidVariant { C, CInverse };

/// YD structure on an H-module from the R-matrix: coaction R^2 (x) R^1 x
/// (variant C) or S(R^1) (x) R^2 x (variant CInverse).
inline YDModule yd_from_qt(const QuasitriangularHopf& q, const std::vector<Matrix>& action,
                           BraidVariant variant = BraidVariant::C) {
  const FDHopf& h = q.hopf;
  require_module(h, action);
  YDModule m;
  m.dim = action.front().rows();
  m.action = action;
  m.coaction.assign(m.dim, Tensor{});
  for (const auto& [k, c] : q.R) {
    if (variant == BraidVariant::C) {
      // R^2 (x) R^1 x
      for (std::size_t x = 0; x < m.dim; ++x)
        for (std::size_t y = 0; y < m.dim; ++y)
          if (!action[k[0]](y, x).is_zero()) accumulate(m.coaction[x], Key{k[1], y}, c * action[k[0]](y, x));
    } else {
      const Elem s = h.S(basis_elem(k[0]));
      for (std::size_t x = 0; x < m.dim; ++x)
        for (std::size_t y = 0; y < m.dim; ++y) {
          const Cyclotomic& a = action[k[1]](y, x);
          if (a.is_zero()) continue;
          for (const auto& [g, cg] : s) accumulate(m.coaction[x], Key{g, y}, c * a * cg);
        }
    }
  }
  return m;
}

/// Action of H on the dual space: <h y, x> = <y, S(h) x>.
inline std::vector<Matrix> dual_action(const FDHopf& h, const std::vector<Matrix>& action) {
  const std::size_t dim = action.front().rows();
  std::vector<Matrix> out;
  for (std::size_t a = 0; a < h.dim; ++a)
    out.push_back(act_matrix(action, h.S(basis_elem(a)), dim).transpose());
  return out;
}

/// The object oV on the dual basis: action by the S-transpose and coaction
/// S(R^1) (x) R^2 y. With categorical = true the coaction is instead
/// S^{-1}(R^2) (x) S^{-1}(R^1) y, which gives the dual object V* of YD.
inline YDModule dual_yd(const QuasitriangularHopf& q, const YDModule& v, bool categorical = false) {
  const FDHopf& h = q.hopf;
  const std::vector<Matrix> act = dual_action(h, v.action);
  if (!categorical) return yd_from_qt(q, act, BraidVariant::CInverse);
  YDModule m;
  m.dim = v.dim;
  m.action = act;
  m.coaction.assign(m.dim, Tensor{});
  for (const auto& [k, c] : q.R) {
    const Elem s2 = h.S_inv(basis_elem(k[1]));
    const Matrix s1 = act_matrix(act, h.S_inv(basis_elem(k[0])), m.dim);
    for (std::size_t y = 0; y < m.dim; ++y)
      for (std::size_t z = 0; z < m.dim; ++z) {
        if (s1(z, y).is_zero()) continue;
        for (const auto& [g, cg] : s2) accumulate(m.coaction[y], Key{g, z}, c * cg * s1(z, y));
      }
  }
  return m;
}

/// Checks <x_{-1} . y, x_0> = <y_0, S^{-1}(y_{-1}) . x> on all basis pairs,
/// with the evaluation pairing oV (x) V -> k given by dual bases.
inline bool dual_compatibility_holds(const FDHopf& h, const YDModule& v, const YDModule& ov) {
  for (std::size_t x = 0; x < v.dim; ++x)
    for (std::size_t y = 0; y < ov.dim; ++y) {
      Cyclotomic lhs, rhs;
      for (const auto& [k, c] : v.coaction[x]) lhs += c * ov.action[k[0]](k[1], y);
      for (const auto& [k, c] : ov.coaction[y]) {
        const Matrix s = act_matrix(v.action, h.S_inv(basis_elem(k[0])), v.dim);
        rhs += c * s(k[1], x);
      }
      if (lhs != rhs) return false;
    }
  return true;
}

/// The braiding v (x) w -> v_{-1} . w (x) v_0 as a matrix from V (x) W
/// (index i * dim W + j) to W (x) V (index j * dim V + i).
inline Matrix braiding(const YDModule& v, const YDModule& w) {
  Matrix c(w.dim * v.dim, v.dim * w.dim);
  for (std::size_t i = 0; i < v.dim; ++i)
    for (const auto& [k, coef] : v.coaction[i])
      for (std::size_t j = 0; j < w.dim; ++j)
        for (std::size_t j2 = 0; j2 < w.dim; ++j2) {
          const Cyclotomic& a = w.action[k[0]](j2, j);
          if (a.is_zero()) continue;
          c(j2 * v.dim + k[1], i * w.dim + j) += coef * a;
        }
  return c;
}

/// (c x id)(id x c)(c x id) = (id x c)(c x id)(id x c) on V^{(x)3}.
inline bool braid_relation_holds(const Matrix& c, std::size_t n) {
  const Matrix c1 = kron(c, Matrix::identity(n));
  const Matrix c2 = kron(Matrix::identity(n), c);
  return c1 * c2 * c1 == c2 * c1 * c2;
}

/// Diagonal action on V (x) W.
inline std::vector<Matrix> tensor_action(const FDHopf& h, const std::vector<Matrix>& v, const std::vector<Matrix>& w) {
  const std::size_t dv = v.front().rows(), dw = w.front().rows();
  std::vector<Matrix> out;
  for (std::size_t a = 0; a < h.dim; ++a) {
    Matrix m(dv * dw, dv * dw);
    for (const auto& [k, c] : h.comult[a]) m += kron(v[k[0]], w[k[1]]) * c;
    out.push_back(std::move(m));
  }
  return out;
}

/// Whether the braiding V (x) W -> W (x) V commutes with the diagonal actions.
inline bool braiding_is_module_map(const FDHopf& h, const YDModule& v, const YDModule& w) {
  const Matrix c = braiding(v, w);
  const auto vw = tensor_action(h, v.action, w.action);
  const auto wv = tensor_action(h, w.action, v.action);
  for (std::size_t a = 0; a < h.dim; ++a)
    if (c * vw[a] != wv[a] * c) return false;
  return true;
}

inline YDModule direct_sum(const YDModule& a, const YDModule& b) {
  YDModule m;
  m.dim = a.dim + b.dim;
  for (std::size_t h = 0; h < a.action.size(); ++h) {
    Matrix x(m.dim, m.dim);
    for (std::size_t i = 0; i < a.dim; ++i)
      for (std::size_t j = 0; j < a.dim; ++j) x(i, j) = a.action[h](i, j);
    for (std::size_t i = 0; i < b.dim; ++i)
      for (std::size_t j = 0; j < b.dim; ++j) x(a.dim + i, a.dim + j) = b.action[h](i, j);
    m.action.push_back(std::move(x));
  }
  m.coaction = a.coaction;
  for (const auto& t : b.coaction) {
    Tensor s;
    for (const auto& [k, c] : t) accumulate(s, Key{k[0], k[1] + a.dim}, c);
    m.coaction.push_back(std::move(s));
  }
  return m;
}

/// A YD module over K as a module over D(K): (a (x) f) . m = f(m_{-1}) a . m_0,
/// on the basis a_i (x) f_j of drinfeld_double.
inline std::vector<Matrix> to_double_module(const FDHopf& k, const YDModule& m) {
  if (auto f = yd_failure(k, m)) throw config_error("NotAModule", *f);
  const std::size_t n = k.dim;
  std::vector<Matrix> out(n * n, Matrix(m.dim, m.dim));
  for (std::size_t x = 0; x < m.dim; ++x)
    for (const auto& [key, c] : m.coaction[x])
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t y = 0; y < m.dim; ++y) {
          const Cyclotomic& a = m.action[i](y, key[1]);
          if (!a.is_zero()) out[i * n + key[0]](y, x) += c * a;
        }
  return out;
}

/// YD module over a group algebra kG from action matrices (one per group
/// element) and a G-degree per basis vector: x_i -> g_{deg(i)} (x) x_i.
inline YDModule yd_over_group(const FDHopf& k, const std::vector<Matrix>& action,
                              const std::vector<std::size_t>& degrees) {
  YDModule m;
  m.dim = degrees.size();
  m.action = action;
  for (std::size_t i = 0; i < m.dim; ++i) {
    if (degrees[i] >= k.dim) throw config_error("ConfigInvalid", "module degree out of range");
    m.coaction.push_back(Tensor{{Key{degrees[i], i}, Cyclotomic(1L)}});
  }
  if (auto f = yd_failure(k, m)) throw config_error("NotAModule", *f);
  return m;
}

}  // namespace trideco
