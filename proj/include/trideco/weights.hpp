#pragma once

// Simple modules of a semisimple Hopf algebra and arithmetic in its
// Grothendieck ring.

#include <algorithm>

#include "trideco/braided.hpp"

namespace trideco {

struct Weight {
  std::string label;
  std::vector<Matrix> action;  // per H basis element
  std::size_t dim = 0;
  Vector character;  // traces of the H basis
};

inline Vector module_character(const std::vector<Matrix>& action) {
  Vector out;
  for (const auto& a : action) out.push_back(a.trace());
  return out;
}

class WeightTable {
 public:
  const FDHopf* hopf = nullptr;
  std::vector<Weight> weights;

  std::size_t size() const { return weights.size(); }

  void finalize() {
    const std::size_t n = hopf->dim;
    Matrix c(n, weights.size());
    for (std::size_t w = 0; w < weights.size(); ++w)
      for (std::size_t a = 0; a < n; ++a) c(a, w) = weights[w].character[a];
    if (rank(c) != weights.size()) throw invariant_error("WeightCharacters", "characters of simples are dependent");
    solver_ = left_inverse(c);
  }

  /// Multiplicities of the simples in a module with the given character.
  std::vector<long long> decompose(const Vector& character) const {
    const Vector m = solver_ * character;
    std::vector<long long> out;
    for (const auto& x : m) {
      if (!x.is_rational() || x.constant().get_den() != 1 || x.constant() < 0)
        throw invariant_error("NotAModule", "character is not a nonnegative combination of simples");
      out.push_back(x.constant().get_num().get_si());
    }
    // The solve is a left inverse; confirm it reproduces the character.
    Vector back(character.size());
    for (std::size_t w = 0; w < out.size(); ++w)
      for (std::size_t a = 0; a < back.size(); ++a) back[a] += weights[w].character[a] * Cyclotomic(out[w]);
    if (back != character) throw invariant_error("NotAModule", "character outside the span of the simples");
    return out;
  }

  std::vector<long long> decompose_action(const std::vector<Matrix>& action) const {
    return decompose(module_character(action));
  }

  /// Index of the simple isomorphic to a given simple module.
  std::size_t index_of(const std::vector<Matrix>& action) const {
    const auto m = decompose_action(action);
    std::size_t found = m.size(), total = 0;
    for (std::size_t w = 0; w < m.size(); ++w) {
      total += static_cast<std::size_t>(m[w]);
      if (m[w] == 1) found = w;
    }
    if (total != 1) throw invariant_error("NotSimple", "module is not simple");
    return found;
  }

  std::size_t trivial() const {
    std::vector<Matrix> eps;
    for (std::size_t a = 0; a < hopf->dim; ++a) {
      Matrix m(1, 1);
      m(0, 0) = hopf->counit[a];
      eps.push_back(m);
    }
    return index_of(eps);
  }

  /// Multiplicities of the simples in w1 (x) w2.
  std::vector<long long> fusion(std::size_t w1, std::size_t w2) const {
    Vector chi(hopf->dim);
    for (std::size_t a = 0; a < hopf->dim; ++a)
      for (const auto& [k, c] : hopf->comult[a])
        chi[a] += c * weights[w1].character[k[0]] * weights[w2].character[k[1]];
    return decompose(chi);
  }

  /// Index of the dual simple w*.
  std::size_t dual(std::size_t w) const { return index_of(dual_action(*hopf, weights[w].action)); }

 private:
  Matrix solver_;
};

/// Tensor product of H-modules.
inline std::vector<Matrix> tensor_h_modules(const FDHopf& h, const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
  return tensor_action(h, a, b);
}

/// Complete set of simple H-modules. H must be semisimple and split over its
/// field. The trivial module comes first, then by dimension and character.
inline WeightTable enumerate_weights(const FDHopf& h) {
  const Algebra a = h.as_algebra();
  if (trace_radical(a).cols() > 0) throw config_error("NotSemisimple", "the base Hopf algebra is not semisimple");
  const Matrix z = center(a);
  std::vector<Matrix> ops;
  for (std::size_t c = 0; c < z.cols(); ++c) {
    Matrix m(h.dim, h.dim);
    for (std::size_t k = 0; k < h.dim; ++k)
      if (!z(k, c).is_zero()) m += a.left[k] * z(k, c);
    ops.push_back(std::move(m));
  }
  WeightTable table;
  table.hopf = &h;
  std::size_t total = 0;
  for (const auto& block : joint_eigenspaces(ops, h.dim, h.field_order, true)) {
    const auto rho = restrict_action(a.left, block.basis);
    const Matrix simple = simple_submodule(rho, block.basis.cols(), h.field_order);
    Weight w;
    w.action = restrict_action(rho, simple);
    w.dim = simple.cols();
    w.character = module_character(w.action);
    total += w.dim * w.dim;
    table.weights.push_back(std::move(w));
  }
  if (total != h.dim) throw config_error("FieldNotSplitting", "simple modules do not account for dim H");

  auto is_trivial = [&](const Weight& w) { return w.dim == 1 && w.character == h.counit; };
  auto key = [](const Weight& w) {
    std::string s;
    for (const auto& x : w.character) s += x.to_string() + ";";
    return s;
  };
  std::stable_sort(table.weights.begin(), table.weights.end(), [&](const Weight& p, const Weight& q) {
    if (is_trivial(p) != is_trivial(q)) return is_trivial(p);
    if (p.dim != q.dim) return p.dim < q.dim;
    return key(p) < key(q);
  });
  for (std::size_t i = 0; i < table.weights.size(); ++i) table.weights[i].label = "w" + std::to_string(i);
  table.finalize();
  return table;
}

}  // namespace trideco
