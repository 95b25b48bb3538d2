#pragma once

// Brute-force oracles shared by the unit tests and the acceptance run. They
// avoid the production routines they check and are meant for small inputs
// (modules of dimension <= 64).

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "trideco/repr.hpp"

namespace oracles {

using namespace trideco;

// Oracle: the quantum symmetrizer as the sum over all permutations of the
// braid lifts of reduced words, applied to word vectors letter pair by
// letter pair. Returns rank per degree.
inline std::vector<std::size_t> oracle_hilbert(const Matrix& c, std::size_t m, std::size_t max_n) {
  std::vector<std::size_t> out{1};
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::size_t words = 1;
    for (std::size_t k = 0; k < n; ++k) words *= m;
    // Reduced words of all permutations from bubble sort.
    std::vector<std::vector<std::size_t>> reduced;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<std::size_t> p = perm, w;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j + 1 < n - i; ++j)
          if (p[j] > p[j + 1]) {
            std::swap(p[j], p[j + 1]);
            w.push_back(j);
          }
      reduced.push_back(w);
    } while (std::next_permutation(perm.begin(), perm.end()));

    auto apply = [&](const std::map<std::size_t, Cyclotomic>& v, std::size_t k) {
      std::map<std::size_t, Cyclotomic> res;
      std::size_t right = 1;
      for (std::size_t j = k + 2; j < n; ++j) right *= m;
      for (const auto& [w, x] : v) {
        const std::size_t a = (w / (right * m)) % m, b = (w / right) % m;
        const std::size_t base = w - (a * m + b) * right;
        for (std::size_t r = 0; r < m * m; ++r) {
          if (c(r, a * m + b).is_zero()) continue;
          res[base + r * right] += x * c(r, a * m + b);
        }
      }
      return res;
    };

    Matrix s(words, words);
    for (std::size_t w = 0; w < words; ++w)
      for (const auto& red : reduced) {
        std::map<std::size_t, Cyclotomic> v{{w, Cyclotomic(1L)}};
        for (auto it = red.rbegin(); it != red.rend(); ++it) v = apply(v, *it);
        for (const auto& [u, x] : v) s(u, w) += x;
      }
    out.push_back(rank(s));
    if (out.back() == 0) break;
  }
  return out;
}

/// Jacobson radical of u as the radical of the trace form of the regular representation.
inline Matrix radical_of_u(const TriangularHopf& u) {
  Algebra a;
  a.dim = u.dim();
  for (std::size_t i = 0; i < a.dim; ++i) {
    Matrix m(a.dim, a.dim);
    for (std::size_t j = 0; j < a.dim; ++j)
      for (const auto& [t, c] : u.mult_basis(i, j)) m(t, j) = c;
    a.left.push_back(std::move(m));
  }
  return trace_radical(a);
}

/// rad(u) . M as a span of columns.
inline Matrix radical_of_module(const TriangularHopf& u, const Matrix& rad, const GradedModule& m) {
  const ModuleActor act(u, m);
  SpanBuilder span(m.dim());
  for (std::size_t c = 0; c < rad.cols(); ++c) {
    const Matrix r = act(from_dense(rad.col(c)));
    for (std::size_t j = 0; j < m.dim(); ++j) span.add(r.col(j));
  }
  return span.basis();
}

inline bool same_span(const Matrix& a, const Matrix& b) {
  return rank(a) == rank(b) && rank(Matrix::hstack(a, b)) == rank(a);
}

inline bool isomorphic(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
  if (a.front().rows() != b.front().rows()) return false;
  for (const auto& x : intertwiners(a, b))
    if (inverse(x)) return true;
  return false;
}

/// Ungraded composition multiplicities of m in the given simples, through
/// Loewy layers split into simple pieces.
inline std::vector<long long> composition_counts(const TriangularHopf& u, const Matrix& rad, const GradedModule& m,
                                          const std::vector<GradedModule>& simples) {
  std::vector<long long> counts(simples.size(), 0);
  std::size_t n = m.dim();
  GradedModule cur = m;
  while (n > 0) {
    const Matrix r = radical_of_module(u, rad, cur);
    Matrix lift;
    std::vector<Matrix> top = quotient_action(cur.generators(), r, &lift);
    std::size_t left = lift.cols();
    while (left > 0) {
      const Matrix piece = simple_submodule(top, left, u.H().field_order);
      const auto rho = restrict_action(top, piece);
      bool found = false;
      for (std::size_t w = 0; w < simples.size() && !found; ++w)
        if (isomorphic(rho, simples[w].generators())) {
          ++counts[w];
          found = true;
        }
      if (!found) throw std::runtime_error("composition factor matches no simple");
      top = quotient_action(top, piece);
      left -= piece.cols();
    }
    // rad . M need not have a homogeneous basis; degrees are irrelevant here.
    GradedModule next;
    next.degree.assign(r.cols(), 0);
    next.x = restrict_action(cur.x, r);
    next.y = restrict_action(cur.y, r);
    next.h = restrict_action(cur.h, r);
    cur = std::move(next);
    n = cur.dim();
  }
  return counts;
}

}  // namespace oracles
