#pragma once

// Nichols algebras as degreewise quotients of tensor powers.
//
// B^n is realized as a quotient of V (x) B^{n-1}: the symmetrizer factors as
// S_n = (id (x) S_{n-1}) T_n with T_n = id + c_1 + c_1 c_2 + ... + c_1...c_{n-1},
// and V (x) ker S_{n-1} lies in ker S_n, so ker S_n is cut out by
// (id (x) pi_{n-1}) T_n restricted to pivot words. Basis elements of B^n are
// the pivot words of the row-reduced kernel complement.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "trideco/braided.hpp"

namespace trideco {

/// Full quantum symmetrizer on V^{(x)n} from the shuffle recursion. Throws
/// BraidRelationFailed if c does not satisfy the braid relation.
inline Matrix quantum_symmetrizer(const Matrix& c, std::size_t m, std::size_t n) {
  if (c.rows() != m * m || c.cols() != m * m) throw invariant_error("MatrixShape", "braiding must act on V (x) V");
  if (n >= 3 && !braid_relation_holds(c, m))
    throw invariant_error("BraidRelationFailed", "braiding does not satisfy the braid relation");
  if (n == 0) return Matrix::identity(1);
  Matrix s = Matrix::identity(m);
  std::size_t pw = m;
  for (std::size_t k = 2; k <= n; ++k) {
    pw *= m;
    // T_k by Horner: id + c_1 (id + c_2 (... (id + c_{k-1})))
    Matrix t = Matrix::identity(pw);
    for (std::size_t i = k - 1; i >= 1; --i) {
      std::size_t right = 1;
      for (std::size_t j = i + 1; j < k; ++j) right *= m;
      const Matrix ci = kron(kron(Matrix::identity(pw / (m * m * right)), c), Matrix::identity(right));
      t = Matrix::identity(pw) + ci * t;
    }
    s = kron(Matrix::identity(m), s) * t;
  }
  return s;
}

struct NicholsDegree {
  std::size_t dim = 0;
  std::vector<std::size_t> words;                          // pivot word of each basis element
  std::vector<std::pair<std::size_t, std::size_t>> split;  // basis r = x_i * b_{r'} in V (x) B^{n-1}
  Matrix reduce;                                           // V (x) B^{n-1} -> B^n
  std::vector<Matrix> action;                              // per H basis element
  std::vector<Tensor> coaction;                            // keys (h, s)
};

class NicholsAlgebra {
 public:
  YDModule V;
  Matrix c;  // braiding on V (x) V
  std::vector<NicholsDegree> degrees;
  std::optional<std::size_t> n_top;  // nullopt when no zero component was reached

  std::size_t m() const { return V.dim; }
  std::size_t max_computed() const { return degrees.size() - 1; }
  std::size_t dim(std::size_t n) const { return n < degrees.size() ? degrees[n].dim : 0; }

  std::vector<std::size_t> hilbert() const {
    std::vector<std::size_t> h;
    const std::size_t top = n_top ? *n_top : max_computed();
    for (std::size_t n = 0; n <= top; ++n) h.push_back(dim(n));
    return h;
  }

  std::size_t total_dim() const {
    std::size_t s = 0;
    for (auto d : hilbert()) s += d;
    return s;
  }

  bool palindromic() const {
    const auto h = hilbert();
    for (std::size_t i = 0; i < h.size(); ++i)
      if (h[i] != h[h.size() - 1 - i]) return false;
    return true;
  }

  /// x_i * v for v in B^n.
  Vector left_mult(std::size_t i, std::size_t n, const Vector& v) const {
    Vector out(dim(n + 1));
    if (out.empty()) return out;
    const NicholsDegree& d = degrees[n + 1];
    const std::size_t dn = dim(n);
    for (std::size_t s = 0; s < dn; ++s) {
      if (v[s].is_zero()) continue;
      for (std::size_t r = 0; r < out.size(); ++r) {
        const Cyclotomic& x = d.reduce(r, i * dn + s);
        if (!x.is_zero()) out[r] += v[s] * x;
      }
    }
    return out;
  }

  /// Product of basis elements b_r in B^p and b_s in B^q, in B^{p+q}.
  Vector multiply_basis(std::size_t p, std::size_t r, std::size_t q, std::size_t s) const {
    if (p + q >= degrees.size()) return {};
    if (p == 0) {
      Vector v(dim(q));
      v[s] = Cyclotomic(1L);
      return v;
    }
    const auto [i, r2] = degrees[p].split[r];
    return left_mult(i, p + q - 1, multiply_basis(p - 1, r2, q, s));
  }

  /// Matrix B^p (x) B^q -> B^{p+q}.
  Matrix mult_matrix(std::size_t p, std::size_t q) const {
    Matrix out(dim(p + q), dim(p) * dim(q));
    if (out.rows() == 0) return out;
    for (std::size_t r = 0; r < dim(p); ++r)
      for (std::size_t s = 0; s < dim(q); ++s) {
        const Vector v = multiply_basis(p, r, q, s);
        for (std::size_t t = 0; t < v.size(); ++t) out(t, r * dim(q) + s) = v[t];
      }
    return out;
  }

  /// Projection of a word of V^{(x)n} (index with the first letter most significant).
  Vector project_word(std::size_t n, std::size_t word) const {
    if (n == 0) return Vector{Cyclotomic(1L)};
    std::size_t top = 1;
    for (std::size_t k = 1; k < n; ++k) top *= m();
    const std::size_t i = word / top;
    return left_mult(i, n - 1, project_word(n - 1, word % top));
  }

  /// Braided comultiplication component B^{p+q} -> B^p (x) B^q (index r * dim q + s).
  Matrix comult_component(std::size_t p, std::size_t q) const {
    auto key = std::make_pair(p, q);
    {
      std::lock_guard<std::mutex> lock(*cache_mu_);
      if (auto it = comult_cache_.find(key); it != comult_cache_.end()) return it->second;
    }
    const std::size_t n = p + q;
    Matrix out(dim(p) * dim(q), dim(n));
    if (q == 0 || p == 0) {
      for (std::size_t r = 0; r < dim(n); ++r) out(r, r) = Cyclotomic(1L);
    } else {
      // Delta(x_i b) = x_i Delta_{p-1,q}(b) + sum (x_i)_{-1} . a (x) (x_i)_0 b' over Delta_{p,q-1}(b) = a (x) b'
      const Matrix d1 = comult_component(p - 1, q);
      const Matrix d2 = comult_component(p, q - 1);
      const std::size_t dq = dim(q), dq1 = dim(q - 1), dp = dim(p), dp1 = dim(p - 1);
      for (std::size_t r = 0; r < dim(n); ++r) {
        const auto [i, rb] = degrees[n].split[r];
        for (std::size_t a = 0; a < dp1; ++a)
          for (std::size_t b = 0; b < dq; ++b) {
            const Cyclotomic& x = d1(a * dq + b, rb);
            if (x.is_zero()) continue;
            Vector ea(dp1);
            ea[a] = Cyclotomic(1L);
            const Vector ia = left_mult(i, p - 1, ea);
            for (std::size_t t = 0; t < dp; ++t)
              if (!ia[t].is_zero()) out(t * dq + b, r) += x * ia[t];
          }
        for (std::size_t a = 0; a < dp; ++a)
          for (std::size_t b = 0; b < dq1; ++b) {
            const Cyclotomic& x = d2(a * dq1 + b, rb);
            if (x.is_zero()) continue;
            for (const auto& [k, cc] : V.coaction[i]) {
              Vector eb(dq1);
              eb[b] = Cyclotomic(1L);
              const Vector jb = left_mult(k[1], q - 1, eb);
              const Matrix& act = degrees[p].action[k[0]];
              for (std::size_t t = 0; t < dp; ++t) {
                const Cyclotomic& y = act(t, a);
                if (y.is_zero()) continue;
                for (std::size_t u = 0; u < dq; ++u)
                  if (!jb[u].is_zero()) out(t * dq + u, r) += x * cc * y * jb[u];
              }
            }
          }
      }
    }
    std::lock_guard<std::mutex> lock(*cache_mu_);
    comult_cache_.emplace(key, out);
    return out;
  }

  /// Braided antipode on B^n from m (S (x) id) Delta = eps.
  Matrix antipode_component(std::size_t n) const {
    if (n == 0) return Matrix::identity(1);
    Matrix s(dim(n), dim(n));
    for (std::size_t p = 0; p < n; ++p) {
      const std::size_t q = n - p;
      s -= mult_matrix(p, q) * kron(antipode_component(p), Matrix::identity(dim(q))) * comult_component(p, q);
    }
    return s;
  }

  /// Traces of the H basis on B^n.
  Vector h_character(std::size_t n) const {
    Vector t;
    for (const auto& a : degrees[n].action) t.push_back(a.trace());
    return t;
  }

  /// Flat index of (degree, r).
  std::size_t offset(std::size_t n) const {
    std::size_t o = 0;
    for (std::size_t k = 0; k < n; ++k) o += dim(k);
    return o;
  }

 private:
  mutable std::map<std::pair<std::size_t, std::size_t>, Matrix> comult_cache_;
  std::shared_ptr<std::mutex> cache_mu_ = std::make_shared<std::mutex>();
};

namespace detail {

/// Applies c on letters (k, k+1) (0-based) of words of length n.
inline Elem apply_braiding_at(const Elem& v, const Matrix& c, std::size_t m, std::size_t n, std::size_t k) {
  std::size_t right = 1;
  for (std::size_t j = k + 2; j < n; ++j) right *= m;
  Elem out;
  for (const auto& [w, x] : v) {
    const std::size_t low = w % right;
    const std::size_t pair = (w / right) % (m * m);
    const std::size_t high = w / (right * m * m);
    for (std::size_t row = 0; row < m * m; ++row) {
      const Cyclotomic& y = c(row, pair);
      if (!y.is_zero()) accumulate(out, (high * m * m + row) * right + low, x * y);
    }
  }
  return out;
}

}  // namespace detail

/// Builds B(V) degree by degree up to max_degree. With require_finite, a
/// nonzero component at max_degree throws DegreeBudgetExceeded.
inline NicholsAlgebra build_nichols(const FDHopf& h, const YDModule& v, std::size_t max_degree = 12,
                                    bool require_finite = false, std::size_t max_width = 6000) {
  if (max_degree < 1) throw config_error("ConfigInvalid", "max_degree must be at least 1");
  NicholsAlgebra b;
  b.V = v;
  const std::size_t m = v.dim;
  b.c = braiding(v, v);
  if (m > 0 && !braid_relation_holds(b.c, m))
    throw invariant_error("BraidRelationFailed", "braiding does not satisfy the braid relation");

  NicholsDegree d0;
  d0.dim = 1;
  d0.words = {0};
  d0.reduce = Matrix::identity(1);
  for (std::size_t a = 0; a < h.dim; ++a) {
    Matrix x(1, 1);
    x(0, 0) = h.counit[a];
    d0.action.push_back(x);
  }
  Tensor unit_co;
  for (const auto& [u, cu] : h.unit) accumulate(unit_co, Key{u, 0}, cu);
  d0.coaction = {unit_co};
  b.degrees.push_back(std::move(d0));

  std::size_t pw = 1;  // m^{n-1}
  for (std::size_t n = 1; n <= max_degree; ++n) {
    const NicholsDegree& prev = b.degrees[n - 1];
    const std::size_t dp = prev.dim, width = m * dp;
    if (width > max_width)
      throw budget_error("BudgetExceeded", "degree " + std::to_string(n) + " needs a " + std::to_string(width) +
                                               "-dimensional kernel computation");
    NicholsDegree d;
    if (width == 0) {
      b.degrees.push_back(std::move(d));
      b.n_top = n - 1;
      break;
    }
    // Projections of words of length n-1, memoized.
    std::map<std::size_t, Vector> proj;
    auto project = [&](std::size_t word) -> const Vector& {
      auto it = proj.find(word);
      if (it != proj.end()) return it->second;
      return proj.emplace(word, b.project_word(n - 1, word)).first->second;
    };
    Matrix mbar(width, width);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t r = 0; r < dp; ++r) {
        const Elem x{{i * pw + prev.words[r], Cyclotomic(1L)}};
        Elem y = x;
        for (std::size_t k = n - 1; k >= 1; --k) {
          y = detail::apply_braiding_at(y, b.c, m, n, k - 1);
          add_scaled(y, x, Cyclotomic(1L));
        }
        for (const auto& [w, coef] : y) {
          const Vector& tail = project(w % pw);
          const std::size_t lead = w / pw;
          for (std::size_t s = 0; s < dp; ++s)
            if (!tail[s].is_zero()) mbar(lead * dp + s, i * dp + r) += coef * tail[s];
        }
      }
    auto ech = row_reduce(mbar);
    d.dim = ech.pivots.size();
    if (d.dim == 0) {
      b.degrees.push_back(std::move(d));
      b.n_top = n - 1;
      break;
    }
    d.reduce = std::move(ech.rref);
    for (auto p : ech.pivots) {
      d.split.emplace_back(p / dp, p % dp);
      d.words.push_back((p / dp) * pw + prev.words[p % dp]);
    }
    // Action: pi_n (rho_V(h1) (x) rho_{n-1}(h2)) on pivot pairs.
    for (std::size_t a = 0; a < h.dim; ++a) {
      Matrix act(d.dim, d.dim);
      for (std::size_t r = 0; r < d.dim; ++r) {
        const auto [i, s] = d.split[r];
        Vector big(width);
        for (const auto& [k, coef] : h.comult[a])
          for (std::size_t i2 = 0; i2 < m; ++i2) {
            const Cyclotomic& x = v.action[k[0]](i2, i);
            if (x.is_zero()) continue;
            for (std::size_t s2 = 0; s2 < dp; ++s2) {
              const Cyclotomic& y = prev.action[k[1]](s2, s);
              if (!y.is_zero()) big[i2 * dp + s2] += coef * x * y;
            }
          }
        const Vector col = d.reduce * big;
        for (std::size_t t = 0; t < d.dim; ++t) act(t, r) = col[t];
      }
      d.action.push_back(std::move(act));
    }
    // Coaction: (x_i b)_{-1} (x) (x_i b)_0 = (x_i)_{-1} b_{-1} (x) (x_i)_0 b_0.
    d.coaction.resize(d.dim);
    for (std::size_t r = 0; r < d.dim; ++r) {
      const auto [i, s] = d.split[r];
      for (const auto& [k1, c1] : v.coaction[i])
        for (const auto& [k2, c2] : prev.coaction[s]) {
          const Elem g = h.mul_basis(k1[0], k2[0]);
          for (std::size_t t = 0; t < d.dim; ++t) {
            const Cyclotomic& x = d.reduce(t, k1[1] * dp + k2[1]);
            if (x.is_zero()) continue;
            for (const auto& [gi, gc] : g) accumulate(d.coaction[r], Key{gi, t}, c1 * c2 * gc * x);
          }
        }
    }
    b.degrees.push_back(std::move(d));
    pw *= m;
  }
  if (!b.n_top && require_finite)
    throw budget_error("DegreeBudgetExceeded",
                       "no zero component up to degree " + std::to_string(max_degree));
  return b;
}

struct TopData {
  std::size_t n_top = 0;
  std::size_t x_top_word = 0;  // word of V^{(x)n_top} spanning the top degree
  Elem g_top;
  std::vector<Matrix> lambda;  // 1x1 action matrices
};

/// Top-degree data. Throws TopNotOneDimensional if the top component is not
/// a line with group-like coaction.
inline TopData top_data(const FDHopf& h, const NicholsAlgebra& b) {
  if (!b.n_top) throw budget_error("DegreeBudgetExceeded", "Nichols algebra not known to be finite");
  TopData t;
  t.n_top = *b.n_top;
  const NicholsDegree& d = b.degrees[t.n_top];
  if (d.dim != 1) throw invariant_error("TopNotOneDimensional", "top component has dimension " + std::to_string(d.dim));
  t.x_top_word = d.words[0];
  for (const auto& [k, c] : d.coaction[0]) {
    if (k[1] != 0) throw invariant_error("TopNotOneDimensional", "coaction leaves the top line");
    accumulate(t.g_top, k[0], c);
  }
  if (!is_grouplike(h, t.g_top)) throw invariant_error("TopNotOneDimensional", "top coaction is not group-like");
  t.lambda = d.action;
  return t;
}

/// The Nichols algebra as braided Hopf data on the flat basis, for bosonization.
inline BraidedHopfData to_braided_data(const NicholsAlgebra& b) {
  if (!b.n_top) throw budget_error("DegreeBudgetExceeded", "Nichols algebra not known to be finite");
  const std::size_t top = *b.n_top, n = b.total_dim();
  BraidedHopfData out;
  out.dim = n;
  for (std::size_t p = 0; p <= top; ++p)
    for (std::size_t r = 0; r < b.dim(p); ++r) out.labels.push_back("b" + std::to_string(p) + "_" + std::to_string(r));
  out.mult.assign(n * n, Elem{});
  for (std::size_t p = 0; p <= top; ++p)
    for (std::size_t q = 0; p + q <= top; ++q) {
      const Matrix mm = b.mult_matrix(p, q);
      for (std::size_t r = 0; r < b.dim(p); ++r)
        for (std::size_t s = 0; s < b.dim(q); ++s)
          for (std::size_t t = 0; t < mm.rows(); ++t)
            accumulate(out.mult[(b.offset(p) + r) * n + b.offset(q) + s], b.offset(p + q) + t, mm(t, r * b.dim(q) + s));
    }
  out.unit = basis_elem(0);
  out.comult.assign(n, Tensor{});
  for (std::size_t k = 0; k <= top; ++k)
    for (std::size_t p = 0; p <= k; ++p) {
      const std::size_t q = k - p;
      const Matrix d = b.comult_component(p, q);
      for (std::size_t r = 0; r < b.dim(k); ++r)
        for (std::size_t a = 0; a < b.dim(p); ++a)
          for (std::size_t c = 0; c < b.dim(q); ++c)
            accumulate(out.comult[b.offset(k) + r], Key{b.offset(p) + a, b.offset(q) + c}, d(a * b.dim(q) + c, r));
    }
  out.counit.assign(n, Cyclotomic());
  out.counit[0] = Cyclotomic(1L);
  out.antipode = Matrix(n, n);
  for (std::size_t k = 0; k <= top; ++k) {
    const Matrix s = b.antipode_component(k);
    for (std::size_t i = 0; i < b.dim(k); ++i)
      for (std::size_t j = 0; j < b.dim(k); ++j) out.antipode(b.offset(k) + i, b.offset(k) + j) = s(i, j);
  }
  const std::size_t hdim = b.degrees[0].action.size();
  for (std::size_t a = 0; a < hdim; ++a) {
    Matrix m(n, n);
    for (std::size_t k = 0; k <= top; ++k)
      for (std::size_t i = 0; i < b.dim(k); ++i)
        for (std::size_t j = 0; j < b.dim(k); ++j) m(b.offset(k) + i, b.offset(k) + j) = b.degrees[k].action[a](i, j);
    out.action.push_back(std::move(m));
  }
  out.coaction.assign(n, Tensor{});
  for (std::size_t k = 0; k <= top; ++k)
    for (std::size_t r = 0; r < b.dim(k); ++r)
      for (const auto& [key, c] : b.degrees[k].coaction[r])
        accumulate(out.coaction[b.offset(k) + r], Key{key[0], b.offset(k) + key[1]}, c);
  return out;
}

}  // namespace trideco
