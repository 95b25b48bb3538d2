#pragma once

// Graded representation theory of u(V, oV, H): standard modules, simple
// heads, graded characters, BGG reciprocity and projective covers.

#include "trideco/triangular.hpp"
#include "trideco/weights.hpp"

namespace trideco {

/// Z-graded u-module: x_i lowers the degree by one, y_j raises it, H preserves it.
struct GradedModule {
  std::vector<int> degree;     // per basis vector
  std::vector<Matrix> x, y, h;  // per V basis, oV basis, H basis

  std::size_t dim() const { return degree.size(); }
  std::vector<Matrix> generators() const {
    std::vector<Matrix> g = x;
    g.insert(g.end(), y.begin(), y.end());
    g.insert(g.end(), h.begin(), h.end());
    return g;
  }
  std::vector<std::size_t> in_degree(int d) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dim(); ++i)
      if (degree[i] == d) out.push_back(i);
    return out;
  }
  std::map<int, std::size_t> dims() const {
    std::map<int, std::size_t> out;
    for (int d : degree) ++out[d];
    return out;
  }
};

/// Matrices of u elements on a module; words in x and y are cached.
class ModuleActor {
 public:
  ModuleActor(const TriangularHopf& u, const GradedModule& m) : u_(u), m_(m) {
    for (std::size_t r = 0; r < u.fm.size(); ++r)
      minus_.push_back(word(m.x, TriangularHopf::letter_chain(u.BV, u.fm, r)));
    for (std::size_t s = 0; s < u.fp.size(); ++s)
      plus_.push_back(word(m.y, TriangularHopf::letter_chain(u.BoV, u.fp, s)));
  }

  const Matrix& minus(std::size_t r) const { return minus_[r]; }
  const Matrix& plus(std::size_t s) const { return plus_[s]; }

  Matrix triple(std::size_t t) const {
    const Triple tr = u_.triple(t);
    Matrix m = m_.h[tr.h];
    if (tr.minus != 0) m = minus_[tr.minus] * m;
    if (tr.plus != 0) m = m * plus_[tr.plus];
    return m;
  }

  Matrix operator()(const Elem& e) const {
    Matrix out(m_.dim(), m_.dim());
    for (const auto& [t, c] : e) out += triple(t) * c;
    return out;
  }

 private:
  Matrix word(const std::vector<Matrix>& gens, const std::vector<std::size_t>& letters) const {
    Matrix m = Matrix::identity(m_.dim());
    for (auto l : letters) m = m * gens[l];
    return m;
  }

  const TriangularHopf& u_;
  const GradedModule& m_;
  std::vector<Matrix> minus_, plus_;
};

/// First defining relation of u violated on m, if any. Checks degrees and
/// rho(g) rho(t) = rho(g t) for generators g against H, B(V) and B(oV).
inline std::optional<std::string> module_failure(const TriangularHopf& u, const GradedModule& m) {
  const std::size_t n = m.dim();
  if (m.x.size() != u.V.dim || m.y.size() != u.oV.dim || m.h.size() != u.H().dim) return "wrong number of generators";
  auto degree_ok = [&](const Matrix& a, int shift) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!a(i, j).is_zero() && m.degree[i] != m.degree[j] + shift) return false;
    return true;
  };
  for (const auto& a : m.x)
    if (!degree_ok(a, -1)) return "x does not lower the degree by one";
  for (const auto& a : m.y)
    if (!degree_ok(a, 1)) return "y does not raise the degree by one";
  for (const auto& a : m.h)
    if (!degree_ok(a, 0)) return "H does not preserve the degree";
  if (auto f = trideco::module_failure(u.H(), m.h)) return "H: " + *f;

  const ModuleActor act(u, m);
  auto check = [&](const Elem& g, const Matrix& rg, std::size_t t) -> bool {
    return rg * act.triple(t) == act(u.multiply(g, basis_elem(t)));
  };
  const Elem one = u.H().unit;
  for (std::size_t i = 0; i < u.V.dim; ++i) {
    const Elem g = u.x(i);
    for (std::size_t r = 0; r < u.fm.size(); ++r)
      for (const auto& [t, c] : u.embed_terms(r, one, 0))
        if (!check(g, m.x[i], t)) return "Nichols relation in B(V) fails";
  }
  for (std::size_t j = 0; j < u.oV.dim; ++j) {
    const Elem g = u.y(j);
    for (std::size_t s = 0; s < u.fp.size(); ++s)
      for (const auto& [t, c] : u.embed_terms(0, one, s))
        if (!check(g, m.y[j], t)) return "Nichols relation in B(oV) fails";
    for (std::size_t i = 0; i < u.V.dim; ++i)
      if (m.y[j] * m.x[i] != act(u.multiply(g, u.x(i)))) return "straightening relation fails";
  }
  for (std::size_t a = 0; a < u.H().dim; ++a) {
    const Elem g = u.embed_h(basis_elem(a));
    for (std::size_t i = 0; i < u.V.dim; ++i)
      if (m.h[a] * m.x[i] != act(u.multiply(g, u.x(i)))) return "smash relation with V fails";
    for (std::size_t j = 0; j < u.oV.dim; ++j)
      if (m.h[a] * m.y[j] != act(u.multiply(g, u.y(j)))) return "smash relation with oV fails";
  }
  return std::nullopt;
}

inline void require_module(const TriangularHopf& u, const GradedModule& m) {
  if (auto f = module_failure(u, m)) throw invariant_error("NotAModule", *f);
}

namespace detail {

/// Action matrices of the generators through a rule sending (generator,
/// source basis vector) to the image vector.
template <class Image>
GradedModule module_from_rule(const TriangularHopf& u, std::vector<int> degree, Image image) {
  GradedModule m;
  m.degree = std::move(degree);
  const std::size_t n = m.degree.size();
  auto fill = [&](const Elem& g) {
    Matrix out(n, n);
    image(g, out);
    return out;
  };
  for (std::size_t i = 0; i < u.V.dim; ++i) m.x.push_back(fill(u.x(i)));
  for (std::size_t j = 0; j < u.oV.dim; ++j) m.y.push_back(fill(u.y(j)));
  for (std::size_t a = 0; a < u.H().dim; ++a) m.h.push_back(fill(u.embed_h(basis_elem(a))));
  return m;
}

inline int degree_of_column(const GradedModule& m, const Matrix& b, std::size_t c) {
  for (std::size_t i = 0; i < b.rows(); ++i)
    if (!b(i, c).is_zero()) return m.degree[i];
  throw invariant_error("ZeroColumn", "basis column is zero");
}

}  // namespace detail

/// Submodule spanned by homogeneous basis columns.
inline GradedModule graded_submodule(const GradedModule& m, const Matrix& basis) {
  GradedModule out;
  for (std::size_t c = 0; c < basis.cols(); ++c) out.degree.push_back(detail::degree_of_column(m, basis, c));
  out.x = restrict_action(m.x, basis);
  out.y = restrict_action(m.y, basis);
  out.h = restrict_action(m.h, basis);
  return out;
}

/// Quotient by a graded submodule given by homogeneous basis columns.
inline GradedModule graded_quotient(const GradedModule& m, const Matrix& sub) {
  GradedModule out;
  Matrix lift;
  const auto all = quotient_action(m.generators(), sub, &lift);
  for (std::size_t c = 0; c < lift.cols(); ++c) out.degree.push_back(detail::degree_of_column(m, lift, c));
  const std::size_t nx = m.x.size(), ny = m.y.size();
  out.x.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(nx));
  out.y.assign(all.begin() + static_cast<std::ptrdiff_t>(nx), all.begin() + static_cast<std::ptrdiff_t>(nx + ny));
  out.h.assign(all.begin() + static_cast<std::ptrdiff_t>(nx + ny), all.end());
  return out;
}

inline GradedModule shifted(GradedModule m, int i) {
  for (auto& d : m.degree) d += i;
  return m;
}

/// An H-module placed in degree 0 with x and y acting by zero.
inline GradedModule inflate(const TriangularHopf& u, const std::vector<Matrix>& lam) {
  GradedModule m;
  const std::size_t d = lam.front().rows();
  m.degree.assign(d, 0);
  m.x.assign(u.V.dim, Matrix(d, d));
  m.y.assign(u.oV.dim, Matrix(d, d));
  m.h = lam;
  return m;
}

/// Ind(lam) = u (x)_H lam on the basis x_r y_s (x) v.
inline GradedModule induced(const TriangularHopf& u, const std::vector<Matrix>& lam, std::size_t budget = 4096) {
  const std::size_t d = lam.front().rows(), np = u.fp.size(), n = u.fm.size() * np * d;
  if (n > budget) throw budget_error("BudgetExceeded", "Ind has dimension " + std::to_string(n));
  auto idx = [&](std::size_t r, std::size_t s, std::size_t v) { return (r * np + s) * d + v; };
  std::vector<int> degree(n);
  for (std::size_t r = 0; r < u.fm.size(); ++r)
    for (std::size_t s = 0; s < np; ++s)
      for (std::size_t v = 0; v < d; ++v)
        degree[idx(r, s, v)] = static_cast<int>(u.fp.degree[s]) - static_cast<int>(u.fm.degree[r]);
  const FDHopf& h = u.H();
  return detail::module_from_rule(u, std::move(degree), [&](const Elem& g, Matrix& out) {
    for (std::size_t r = 0; r < u.fm.size(); ++r)
      for (std::size_t s = 0; s < np; ++s)
        // x_r' h y_s' (x) v = x_r' (h_1 . y_s') (x) h_2 v
        for (const auto& [t, c] : u.multiply(g, u.embed_terms(r, h.unit, s))) {
          const Triple tr = u.triple(t);
          const std::size_t q = u.fp.degree[tr.plus], loc = u.fp.local[tr.plus];
          for (const auto& [k, ck] : h.comult[tr.h]) {
            const Matrix& a = u.BoV.degrees[q].action[k[0]];
            for (std::size_t s2 = 0; s2 < a.rows(); ++s2) {
              if (a(s2, loc).is_zero()) continue;
              const Cyclotomic f = c * ck * a(s2, loc);
              const std::size_t target = u.fp.start[q] + s2;
              for (std::size_t v = 0; v < d; ++v)
                for (std::size_t v2 = 0; v2 < d; ++v2)
                  if (!lam[k[1]](v2, v).is_zero()) out(idx(tr.minus, target, v2), idx(r, s, v)) += f * lam[k[1]](v2, v);
            }
          }
        }
  });
}

/// Verma module M(lam) = u (x)_{B+} lam on the basis x_r (x) v, degrees -n_top..0.
inline GradedModule verma(const TriangularHopf& u, const std::vector<Matrix>& lam) {
  const std::size_t d = lam.front().rows(), n = u.fm.size() * d;
  std::vector<int> degree(n);
  for (std::size_t r = 0; r < u.fm.size(); ++r)
    for (std::size_t v = 0; v < d; ++v) degree[r * d + v] = -static_cast<int>(u.fm.degree[r]);
  return detail::module_from_rule(u, std::move(degree), [&](const Elem& g, Matrix& out) {
    for (std::size_t r = 0; r < u.fm.size(); ++r)
      for (const auto& [t, c] : u.multiply(g, u.embed_terms(r, u.H().unit, 0))) {
        const Triple tr = u.triple(t);
        if (tr.plus != 0) continue;  // (B+)_{>0} kills lam
        for (std::size_t v = 0; v < d; ++v)
          for (std::size_t v2 = 0; v2 < d; ++v2)
            if (!lam[tr.h](v2, v).is_zero()) out(tr.minus * d + v2, r * d + v) += c * lam[tr.h](v2, v);
      }
  });
}

/// Generators of Ind(lam) of the form z (x) v for z in a flat index set.
inline Matrix induced_generators(const TriangularHopf& u, std::size_t d, bool plus_side) {
  const std::size_t np = u.fp.size();
  const auto& flat = plus_side ? u.fp : u.fm;
  std::vector<std::size_t> ones;  // flat indices in degree one (none when V = 0)
  for (std::size_t i = 0; i < flat.size(); ++i)
    if (flat.degree[i] == 1) ones.push_back(i);
  const std::size_t count = ones.size();
  Matrix g(u.fm.size() * np * d, count * d);
  for (std::size_t k = 0; k < count; ++k)
    for (std::size_t v = 0; v < d; ++v) {
      const std::size_t r = plus_side ? 0 : ones[k], s = plus_side ? ones[k] : 0;
      g((r * np + s) * d + v, k * d + v) = 1;
    }
  return g;
}

/// coVerma module W(lam) = u (x)_{B-} lam, degrees 0..n_top, as a quotient of Ind(lam).
inline GradedModule coverma(const TriangularHopf& u, const std::vector<Matrix>& lam, std::size_t budget = 4096) {
  const GradedModule ind = induced(u, lam, budget);
  const std::size_t d = lam.front().rows();
  const Matrix sub = spin(ind.generators(), induced_generators(u, d, false));
  GradedModule w = graded_quotient(ind, sub);
  if (w.dim() != u.fp.size() * d) throw invariant_error("CoVermaShape", "W(lam) does not have dimension dim B(oV) dim lam");
  return w;
}

/// Ind(lam) / <y (x) lam>, the Verma module as a quotient; used to cross-check verma().
inline GradedModule verma_as_quotient(const TriangularHopf& u, const std::vector<Matrix>& lam, std::size_t budget = 4096) {
  const GradedModule ind = induced(u, lam, budget);
  const Matrix sub = spin(ind.generators(), induced_generators(u, lam.front().rows(), true));
  return graded_quotient(ind, sub);
}

/// Maximal graded submodule of a module generated in degree 0 with nothing
/// above degree 0: the vectors in negative degrees that B+ cannot lift back to degree 0.
inline Matrix maximal_submodule(const TriangularHopf& u, const GradedModule& m) {
  const ModuleActor act(u, m);
  const auto top = m.in_degree(0);
  std::vector<Vector> cols;
  for (const auto& [deg, count] : m.dims()) {
    if (deg > 0) throw invariant_error("NotHighestWeight", "module has components above degree 0");
    if (deg == 0) continue;
    const auto src = m.in_degree(deg);
    const std::size_t n = static_cast<std::size_t>(-deg);
    std::vector<std::size_t> plus_basis;
    if (n < u.fp.start.size() - 1)
      for (std::size_t s = u.fp.start[n]; s < u.fp.start[n + 1]; ++s) plus_basis.push_back(s);
    Matrix stacked(plus_basis.size() * top.size(), src.size());
    for (std::size_t k = 0; k < plus_basis.size(); ++k) {
      const Matrix& b = act.plus(plus_basis[k]);
      for (std::size_t i = 0; i < top.size(); ++i)
        for (std::size_t j = 0; j < src.size(); ++j) stacked(k * top.size() + i, j) = b(top[i], src[j]);
    }
    const Matrix ker = kernel_basis(stacked);
    for (std::size_t c = 0; c < ker.cols(); ++c) {
      Vector v(m.dim());
      for (std::size_t j = 0; j < src.size(); ++j) v[src[j]] = ker(j, c);
      cols.push_back(std::move(v));
    }
  }
  const Matrix n = columns_to_matrix(m.dim(), cols);
  if (spin(m.generators(), n).cols() != n.cols()) throw invariant_error("NotAStable", "maximal submodule is not u-stable");
  return n;
}

/// The simple head L(lam) of a Verma module.
inline GradedModule head(const TriangularHopf& u, const GradedModule& m) {
  return graded_quotient(m, maximal_submodule(u, m));
}

struct LowestWeight {
  std::size_t weight = 0;
  int degree = 0;
};

inline LowestWeight lowest_weight(const GradedModule& l, const WeightTable& table) {
  const int bottom = l.dims().begin()->first;
  const auto idx = l.in_degree(bottom);
  Matrix b(l.dim(), idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) b(idx[k], k) = 1;
  for (const auto& x : l.x)
    if (!(x * b).is_zero()) throw invariant_error("BottomNotSimple", "x does not kill the bottom component");
  try {
    return {table.index_of(restrict_action(l.h, b)), bottom};
  } catch (const Error&) {
    throw invariant_error("BottomNotSimple", "bottom component is not a simple H-module");
  }
}

// ---------------------------------------------------------------------------
// Graded characters and decomposition polynomials.

using Laurent = std::map<int, long long>;  // degree -> coefficient

inline void add_to(Laurent& p, int d, long long c) {
  if (c == 0) return;
  if ((p[d] += c) == 0) p.erase(d);
}

inline Laurent bar(const Laurent& p) {
  Laurent out;
  for (const auto& [d, c] : p) out[-d] = c;
  return out;
}

inline Laurent operator*(const Laurent& p, const Laurent& q) {
  Laurent out;
  for (const auto& [d, c] : p)
    for (const auto& [e, k] : q) add_to(out, d + e, c * k);
  return out;
}

inline long long at_one(const Laurent& p) {
  long long s = 0;
  for (const auto& [d, c] : p) s += c;
  return s;
}

/// Per-weight Laurent polynomials.
using DecompPolynomial = std::vector<Laurent>;

struct GradedCharacter {
  std::map<int, std::vector<long long>> terms;  // degree -> multiplicity of each weight

  void add(int d, const std::vector<long long>& v, long long scale = 1) {
    auto& slot = terms[d];
    if (slot.empty()) slot.assign(v.size(), 0);
    bool zero = true;
    for (std::size_t w = 0; w < v.size(); ++w) {
      slot[w] += scale * v[w];
      if (slot[w] != 0) zero = false;
    }
    if (zero) terms.erase(d);
  }
  void add(const GradedCharacter& o, int shift = 0, long long scale = 1) {
    for (const auto& [d, v] : o.terms) add(d + shift, v, scale);
  }
  bool empty() const { return terms.empty(); }
  friend bool operator==(const GradedCharacter& a, const GradedCharacter& b) { return a.terms == b.terms; }
  friend bool operator!=(const GradedCharacter& a, const GradedCharacter& b) { return !(a == b); }

  int top() const { return terms.rbegin()->first; }
  int bottom() const { return terms.begin()->first; }

  std::size_t dimension(const WeightTable& table) const {
    long long s = 0;
    for (const auto& [d, v] : terms)
      for (std::size_t w = 0; w < v.size(); ++w) s += v[w] * static_cast<long long>(table.weights[w].dim);
    return static_cast<std::size_t>(s);
  }
};

inline GradedCharacter delta_character(std::size_t weight, int degree, std::size_t count) {
  GradedCharacter ch;
  std::vector<long long> v(count, 0);
  v[weight] = 1;
  ch.add(degree, v);
  return ch;
}

inline GradedCharacter graded_character(const GradedModule& m, const WeightTable& table) {
  GradedCharacter ch;
  for (const auto& [deg, count] : m.dims()) {
    const auto idx = m.in_degree(deg);
    Vector chi;
    for (const auto& a : m.h) {
      Cyclotomic t;
      for (auto i : idx) t += a(i, i);
      chi.push_back(t);
    }
    ch.add(deg, table.decompose(chi));
  }
  return ch;
}

/// Graded character of an H-module tensor product, through the fusion rules.
inline GradedCharacter product(const GradedCharacter& a, const GradedCharacter& b, const WeightTable& table) {
  GradedCharacter out;
  const std::size_t n = table.size();
  for (const auto& [d, va] : a.terms)
    for (const auto& [e, vb] : b.terms)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t m = 0; m < n; ++m)
          if (va[l] != 0 && vb[m] != 0) out.add(d + e, table.fusion(l, m), va[l] * vb[m]);
  return out;
}

/// Coefficients of ch in a unitriangular basis {basis[w] t^i}. Each basis
/// character has weight w alone in degree 0, which is its top degree when
/// from_top and its bottom degree otherwise.
inline DecompPolynomial decompose(GradedCharacter ch, const std::vector<GradedCharacter>& basis, bool from_top) {
  DecompPolynomial p(basis.size());
  if (ch.empty()) return p;
  int width = 0;
  for (std::size_t w = 0; w < basis.size(); ++w) {
    const auto& b = basis[w];
    if (b.empty() || (from_top ? b.top() : b.bottom()) != 0) throw invariant_error("NotInLattice", "basis is not unitriangular");
    std::vector<long long> lead(basis.size(), 0);
    lead[w] = 1;
    if (b.terms.at(0) != lead) throw invariant_error("NotInLattice", "basis is not unitriangular");
    width += b.top() - b.bottom();
  }
  const int limit_lo = ch.bottom() - width - 1, limit_hi = ch.top() + width + 1;
  while (!ch.empty()) {
    const int d = from_top ? ch.top() : ch.bottom();
    if (d < limit_lo || d > limit_hi) throw invariant_error("NotInLattice", "character is outside the lattice");
    const auto& v = ch.terms.at(d);
    std::size_t w = 0;
    while (v[w] == 0) ++w;
    const long long c = v[w];
    add_to(p[w], d, c);
    ch.add(basis[w], d, -c);
  }
  return p;
}

inline GradedCharacter recombine(const DecompPolynomial& p, const std::vector<GradedCharacter>& basis) {
  GradedCharacter out;
  for (std::size_t w = 0; w < p.size(); ++w)
    for (const auto& [d, c] : p[w]) out.add(basis[w], d, c);
  return out;
}

/// ch P(mu) = sum_lam overline(p_{M(lam), L(mu)}) ch M(lam), given the
/// decomposition of each Verma character in the simple basis.
inline std::vector<GradedCharacter> projective_characters_bgg(const std::vector<DecompPolynomial>& verma_in_l,
                                                              const std::vector<GradedCharacter>& verma_chars) {
  const std::size_t n = verma_chars.size();
  std::vector<GradedCharacter> out(n);
  for (std::size_t mu = 0; mu < n; ++mu)
    for (std::size_t lam = 0; lam < n; ++lam)
      for (const auto& [d, c] : bar(verma_in_l[lam][mu])) out[mu].add(verma_chars[lam], d, c);
  return out;
}

// ---------------------------------------------------------------------------
// Homomorphisms, projective covers, duals and tensor products.

/// Degree-preserving homomorphisms Ind(lam) -> N, one per H-map lam -> N_0
/// (Frobenius reciprocity). Columns of the result are indexed like Ind(lam).
inline std::vector<Matrix> homs_from_induced(const TriangularHopf& u, const std::vector<Matrix>& lam,
                                             const GradedModule& target) {
  const std::size_t d = lam.front().rows(), np = u.fp.size();
  const auto zero = target.in_degree(0);
  Matrix b(target.dim(), zero.size());
  for (std::size_t k = 0; k < zero.size(); ++k) b(zero[k], k) = 1;
  const ModuleActor act(u, target);
  std::vector<Matrix> out;
  for (const auto& x : intertwiners(restrict_action(target.h, b), lam)) {
    const Matrix phi = b * x;  // lam -> N
    Matrix f(target.dim(), u.fm.size() * np * d);
    for (std::size_t r = 0; r < u.fm.size(); ++r)
      for (std::size_t s = 0; s < np; ++s) {
        const Matrix img = act.minus(r) * act.plus(s) * phi;
        for (std::size_t v = 0; v < d; ++v)
          for (std::size_t i = 0; i < target.dim(); ++i) f(i, (r * np + s) * d + v) = img(i, v);
      }
    out.push_back(std::move(f));
  }
  return out;
}

/// Indecomposable graded summands of Ind(lam), each as a basis of columns
/// inside Ind(lam), by Fitting splitting along degree-0 endomorphisms.
inline std::vector<Matrix> indecomposable_summands(const TriangularHopf& u, const std::vector<Matrix>& lam,
                                                   const GradedModule& ind) {
  const auto ends = homs_from_induced(u, lam, ind);
  const int field = u.H().field_order;
  struct Piece {
    Matrix basis, proj;  // proj * basis = 1, proj kills the other pieces
  };
  std::vector<Piece> stack{{Matrix::identity(ind.dim()), Matrix::identity(ind.dim())}};
  std::vector<Matrix> done;
  while (!stack.empty()) {
    Piece p = std::move(stack.back());
    stack.pop_back();
    const std::size_t n = p.basis.cols();
    std::vector<Matrix> local;
    for (const auto& e : ends) {
      Matrix m = p.proj * e * p.basis;
      if (!m.is_zero()) local.push_back(std::move(m));
    }
    std::optional<std::pair<Matrix, Matrix>> split;
    auto try_split = [&](const Matrix& phi) {
      if (split || is_scalar_matrix(phi)) return;
      const auto evs = exact_eigenvalues(phi, field, false);
      if (evs.size() < 2) return;
      Matrix psi = phi;
      for (std::size_t i = 0; i < n; ++i) psi(i, i) -= evs.front();
      Matrix power = psi;
      for (std::size_t k = 1; k < n; ++k) power = power * psi;
      split.emplace(kernel_basis(power), column_space(power));
    };
    for (const auto& phi : local) try_split(phi);
    for (std::size_t i = 0; i < local.size() && !split; ++i)
      for (std::size_t j = 0; j < local.size() && !split; ++j) try_split(local[i] * local[j]);
    if (!split) {
      // With no splitting element left, the summand must be local: End/rad = k,
      // i.e. the trace form on End has rank one.
      Matrix form(local.size(), local.size());
      for (std::size_t i = 0; i < local.size(); ++i)
        for (std::size_t j = 0; j < local.size(); ++j) form(i, j) = (local[i] * local[j]).trace();
      if (rank(form) != 1) throw config_error("FieldNotSplitting", "could not split a decomposable summand of Ind");
      done.push_back(p.basis);
      continue;
    }
    const auto& [ker, img] = *split;
    const auto full = inverse(Matrix::hstack(ker, img));
    if (!full) throw invariant_error("FittingSplit", "kernel and image are not complementary");
    std::vector<std::size_t> a(ker.cols()), b(img.cols());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = i;
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = a.size() + i;
    stack.push_back({p.basis * ker, full->select_rows(a) * p.proj});
    stack.push_back({p.basis * img, full->select_rows(b) * p.proj});
  }
  return done;
}

/// Projective cover P(lam): the summand of Ind(lam) that maps onto L(lam).
inline GradedModule projective_cover(const TriangularHopf& u, const std::vector<Matrix>& lam, const GradedModule& simple,
                                     std::size_t budget = 4096) {
  const GradedModule ind = induced(u, lam, budget);
  const auto to_l = homs_from_induced(u, lam, simple);
  if (to_l.size() != 1) throw invariant_error("NotSimple", "degree-0 part of L(lam) is not lam");
  for (const auto& b : indecomposable_summands(u, lam, ind))
    if (!(to_l.front() * b).is_zero()) return graded_submodule(ind, b);
  throw invariant_error("NoProjectiveCover", "no summand of Ind maps onto L(lam)");
}

/// N* with (N*)_n = (N_{-n})* and a acting by rho(S a)^T.
inline GradedModule dual_module(const TriangularHopf& u, const GradedModule& m) {
  const ModuleActor act(u, m);
  GradedModule out;
  for (int d : m.degree) out.degree.push_back(-d);
  for (std::size_t i = 0; i < u.V.dim; ++i) out.x.push_back(act(u.S(u.x(i))).transpose());
  for (std::size_t j = 0; j < u.oV.dim; ++j) out.y.push_back(act(u.S(u.y(j))).transpose());
  for (std::size_t a = 0; a < u.H().dim; ++a) out.h.push_back(act(u.S(u.embed_h(basis_elem(a)))).transpose());
  return out;
}

inline Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (!b(k, l).is_zero()) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

/// M (x) N with the diagonal action through Delta.
inline GradedModule tensor_module(const TriangularHopf& u, const GradedModule& m, const GradedModule& n) {
  const ModuleActor am(u, m), an(u, n);
  GradedModule out;
  for (int d : m.degree)
    for (int e : n.degree) out.degree.push_back(d + e);
  auto through_delta = [&](const Elem& g) {
    Matrix r(m.dim() * n.dim(), m.dim() * n.dim());
    for (const auto& [k, c] : u.delta(g)) r += kronecker(am.triple(k[0]), an.triple(k[1])) * c;
    return r;
  };
  for (std::size_t i = 0; i < u.V.dim; ++i) out.x.push_back(through_delta(u.x(i)));
  for (std::size_t j = 0; j < u.oV.dim; ++j) out.y.push_back(through_delta(u.y(j)));
  for (std::size_t a = 0; a < u.H().dim; ++a) out.h.push_back(through_delta(u.embed_h(basis_elem(a))));
  return out;
}

// ---------------------------------------------------------------------------
// Rigid modules over a Drinfeld double.

struct RigidModule {
  std::size_t weight = 0;
  Elem g;       // group-like of K
  Elem eta;     // group-like of K*, as coordinates on the dual basis
};

/// One-dimensional weights eta (x) g with g (x) eta central in D(K) and acting
/// trivially on V. `k` is the group-like source Hopf algebra of the double.
inline std::vector<RigidModule> rigid_modules(const TriangularHopf& u, const FDHopf& k, const WeightTable& table) {
  const FDHopf& d = u.H();
  const std::size_t n = k.dim;
  if (d.dim != n * n) throw config_error("ConfigInvalid", "rigid_modules needs the Drinfeld double of K");
  const FDHopf kstar = dual_hopf(k);
  std::vector<RigidModule> out;
  for (const auto& g : grouplikes(k))
    for (const auto& eta : grouplikes(kstar)) {
      // eta(a_i) is the coordinate of eta on f_i; f_j(g) is the coefficient of a_j in g.
      auto eta_at = [&](std::size_t i) { return eta.count(i) ? eta.at(i) : Cyclotomic(); };
      auto f_at_g = [&](std::size_t j) { return g.count(j) ? g.at(j) : Cyclotomic(); };
      std::vector<Matrix> lam;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          Matrix m(1, 1);
          m(0, 0) = eta_at(i) * f_at_g(j);
          lam.push_back(m);
        }
      if (trideco::module_failure(d, lam)) continue;
      Elem z;
      for (const auto& [i, gi] : g)
        for (std::size_t j = 0; j < n; ++j) accumulate(z, i * n + j, gi * eta_at(j));
      if (!is_central(d, z)) continue;
      if (act_matrix(u.V.action, z, u.V.dim) != Matrix::identity(u.V.dim)) continue;
      out.push_back({table.index_of(lam), g, eta});
    }
  std::sort(out.begin(), out.end(), [](const RigidModule& a, const RigidModule& b) { return a.weight < b.weight; });
  return out;
}

/// One-dimensional weights whose simple head is the weight itself.
inline std::vector<std::size_t> rigid_by_head_scan(const TriangularHopf& u, const WeightTable& table) {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < table.size(); ++w) {
    if (table.weights[w].dim != 1) continue;
    if (head(u, verma(u, table.weights[w].action)).dim() == 1) out.push_back(w);
  }
  return out;
}

}  // namespace trideco
