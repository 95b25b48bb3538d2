#pragma once

// The Hopf algebra u_(H,R)(V) on the normal-form basis B(V) (x) H (x) B(oV).
//
// Elements are sparse maps from triple indices to scalars. Products are
// computed by moving y past x with the straightening relation and H past
// generators with the smash rules; basis products are memoized.

#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <tuple>

#include "trideco/nichols.hpp"

namespace trideco {

struct Triple {
  std::size_t minus = 0;  // flat index in B(V)
  std::size_t h = 0;
  std::size_t plus = 0;  // flat index in B(oV)
};

/// Flat indexing of a Nichols algebra basis across degrees.
struct FlatBasis {
  std::vector<std::size_t> degree, local;
  std::vector<std::size_t> start;  // start[n] = first flat index of degree n

  explicit FlatBasis(const NicholsAlgebra& b) {
    const auto hs = b.hilbert();
    for (std::size_t n = 0; n < hs.size(); ++n) {
      start.push_back(degree.size());
      for (std::size_t r = 0; r < hs[n]; ++r) {
        degree.push_back(n);
        local.push_back(r);
      }
    }
    start.push_back(degree.size());
  }
  FlatBasis() = default;
  std::size_t size() const { return degree.size(); }
  std::size_t top() const { return start.size() - 2; }
};

/// y_j x_i = sum_{i',j'} xy(i', j') x_{i'} y_{j'} + scalar + h_term, where
/// xy comes from (y_{-1} . x) y_0, scalar = <y, x> and
/// h_term = -<y_{-2}, x_{-3}> <y_0, S(x_{-1}) . x_0> x_{-2} y_{-1}. The H factor is
/// x_{-2} y_{-1} rather than y_{-1} x_{-2}: only this order makes the relation a
/// coideal over non-commutative H (the two agree when H is commutative).
struct Straightening {
  Matrix xy;
  Cyclotomic scalar;
  Elem h_term;
};

inline Straightening straighten_generators(const FDHopf& h, const YDModule& v, const YDModule& ov,
                                           const PairingData& p, std::size_t j, std::size_t i) {
  Straightening st;
  st.xy = Matrix(v.dim, ov.dim);
  for (const auto& [k, c] : ov.coaction[j])
    for (std::size_t i2 = 0; i2 < v.dim; ++i2) st.xy(i2, k[1]) += c * v.action[k[0]](i2, i);
  st.scalar = Cyclotomic(i == j ? 1L : 0L);
  const Tensor yc = h.delta_at(ov.coaction[j], 0);                // (y-2, y-1, y0)
  const Tensor xc = h.delta_at(h.delta_at(v.coaction[i], 0), 0);  // (x-3, x-2, x-1, x0)
  std::map<std::size_t, Matrix> s_on_v;
  for (const auto& [ky, cy] : yc)
    for (const auto& [kx, cx] : xc) {
      const Cyclotomic pr = p.pair_basis(ky[0], kx[0]);
      if (pr.is_zero()) continue;
      auto it = s_on_v.find(kx[2]);
      if (it == s_on_v.end()) it = s_on_v.emplace(kx[2], act_matrix(v.action, h.S(basis_elem(kx[2])), v.dim)).first;
      const Cyclotomic ev = it->second(ky[2], kx[3]);
      if (ev.is_zero()) continue;
      add_scaled(st.h_term, h.mul_basis(kx[1], ky[1]), -(cy * cx * pr * ev));
    }
  return st;
}

class TriangularHopf {
 public:
  QuasitriangularHopf base;
  YDModule V, oV;
  NicholsAlgebra BV, BoV;
  PairingData pairing;
  FlatBasis fm, fp;

  const FDHopf& H() const { return base.hopf; }
  std::size_t dim() const { return fm.size() * H().dim * fp.size(); }
  std::size_t index(std::size_t r, std::size_t h, std::size_t s) const { return (r * H().dim + h) * fp.size() + s; }
  Triple triple(std::size_t t) const {
    const std::size_t s = t % fp.size(), rest = t / fp.size();
    return {rest / H().dim, rest % H().dim, s};
  }
  int degree(std::size_t t) const {
    const Triple x = triple(t);
    return static_cast<int>(fp.degree[x.plus]) - static_cast<int>(fm.degree[x.minus]);
  }
  std::string label(std::size_t t) const {
    const Triple x = triple(t);
    return "(" + std::to_string(fm.degree[x.minus]) + ":" + std::to_string(fm.local[x.minus]) + "," +
           H().labels[x.h] + "," + std::to_string(fp.degree[x.plus]) + ":" + std::to_string(fp.local[x.plus]) + ")";
  }

  Elem unit() const { return embed_h(H().unit); }
  Elem embed_h(const Elem& h) const {
    Elem out;
    for (const auto& [a, c] : h) accumulate(out, index(0, a, 0), c);
    return out;
  }
  Elem x(std::size_t i) const { return embed_terms(fm.start[1] + i, H().unit, 0); }
  Elem y(std::size_t j) const { return embed_terms(0, H().unit, fp.start[1] + j); }

  /// yx in normal form.
  const Elem& straighten_yx(std::size_t j, std::size_t i) const { return y_past_minus(j, fm.start[1] + i); }

  Elem multiply(const Elem& u1, const Elem& u2) const {
    Elem out;
    for (const auto& [a, ca] : u1)
      for (const auto& [b, cb] : u2) add_scaled(out, mult_basis(a, b), ca * cb);
    return out;
  }

  const Elem& mult_basis(std::size_t t1, std::size_t t2) const {
    const auto key = std::make_pair(t1, t2);
    {
      std::lock_guard<std::mutex> lock(memo_->mu);
      if (auto it = memo_->mult.find(key); it != memo_->mult.end()) return it->second;
    }
    const Triple a = triple(t1), b = triple(t2);
    // (y-word of a) * b_minus, then * h_b * b_plus, then h_a *, then a_minus *.
    Elem e{{index(b.minus, 0, 0), Cyclotomic(1L)}};
    e = replace_h(e, H().unit);
    const auto letters = letter_chain(BoV, fp, a.plus);
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) e = left_y(*it, e);
    e = right_h_plus(e, b.h, b.plus);
    e = left_h(a.h, e);
    e = left_minus(a.minus, e);
    std::lock_guard<std::mutex> lock(memo_->mu);
    return memo_->mult.emplace(key, std::move(e)).first->second;
  }

  Cyclotomic counit(std::size_t t) const {
    const Triple a = triple(t);
    return (a.minus == 0 && a.plus == 0) ? H().counit[a.h] : Cyclotomic();
  }

  /// Delta of a basis triple in u (x) u, keys (t1, t2).
  const Tensor& comult(std::size_t t) const {
    {
      std::lock_guard<std::mutex> lock(memo_->mu);
      if (auto it = memo_->comult.find(t); it != memo_->comult.end()) return it->second;
    }
    const Triple a = triple(t);
    Tensor d = unit_tensor2();
    for (std::size_t i : letter_chain(BV, fm, a.minus)) d = tensor_mul(d, delta_x(i));
    Tensor dh;
    for (const auto& [k, c] : H().comult[a.h]) accumulate(dh, Key{index(0, k[0], 0), index(0, k[1], 0)}, c);
    d = tensor_mul(d, dh);
    for (std::size_t j : letter_chain(BoV, fp, a.plus)) d = tensor_mul(d, delta_y(j));
    std::lock_guard<std::mutex> lock(memo_->mu);
    return memo_->comult.emplace(t, std::move(d)).first->second;
  }

  Tensor delta(const Elem& u) const {
    Tensor out;
    for (const auto& [t, c] : u) add_scaled(out, comult(t), c);
    return out;
  }

  /// Antipode of a basis triple, extended from the generators as an
  /// anti-homomorphism: S(x) = -S(x_{-1}) x_0, S(y) = -S(y_{-1}) y_0.
  const Elem& antipode(std::size_t t) const {
    {
      std::lock_guard<std::mutex> lock(memo_->mu);
      if (auto it = memo_->antipode.find(t); it != memo_->antipode.end()) return it->second;
    }
    const Triple a = triple(t);
    Elem out = unit();
    const auto ys = letter_chain(BoV, fp, a.plus);
    for (auto it = ys.rbegin(); it != ys.rend(); ++it) out = multiply(out, antipode_gen(oV, *it, false));
    out = multiply(out, embed_h(H().S(basis_elem(a.h))));
    const auto xs = letter_chain(BV, fm, a.minus);
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) out = multiply(out, antipode_gen(V, *it, true));
    std::lock_guard<std::mutex> lock(memo_->mu);
    return memo_->antipode.emplace(t, std::move(out)).first->second;
  }

  Elem S(const Elem& u) const {
    Elem out;
    for (const auto& [t, c] : u) add_scaled(out, antipode(t), c);
    return out;
  }

  Tensor tensor_mul(const Tensor& p, const Tensor& q) const {
    Tensor out;
    for (const auto& [kp, cp] : p)
      for (const auto& [kq, cq] : q) {
        const Elem& l = mult_basis(kp[0], kq[0]);
        if (l.empty()) continue;
        const Elem& r = mult_basis(kp[1], kq[1]);
        for (const auto& [a, ca] : l)
          for (const auto& [b, cb] : r) accumulate(out, Key{a, b}, cp * cq * ca * cb);
      }
    return out;
  }

  /// Builds the straightening data; called by build_u.
  void prepare() {
    fm = FlatBasis(BV);
    fp = FlatBasis(BoV);
    const FDHopf& h = H();
    for (std::size_t c = 0; c < h.dim; ++c)
      s_inv_on_plus_.push_back(plus_action(h.S_inv(basis_elem(c))));
    check_legs();
    gens_.assign(oV.dim, {});
    for (std::size_t j = 0; j < oV.dim; ++j)
      for (std::size_t i = 0; i < V.dim; ++i) gens_[j].push_back(straighten_generators(h, V, oV, pairing, j, i));
    y_cross_.assign(oV.dim, std::vector<std::optional<Elem>>(fm.size()));
  }

  Elem embed_terms(std::size_t r, const Elem& h, std::size_t s) const {
    Elem out;
    for (const auto& [a, c] : h) accumulate(out, index(r, a, s), c);
    return out;
  }

  /// Letters i_1, ..., i_n with b = x_{i_1} ... x_{i_n}, following the pivot pairs.
  static std::vector<std::size_t> letter_chain(const NicholsAlgebra& b, const FlatBasis& f, std::size_t flat) {
    std::vector<std::size_t> out;
    std::size_t n = f.degree[flat], r = f.local[flat];
    while (n > 0) {
      const auto [i, r2] = b.degrees[n].split[r];
      out.push_back(i);
      r = r2;
      --n;
    }
    return out;
  }

 private:
  struct Memo {
    std::mutex mu;
    std::map<std::pair<std::size_t, std::size_t>, Elem> mult;
    std::map<std::size_t, Tensor> comult;
    std::map<std::size_t, Elem> antipode;
  };
  std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();
  std::vector<std::vector<Straightening>> gens_;  // gens_[j][i] for y_j x_i
  std::vector<std::vector<Matrix>> s_inv_on_plus_;  // per c, per degree: S^{-1}(e_c) on B^n(oV)
  mutable std::vector<std::vector<std::optional<Elem>>> y_cross_;
  std::shared_ptr<std::recursive_mutex> y_mu_ = std::make_shared<std::recursive_mutex>();

  std::vector<Matrix> plus_action(const Elem& h) const {
    std::vector<Matrix> out;
    for (std::size_t n = 0; n <= fp.top(); ++n) out.push_back(act_matrix(BoV.degrees[n].action, h, BoV.dim(n)));
    return out;
  }

  /// Replaces the H slot of every term (assumed to hold index 0) by h.
  Elem replace_h(const Elem& e, const Elem& h) const {
    Elem out;
    for (const auto& [t, c] : e) {
      const Triple a = triple(t);
      for (const auto& [g, cg] : h) accumulate(out, index(a.minus, g, a.plus), c * cg);
    }
    return out;
  }

  Elem left_x(std::size_t i, const Elem& e) const {
    Elem out;
    for (const auto& [t, c] : e) {
      const Triple a = triple(t);
      const std::size_t n = fm.degree[a.minus];
      Vector v(BV.dim(n));
      v[fm.local[a.minus]] = Cyclotomic(1L);
      const Vector w = BV.left_mult(i, n, v);
      for (std::size_t r = 0; r < w.size(); ++r)
        if (!w[r].is_zero()) accumulate(out, index(fm.start[n + 1] + r, a.h, a.plus), c * w[r]);
    }
    return out;
  }

  Elem left_minus(std::size_t r, const Elem& e) const {
    Elem out = e;
    const auto letters = letter_chain(BV, fm, r);
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) out = left_x(*it, out);
    return out;
  }

  /// e_g * (b h s) = (g_1 . b) (g_2 h) s.
  Elem left_h(std::size_t g, const Elem& e) const {
    const FDHopf& h = H();
    Elem out;
    for (const auto& [t, c] : e) {
      const Triple a = triple(t);
      const std::size_t n = fm.degree[a.minus], loc = fm.local[a.minus];
      for (const auto& [k, ck] : h.comult[g]) {
        const Matrix& act = BV.degrees[n].action[k[0]];
        const Elem& hh = h.mul_basis(k[1], a.h);
        if (hh.empty()) continue;
        for (std::size_t r = 0; r < act.rows(); ++r) {
          const Cyclotomic& x = act(r, loc);
          if (x.is_zero()) continue;
          for (const auto& [g2, c2] : hh) accumulate(out, index(fm.start[n] + r, g2, a.plus), c * ck * x * c2);
        }
      }
    }
    return out;
  }

  /// (b h s) * e_g * s' = b (h g_2) (S^{-1}(g_1) . s) s'.
  Elem right_h_plus(const Elem& e, std::size_t g, std::size_t s2) const {
    const FDHopf& h = H();
    Elem out;
    const std::size_t q = fp.degree[s2], ql = fp.local[s2];
    for (const auto& [t, c] : e) {
      const Triple a = triple(t);
      const std::size_t n = fp.degree[a.plus], loc = fp.local[a.plus];
      if (n + q > fp.top()) continue;
      for (const auto& [k, ck] : h.comult[g]) {
        const Elem& hh = h.mul_basis(a.h, k[1]);
        if (hh.empty()) continue;
        const Matrix& act = s_inv_on_plus_[k[0]][n];
        for (std::size_t r = 0; r < act.rows(); ++r) {
          const Cyclotomic& x = act(r, loc);
          if (x.is_zero()) continue;
          const Vector prod = BoV.multiply_basis(n, r, q, ql);
          for (std::size_t u = 0; u < prod.size(); ++u) {
            if (prod[u].is_zero()) continue;
            for (const auto& [g2, c2] : hh)
              accumulate(out, index(a.minus, g2, fp.start[n + q] + u), c * ck * x * c2 * prod[u]);
          }
        }
      }
    }
    return out;
  }

  /// y_j * (b h s) for a normal-form element.
  Elem left_y(std::size_t j, const Elem& e) const {
    Elem out;
    for (const auto& [t, c] : e) {
      const Triple a = triple(t);
      add_scaled(out, right_h_plus(y_past_minus(j, a.minus), a.h, a.plus), c);
    }
    return out;
  }

  /// (b h s) * s'.
  Elem right_plus(const Elem& e, std::size_t s2) const {
    Elem out;
    const std::size_t q = fp.degree[s2], ql = fp.local[s2];
    for (const auto& [t, c] : e) {
      const Triple a = triple(t);
      const std::size_t n = fp.degree[a.plus];
      if (n + q > fp.top()) continue;
      const Vector prod = BoV.multiply_basis(n, fp.local[a.plus], q, ql);
      for (std::size_t u = 0; u < prod.size(); ++u)
        if (!prod[u].is_zero()) accumulate(out, index(a.minus, a.h, fp.start[n + q] + u), c * prod[u]);
    }
    return out;
  }

  /// y_j * b_r for a B(V) basis element, memoized.
  const Elem& y_past_minus(std::size_t j, std::size_t r) const {
    std::lock_guard<std::recursive_mutex> lock(*y_mu_);
    auto& slot = y_cross_[j][r];
    if (slot) return *slot;
    Elem out;
    const std::size_t n = fm.degree[r];
    if (n == 0) {
      out = embed_terms(0, H().unit, fp.start[1] + j);
    } else {
      const auto [i, r2loc] = BV.degrees[n].split[fm.local[r]];
      const std::size_t r2 = fm.start[n - 1] + r2loc;
      const Elem rest{{index(r2, 0, 0), Cyclotomic(1L)}};
      const Elem b2 = replace_h(rest, H().unit);
      // (y_{-1} . x_i) y_0 b'
      for (const auto& [k, c] : oV.coaction[j]) {
        const Elem& inner = y_past_minus(k[1], r2);
        for (std::size_t i2 = 0; i2 < V.dim; ++i2) {
          const Cyclotomic& a = V.action[k[0]](i2, i);
          if (!a.is_zero()) add_scaled(out, left_x(i2, inner), c * a);
        }
      }
      const Straightening& st = gens_[j][i];
      add_scaled(out, b2, st.scalar);
      for (const auto& [g, cg] : st.h_term) add_scaled(out, left_h(g, b2), cg);
    }
    slot = std::move(out);
    return *slot;
  }

  void check_legs() const {
    const FDHopf& h = H();
    SpanBuilder rl(h.dim), rr(h.dim);
    for (std::size_t s = 0; s < pairing.rl_basis.cols(); ++s) rl.add(pairing.rl_basis.col(s));
    for (std::size_t s = 0; s < pairing.rr_basis.cols(); ++s) rr.add(pairing.rr_basis.col(s));
    auto first_legs_in = [&](const Tensor& t, const SpanBuilder& span) {
      std::map<Key, Vector> groups;
      for (const auto& [k, c] : t) {
        Key rest(k.begin() + 1, k.end());
        auto& v = groups[rest];
        if (v.empty()) v.assign(h.dim, Cyclotomic());
        v[k[0]] += c;
      }
      for (const auto& [rest, v] : groups)
        if (!span.contains(v)) return false;
      return true;
    };
    for (std::size_t j = 0; j < oV.dim; ++j)
      if (!first_legs_in(h.delta_at(oV.coaction[j], 0), rl))
        throw invariant_error("PairingLegOutsideRlRr", "coaction leg of oV outside R_l");
    for (std::size_t i = 0; i < V.dim; ++i)
      if (!first_legs_in(h.delta_at(h.delta_at(V.coaction[i], 0), 0), rr))
        throw invariant_error("PairingLegOutsideRlRr", "coaction leg of V outside R_r");
  }

  Tensor unit_tensor2() const {
    Tensor out;
    const Elem u = unit();
    for (const auto& [a, ca] : u)
      for (const auto& [b, cb] : u) accumulate(out, Key{a, b}, ca * cb);
    return out;
  }

  /// Delta(z) = z (x) 1 + z_{-1} (x) z_0 for a generator of V (minus) or oV (plus).
  Tensor delta_gen(const YDModule& m, std::size_t i, bool minus) const {
    Tensor out;
    const Elem g = minus ? x(i) : y(i);
    for (const auto& [a, ca] : g)
      for (const auto& [b, cb] : unit()) accumulate(out, Key{a, b}, ca * cb);
    for (const auto& [k, c] : m.coaction[i])
      for (const auto& [b, cb] : (minus ? x(k[1]) : y(k[1]))) accumulate(out, Key{index(0, k[0], 0), b}, c * cb);
    return out;
  }
  Tensor delta_x(std::size_t i) const { return delta_gen(V, i, true); }
  Tensor delta_y(std::size_t j) const { return delta_gen(oV, j, false); }

  Elem antipode_gen(const YDModule& m, std::size_t i, bool minus) const {
    Elem out;
    for (const auto& [k, c] : m.coaction[i]) {
      const Elem s = embed_h(H().S(basis_elem(k[0])));
      add_scaled(out, multiply(s, minus ? x(k[1]) : y(k[1])), -c);
    }
    return out;
  }
};

/// Elements of the free smash product T(V + oV) # H, keyed by (word, h).
/// Letters below dim V are x's, the rest y's.
using SmashKey = std::pair<std::vector<std::size_t>, std::size_t>;
using SmashElem = std::map<SmashKey, Cyclotomic>;
using SmashTensor = std::map<std::pair<SmashKey, SmashKey>, Cyclotomic>;

class FreeSmash {
 public:
  FreeSmash(const FDHopf& h, const YDModule& v, const YDModule& ov) : h_(h), v_(v), ov_(ov) {}

  SmashElem letter(std::size_t l) const {
    SmashElem out;
    for (const auto& [u, c] : h_.unit) add(out, {{l}, u}, c);
    return out;
  }
  SmashElem group(const Elem& g) const {
    SmashElem out;
    for (const auto& [a, c] : g) add(out, {{}, a}, c);
    return out;
  }

  SmashElem mul(const SmashElem& p, const SmashElem& q) const {
    SmashElem out;
    for (const auto& [kp, cp] : p)
      for (const auto& [kq, cq] : q)
        // (w # a)(w' # b) = w (a_1 . w') # a_2 b
        for (const auto& [k, c] : h_.comult[kp.second]) {
          const auto moved = act_word(k[0], kq.first);
          const Elem& hb = h_.mul_basis(k[1], kq.second);
          for (const auto& [w, cw] : moved) {
            std::vector<std::size_t> word = kp.first;
            word.insert(word.end(), w.begin(), w.end());
            for (const auto& [g, cg] : hb) add(out, {word, g}, cp * cq * c * cw * cg);
          }
        }
    return out;
  }

  SmashTensor tensor_mul(const SmashTensor& p, const SmashTensor& q) const {
    SmashTensor out;
    for (const auto& [kp, cp] : p)
      for (const auto& [kq, cq] : q) {
        const SmashElem l = mul({{kp.first, Cyclotomic(1L)}}, {{kq.first, Cyclotomic(1L)}});
        const SmashElem r = mul({{kp.second, Cyclotomic(1L)}}, {{kq.second, Cyclotomic(1L)}});
        for (const auto& [a, ca] : l)
          for (const auto& [b, cb] : r) add(out, {a, b}, cp * cq * ca * cb);
      }
    return out;
  }

  /// Delta as an algebra map: letters are primitive up to the coaction.
  SmashTensor delta(const SmashElem& e) const {
    SmashTensor out;
    for (const auto& [k, c] : e) {
      SmashTensor d;
      for (const auto& [u, cu] : h_.unit)
        for (const auto& [u2, cu2] : h_.unit) add(d, {{{}, u}, {{}, u2}}, cu * cu2);
      for (std::size_t l : k.first) d = tensor_mul(d, delta_letter(l));
      SmashTensor dh;
      for (const auto& [kk, ck] : h_.comult[k.second]) add(dh, {{{}, kk[0]}, {{}, kk[1]}}, ck);
      d = tensor_mul(d, dh);
      for (const auto& [kk, ck] : d) add(out, kk, c * ck);
    }
    return out;
  }

  /// [[y_j, x_i]].
  SmashElem bracket(const PairingData& p, std::size_t j, std::size_t i) const {
    const std::size_t m = v_.dim;
    const Straightening st = straighten_generators(h_, v_, ov_, p, j, i);
    SmashElem out = mul(letter(m + j), letter(i));
    for (std::size_t i2 = 0; i2 < m; ++i2)
      for (std::size_t j2 = 0; j2 < ov_.dim; ++j2)
        if (!st.xy(i2, j2).is_zero())
          for (const auto& [k, c] : mul(letter(i2), letter(m + j2))) add(out, k, -st.xy(i2, j2) * c);
    for (const auto& [k, c] : group(h_.unit)) add(out, k, -st.scalar * c);
    for (const auto& [k, c] : group(st.h_term)) add(out, k, -c);
    return out;
  }

  template <class Map>
  static void add(Map& m, const typename Map::key_type& k, const Cyclotomic& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = m.emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) m.erase(it);
    }
  }

 private:
  const FDHopf& h_;
  const YDModule& v_;
  const YDModule& ov_;

  const YDModule& module_of(std::size_t l) const { return l < v_.dim ? v_ : ov_; }
  std::size_t local(std::size_t l) const { return l < v_.dim ? l : l - v_.dim; }
  std::size_t global(std::size_t l, std::size_t loc) const { return l < v_.dim ? loc : loc + v_.dim; }

  std::map<std::vector<std::size_t>, Cyclotomic> act_word(std::size_t a, const std::vector<std::size_t>& w) const {
    std::map<std::vector<std::size_t>, Cyclotomic> out;
    if (w.empty()) {
      if (!h_.counit[a].is_zero()) out[{}] = h_.counit[a];
      return out;
    }
    Tensor legs{{Key{a}, Cyclotomic(1L)}};
    for (std::size_t k = 1; k < w.size(); ++k) legs = h_.delta_at(legs, k - 1);
    for (const auto& [k, c] : legs) {
      std::map<std::vector<std::size_t>, Cyclotomic> partial{{{}, c}};
      for (std::size_t pos = 0; pos < w.size(); ++pos) {
        std::map<std::vector<std::size_t>, Cyclotomic> next;
        const YDModule& mod = module_of(w[pos]);
        const std::size_t loc = local(w[pos]);
        for (const auto& [pw, pc] : partial)
          for (std::size_t r = 0; r < mod.dim; ++r) {
            const Cyclotomic& x = mod.action[k[pos]](r, loc);
            if (x.is_zero()) continue;
            auto nw = pw;
            nw.push_back(global(w[pos], r));
            add(next, nw, pc * x);
          }
        partial = std::move(next);
      }
      for (const auto& [pw, pc] : partial) add(out, pw, pc);
    }
    return out;
  }

  SmashTensor delta_letter(std::size_t l) const {
    SmashTensor out;
    for (const auto& [k, c] : letter(l))
      for (const auto& [u, cu] : h_.unit) add(out, {k, {{}, u}}, c * cu);
    for (const auto& [k, c] : module_of(l).coaction[local(l)])
      for (const auto& [u, cu] : h_.unit) add(out, {{{}, k[0]}, {{global(l, k[1])}, u}}, c * cu);
    return out;
  }
};

struct CoidealReport {
  std::size_t pairs = 0;
  std::size_t coideal_failures = 0;
  std::size_t auxiliary_failures = 0;
  std::size_t residual_terms = 0;  // nonzero terms summed over all failing pairs
  bool ok() const { return coideal_failures == 0 && auxiliary_failures == 0; }
};

/// Checks Delta([[y,x]]) = [[y,x]] (x) 1 + y_{-1} x_{-1} (x) [[y_0, x_0]] and
/// y x_{-1} (x) x_0 = y_{-3} x_{-1} S(y_{-1}) y_0 (x) y_{-2} . x_0 for every
/// pair of basis vectors, in the free smash product truncated to degree 2.
inline CoidealReport coideal_check(const QuasitriangularHopf& q, const YDModule& v) {
  const FDHopf& h = q.hopf;
  const YDModule ov = dual_yd(q, v);
  const PairingData p = compute_pairing(q);
  const FreeSmash fs(h, v, ov);
  const std::size_t m = v.dim;
  CoidealReport rep;
  std::vector<std::vector<SmashElem>> br(ov.dim);
  for (std::size_t j = 0; j < ov.dim; ++j)
    for (std::size_t i = 0; i < m; ++i) br[j].push_back(fs.bracket(p, j, i));
  for (std::size_t j = 0; j < ov.dim; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      ++rep.pairs;
      SmashTensor diff = fs.delta(br[j][i]);
      for (const auto& [k, c] : br[j][i])
        for (const auto& [u, cu] : h.unit) FreeSmash::add(diff, {k, {{}, u}}, -c * cu);
      for (const auto& [ky, cy] : ov.coaction[j])
        for (const auto& [kx, cx] : v.coaction[i]) {
          const Elem g = h.mul_basis(ky[0], kx[0]);
          for (const auto& [gi, gc] : g)
            for (const auto& [k, c] : br[ky[1]][kx[1]]) FreeSmash::add(diff, {{{}, gi}, k}, -cy * cx * gc * c);
        }
      if (!diff.empty()) {
        ++rep.coideal_failures;
        rep.residual_terms += diff.size();
      }

      // Auxiliary identity, as a map (smash key, x index) -> scalar.
      std::map<std::pair<SmashKey, std::size_t>, Cyclotomic> aux;
      for (const auto& [kx, cx] : v.coaction[i]) FreeSmash::add(aux, std::make_pair(SmashKey{{m + j}, kx[0]}, kx[1]), cx);
      const Tensor y3 = h.delta_at(h.delta_at(ov.coaction[j], 0), 0);  // (y-3, y-2, y-1, y0)
      for (const auto& [ky, cy] : y3)
        for (const auto& [kx, cx] : v.coaction[i]) {
          const Elem left = h.mul(h.mul_basis(ky[0], kx[0]), h.S(basis_elem(ky[2])));
          const SmashElem term = fs.mul(fs.group(left), fs.letter(m + ky[3]));
          for (std::size_t r = 0; r < m; ++r) {
            const Cyclotomic& a = v.action[ky[1]](r, kx[1]);
            if (a.is_zero()) continue;
            for (const auto& [k, c] : term) FreeSmash::add(aux, std::make_pair(k, r), -cy * cx * a * c);
          }
        }
      if (!aux.empty()) {
        ++rep.auxiliary_failures;
        rep.residual_terms += aux.size();
      }
    }
  return rep;
}

/// Builds u_(H,R)(V). Both Nichols algebras must be finite within max_degree.
inline TriangularHopf build_u(const QuasitriangularHopf& q, const YDModule& v, std::size_t max_degree = 12) {
  TriangularHopf u;
  u.base = q;
  u.V = v;
  u.oV = dual_yd(q, v);
  u.BV = build_nichols(q.hopf, u.V, max_degree, true);
  u.BoV = build_nichols(q.hopf, u.oV, max_degree, true);
  u.pairing = compute_pairing(q);
  u.prepare();
  return u;
}

/// kGamma for Gamma = (Z/N)^theta with R = (1/|Gamma|) sum chi_g(h^{-1}) g (x) h,
/// chi_i(g_j) = zeta_N^{e_ij}. Group elements are indexed in mixed radix with
/// the first generator least significant.
inline QuasitriangularHopf qt_abelian(const std::vector<std::vector<long>>& e, std::size_t n) {
  const std::size_t theta = e.size();
  for (const auto& row : e)
    if (row.size() != theta) throw config_error("ConfigInvalid", "exponent matrix must be square");
  std::size_t order = 1;
  for (std::size_t k = 0; k < theta; ++k) order *= n;
  auto digits = [&](std::size_t g) {
    std::vector<long> d(theta);
    for (std::size_t k = 0; k < theta; ++k) {
      d[k] = static_cast<long>(g % n);
      g /= n;
    }
    return d;
  };
  auto pack = [&](const std::vector<long>& d) {
    std::size_t g = 0;
    for (std::size_t k = theta; k-- > 0;) g = g * n + static_cast<std::size_t>(((d[k] % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n));
    return g;
  };
  std::vector<std::vector<std::size_t>> table(order, std::vector<std::size_t>(order));
  std::vector<std::size_t> inv(order);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < order; ++a) {
    const auto da = digits(a);
    std::vector<long> neg(theta);
    std::string lab;
    for (std::size_t k = 0; k < theta; ++k) {
      neg[k] = -da[k];
      if (da[k]) lab += (lab.empty() ? "" : "*") + ("g" + std::to_string(k + 1) + "^" + std::to_string(da[k]));
    }
    labels.push_back(lab.empty() ? "1" : lab);
    inv[a] = pack(neg);
    for (std::size_t b = 0; b < order; ++b) {
      const auto db = digits(b);
      std::vector<long> s(theta);
      for (std::size_t k = 0; k < theta; ++k) s[k] = da[k] + db[k];
      table[a][b] = pack(s);
    }
  }
  QuasitriangularHopf q{group_algebra(table, inv, 0, labels), {}};
  q.hopf.field_order = static_cast<int>(n);
  const Cyclotomic scale(Rational(1, static_cast<long>(order)));
  for (std::size_t g = 0; g < order; ++g)
    for (std::size_t h = 0; h < order; ++h) {
      const auto dg = digits(g), dh = digits(h);
      long ex = 0;
      for (std::size_t i = 0; i < theta; ++i)
        for (std::size_t j = 0; j < theta; ++j) ex -= dg[i] * e[i][j] * dh[j];
      accumulate(q.R, Key{g, h}, scale * root_of_unity(static_cast<int>(n), ex));
    }
  return q;
}

/// The module V = span{x_i} over kGamma with g_j . x_i = zeta_N^{e_ij} x_i.
inline std::vector<Matrix> abelian_module(const std::vector<std::vector<long>>& e, std::size_t n) {
  const std::size_t theta = e.size();
  std::size_t order = 1;
  for (std::size_t k = 0; k < theta; ++k) order *= n;
  std::vector<Matrix> out;
  for (std::size_t g = 0; g < order; ++g) {
    Matrix m(theta, theta);
    std::size_t rest = g;
    std::vector<long> d(theta);
    for (std::size_t k = 0; k < theta; ++k) {
      d[k] = static_cast<long>(rest % n);
      rest /= n;
    }
    for (std::size_t i = 0; i < theta; ++i) {
      long ex = 0;
      for (std::size_t j = 0; j < theta; ++j) ex += e[i][j] * d[j];
      m(i, i) = root_of_unity(static_cast<int>(n), ex);
    }
    out.push_back(std::move(m));
  }
  return out;
}

struct AlgebraCheck {
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string first_failure;
  bool ok() const { return failures == 0; }
};

/// Associativity on basis triples: exhaustive up to `exhaustive_limit` basis
/// elements, otherwise `samples` random triples from a fixed seed.
inline AlgebraCheck check_associativity(const TriangularHopf& u, std::size_t exhaustive_limit = 100,
                                        std::size_t samples = 1000, unsigned seed = 7) {
  AlgebraCheck rep;
  auto one = [&](std::size_t a, std::size_t b, std::size_t c) {
    ++rep.checked;
    const Elem ea{{a, Cyclotomic(1L)}}, ec{{c, Cyclotomic(1L)}};
    const Elem lhs = u.multiply(u.mult_basis(a, b), ec);
    const Elem rhs = u.multiply(ea, u.mult_basis(b, c));
    if (lhs != rhs && rep.failures++ == 0)
      rep.first_failure = u.label(a) + " " + u.label(b) + " " + u.label(c);
  };
  const std::size_t n = u.dim();
  if (n <= exhaustive_limit) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) one(a, b, c);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t k = 0; k < samples; ++k) {
      const std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
      one(a, b, c);
    }
  }
  return rep;
}

/// Grading, unit and associativity-free sanity: degree of every product term.
inline AlgebraCheck check_grading(const TriangularHopf& u, const std::vector<std::size_t>& sample) {
  AlgebraCheck rep;
  for (std::size_t a : sample)
    for (std::size_t b : sample) {
      ++rep.checked;
      for (const auto& [t, c] : u.mult_basis(a, b))
        if (u.degree(t) != u.degree(a) + u.degree(b)) {
          if (rep.failures++ == 0) rep.first_failure = u.label(a) + " " + u.label(b);
          break;
        }
    }
  return rep;
}

/// Hopf axioms on the given basis triples: Delta is multiplicative on
/// generators times basis, counit and antipode axioms hold.
inline AlgebraCheck check_hopf(const TriangularHopf& u, const std::vector<std::size_t>& sample) {
  AlgebraCheck rep;
  auto fail = [&](const std::string& what) {
    if (rep.failures++ == 0) rep.first_failure = what;
  };
  std::vector<Elem> gens;
  for (std::size_t i = 0; i < u.V.dim; ++i) gens.push_back(u.x(i));
  for (std::size_t j = 0; j < u.oV.dim; ++j) gens.push_back(u.y(j));
  for (std::size_t a = 0; a < u.H().dim; ++a) gens.push_back(u.embed_h(basis_elem(a)));
  for (std::size_t t : sample) {
    ++rep.checked;
    const Tensor& d = u.comult(t);
    // (eps x id) Delta = id = (id x eps) Delta
    Elem l, r;
    for (const auto& [k, c] : d) {
      if (!u.counit(k[0]).is_zero()) accumulate(l, k[1], c * u.counit(k[0]));
      if (!u.counit(k[1]).is_zero()) accumulate(r, k[0], c * u.counit(k[1]));
    }
    const Elem self{{t, Cyclotomic(1L)}};
    if (l != self || r != self) fail("counit at " + u.label(t));
    // m (S x id) Delta = eps 1 = m (id x S) Delta
    Elem s1, s2;
    for (const auto& [k, c] : d) {
      add_scaled(s1, u.multiply(u.antipode(k[0]), Elem{{k[1], Cyclotomic(1L)}}), c);
      add_scaled(s2, u.multiply(Elem{{k[0], Cyclotomic(1L)}}, u.antipode(k[1])), c);
    }
    Elem e1;
    add_scaled(e1, u.unit(), u.counit(t));
    if (s1 != e1 || s2 != e1) fail("antipode at " + u.label(t));
    for (const auto& g : gens) {
      const Tensor lhs = u.delta(u.multiply(g, self));
      const Tensor rhs = u.tensor_mul(u.delta(g), d);
      if (lhs != rhs) {
        fail("Delta not multiplicative at " + u.label(t));
        break;
      }
    }
  }
  return rep;
}

}  // namespace trideco
