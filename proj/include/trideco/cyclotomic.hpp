#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_n).
//
// An element is stored by its coordinates in the power basis
// 1, z, ..., z^(phi(n)-1) modulo the n-th cyclotomic polynomial, so two
// equal elements of the same order have identical coefficient lists.
// Elements of different orders are combined inside Q(zeta_lcm).

#include <gmpxx.h>

#include <boost/container/small_vector.hpp>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "trideco/errors.hpp"

namespace trideco {

using Rational = mpq_class;

namespace detail {

inline int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

// Coefficients of Phi_n, lowest degree first; monic of degree phi(n).
inline const std::vector<long>& cyclotomic_poly(int n) {
  static std::recursive_mutex mu;
  static std::map<int, std::vector<long>> cache;
  std::lock_guard<std::recursive_mutex> lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  // x^n - 1 divided by Phi_d for every proper divisor d.
  std::vector<long> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const std::vector<long> den = cyclotomic_poly(d);
    const int dd = static_cast<int>(den.size()) - 1;
    const int dn = static_cast<int>(num.size()) - 1;
    std::vector<long> q(dn - dd + 1, 0);
    for (int k = dn; k >= dd; --k) {
      const long t = num[k];
      q[k - dd] = t;
      if (t == 0) continue;
      for (int j = 0; j <= dd; ++j) num[k - dd + j] -= t * den[j];
    }
    num = std::move(q);
  }
  return cache.emplace(n, std::move(num)).first->second;
}

}  // namespace detail

class Cyclotomic {
 public:
  using Coeffs = boost::container::small_vector<Rational, 2>;

  Cyclotomic() : order_(1), c_(1) {}
  Cyclotomic(long v) : order_(1), c_(1, Rational(v)) {}  // NOLINT: implicit by design of literals
  Cyclotomic(const Rational& v) : order_(1), c_(1, v) {}  // NOLINT

  /// Element of Q(zeta_order) from power-basis coordinates of length phi(order).
  Cyclotomic(int order, Coeffs coeffs) : order_(order), c_(std::move(coeffs)) {
    if (order < 1) throw config_error("InvalidCyclotomic", "order must be positive");
    if (static_cast<int>(c_.size()) != detail::euler_phi(order))
      throw config_error("InvalidCyclotomic", "coefficient count must equal phi(order)");
  }

  /// zeta_n^k.
  static Cyclotomic zeta(int n, long k) {
    if (n < 1) throw config_error("InvalidCyclotomic", "root order must be positive");
    long e = ((k % n) + n) % n;
    std::vector<Rational> poly(static_cast<std::size_t>(e) + 1);
    poly[static_cast<std::size_t>(e)] = 1;
    return from_poly(n, poly);
  }

  int order() const { return order_; }
  const Coeffs& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (sgn(x) != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (sgn(c_[i]) != 0) return false;
    return true;
  }
  const Rational& constant() const { return c_[0]; }
  bool is_one() const { return is_rational() && c_[0] == 1; }

  /// The same element viewed in Q(zeta_m); m must be a multiple of order().
  Cyclotomic embed(int m) const {
    if (m == order_) return *this;
    if (m % order_ != 0) throw invariant_error("CyclotomicEmbed", "target order must be a multiple");
    if (is_rational()) {
      Cyclotomic r;
      r.order_ = m;
      r.c_.assign(static_cast<std::size_t>(detail::euler_phi(m)), Rational(0));
      r.c_[0] = c_[0];
      return r;
    }
    const int s = m / order_;
    std::vector<Rational> poly(static_cast<std::size_t>(s) * (c_.size() - 1) + 1);
    for (std::size_t k = 0; k < c_.size(); ++k) poly[k * s] = c_[k];
    return from_poly(m, poly);
  }

  Cyclotomic operator-() const {
    Cyclotomic r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  Cyclotomic& operator+=(const Cyclotomic& o) {
    if (order_ == o.order_) {
      for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    } else if (o.is_rational()) {
      c_[0] += o.c_[0];
    } else if (is_rational()) {
      Rational k = c_[0];
      *this = o;
      c_[0] += k;
    } else {
      const int m = std::lcm(order_, o.order_);
      *this = embed(m);
      const Cyclotomic b = o.embed(m);
      for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
    }
    return *this;
  }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this += -o; }

  Cyclotomic& operator*=(const Cyclotomic& o) {
    if (o.is_rational()) {
      for (auto& x : c_) x *= o.c_[0];
      return *this;
    }
    if (is_rational()) {
      const Rational k = c_[0];
      *this = o;
      for (auto& x : c_) x *= k;
      return *this;
    }
    if (order_ != o.order_) {
      const int m = std::lcm(order_, o.order_);
      *this = embed(m);
      return *this *= o.embed(m);
    }
    const std::size_t n = c_.size();
    std::vector<Rational> prod(2 * n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(c_[i]) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (sgn(o.c_[j]) == 0) continue;
        prod[i + j] += c_[i] * o.c_[j];
      }
    }
    *this = from_poly(order_, prod);
    return *this;
  }

  Cyclotomic inverse() const {
    if (is_zero()) throw invariant_error("DivisionByZero", "inverse of zero cyclotomic");
    if (is_rational()) return Cyclotomic(Rational(1) / c_[0]).embed(order_);
    // Solve a * x = 1 with the multiplication matrix of a on the power basis.
    const std::size_t n = c_.size();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rational> e(j + 1);
      e[j] = 1;
      Cyclotomic col = *this * from_poly(order_, e);
      for (std::size_t i = 0; i < n; ++i) m[i][j] = col.c_[i];
    }
    m[0][n] = 1;
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      while (sgn(m[piv][col]) == 0) ++piv;
      std::swap(m[piv], m[col]);
      const Rational inv = Rational(1) / m[col][col];
      for (auto& x : m[col]) x *= inv;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col || sgn(m[r][col]) == 0) continue;
        const Rational f = m[r][col];
        for (std::size_t k = col; k <= n; ++k) m[r][k] -= f * m[col][k];
      }
    }
    Coeffs out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = m[i][n];
    return Cyclotomic(order_, std::move(out));
  }

  Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ == b.order_) return a.c_ == b.c_;
    if (a.is_rational() && b.is_rational()) return a.c_[0] == b.c_[0];
    const int m = std::lcm(a.order_, b.order_);
    return a.embed(m).c_ == b.embed(m).c_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  /// Complex value under the embedding zeta_n -> exp(2 pi i a / n).
  std::complex<double> evaluate(int a = 1) const {
    std::complex<double> z(0.0, 0.0);
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (sgn(c_[k]) == 0) continue;
      const double ang = 2.0 * M_PI * static_cast<double>(a) * static_cast<double>(k) / order_;
      z += c_[k].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return z;
  }

  /// Smallest positive denominator d with d * coeffs integral.
  mpz_class denominator_lcm() const {
    mpz_class d = 1;
    for (const auto& x : c_) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
    return d;
  }

  /// Human-readable canonical form, e.g. "3/2" or "Z3(1,-2)".
  std::string to_string() const {
    if (is_rational()) return c_[0].get_str();
    std::ostringstream os;
    os << 'Z' << order_ << '(';
    for (std::size_t k = 0; k < c_.size(); ++k) os << (k ? "," : "") << c_[k].get_str();
    os << ')';
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Cyclotomic& x) { return os << x.to_string(); }

  /// Reduce a polynomial in zeta_n (lowest degree first) modulo Phi_n.
  static Cyclotomic from_poly(int n, std::vector<Rational> poly) {
    const auto& phi = detail::cyclotomic_poly(n);
    const std::size_t d = phi.size() - 1;
    for (std::size_t k = poly.size(); k-- > d;) {
      if (sgn(poly[k]) == 0) continue;
      const Rational t = poly[k];
      for (std::size_t j = 0; j <= d; ++j)
        if (phi[j] != 0) poly[k - d + j] -= t * phi[j];
    }
    Coeffs out(d);
    for (std::size_t k = 0; k < d && k < poly.size(); ++k) out[k] = poly[k];
    Cyclotomic r;
    r.order_ = n;
    r.c_ = std::move(out);
    return r;
  }

 private:
  int order_;
  Coeffs c_;
};

/// zeta_n^k; the result has multiplicative order n / gcd(n, k).
inline Cyclotomic root_of_unity(int n, long k) { return Cyclotomic::zeta(n, k); }

}  // namespace trideco
