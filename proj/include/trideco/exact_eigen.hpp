#pragma once

// Exact eigenvalues of matrices whose spectrum lies in a cyclotomic field.
//
// The matrix is scaled to have entries in Z[zeta_N], so every eigenvalue is
// an algebraic integer of Q(zeta_N) and has integer power-basis coordinates.
// Each complex embedding zeta -> exp(2 pi i a / N) is diagonalized
// numerically; choosing one eigenvalue per embedding and inverting the
// Vandermonde system recovers integer coordinates, and a candidate is only
// accepted after an exact rank check. Floating point never leaks into a
// result.

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <numeric>
#include <vector>

#include "trideco/matrix.hpp"

namespace trideco {

namespace detail {

inline int entry_order(const Matrix& m) {
  int n = 1;
  for (const auto& x : m.entries())
    if (!x.is_rational()) n = std::lcm(n, x.order());
  return n;
}

inline std::vector<std::complex<double>> distinct_values(const Eigen::VectorXcd& ev, double tol) {
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    bool seen = false;
    for (const auto& v : out)
      if (std::abs(v - ev[i]) < tol * (1.0 + std::abs(v))) seen = true;
    if (!seen) out.push_back(ev[i]);
  }
  return out;
}

}  // namespace detail

/// Distinct eigenvalues of a square matrix, exactly, inside Q(zeta_L) where L
/// is the lcm of field_order and the orders of the entries. With
/// require_split, an eigenvalue outside that field throws FieldNotSplitting;
/// otherwise such eigenvalues are skipped.
inline std::vector<Cyclotomic> exact_eigenvalues(const Matrix& m, int field_order = 1,
                                                 bool require_split = true) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw invariant_error("MatrixShape", "eigenvalues of non-square matrix");
  if (n == 0) return {};
  const int order = std::lcm(field_order, detail::entry_order(m));

  mpz_class den = 1;
  for (const auto& x : m.entries()) {
    const mpz_class d = x.denominator_lcm();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  const Matrix scaled = m * Cyclotomic(Rational(den));

  std::vector<int> units;
  for (int a = 1; a <= order; ++a)
    if (std::gcd(a, order) == 1) units.push_back(a);
  const std::size_t phi = units.size();

  std::vector<std::vector<std::complex<double>>> spectra;
  for (int a : units) {
    Eigen::MatrixXcd c(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = scaled(i, j).evaluate(a);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(c, false);
    spectra.push_back(detail::distinct_values(solver.eigenvalues(), 1e-6));
  }

  // Vandermonde matrix of the embeddings on the power basis.
  Eigen::MatrixXcd w(static_cast<Eigen::Index>(phi), static_cast<Eigen::Index>(phi));
  for (std::size_t r = 0; r < phi; ++r)
    for (std::size_t k = 0; k < phi; ++k) {
      const double ang = 2.0 * M_PI * units[r] * static_cast<double>(k) / order;
      w(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = std::polar(1.0, ang);
    }
  const Eigen::MatrixXcd winv = w.inverse();

  auto is_eigenvalue = [&](const Cyclotomic& rho) {
    Matrix shifted = scaled;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= rho;
    return rank(shifted) < n;
  };

  std::vector<Cyclotomic> found;
  for (const auto& v1 : spectra[0]) {
    std::vector<std::complex<double>> pick(phi);
    pick[0] = v1;
    std::optional<Cyclotomic> hit;
    std::function<void(std::size_t)> search = [&](std::size_t level) {
      if (hit) return;
      if (level == phi) {
        Eigen::VectorXcd vals(static_cast<Eigen::Index>(phi));
        for (std::size_t r = 0; r < phi; ++r) vals[static_cast<Eigen::Index>(r)] = pick[r];
        const Eigen::VectorXcd q = winv * vals;
        Cyclotomic::Coeffs coeffs(phi);
        for (std::size_t k = 0; k < phi; ++k) {
          const auto z = q[static_cast<Eigen::Index>(k)];
          const double rounded = std::round(z.real());
          if (std::abs(z.imag()) > 1e-3 || std::abs(z.real() - rounded) > 1e-3 * (1.0 + std::abs(rounded)))
            return;
          coeffs[k] = Rational(mpz_class(rounded));
        }
        Cyclotomic rho(order, std::move(coeffs));
        if (is_eigenvalue(rho)) hit = rho;
        return;
      }
      for (const auto& v : spectra[level]) {
        pick[level] = v;
        search(level + 1);
        if (hit) return;
      }
    };
    search(1);
    if (!hit && !require_split) continue;
    if (!hit)
      throw config_error("FieldNotSplitting",
                         "an eigenvalue lies outside Q(zeta_" + std::to_string(order) +
                             "); enlarge field.cyclotomic_order");
    Cyclotomic rho = *hit / Cyclotomic(Rational(den));
    bool dup = false;
    for (const auto& f : found)
      if (f == rho) dup = true;
    if (!dup) found.push_back(rho);
  }
  return found;
}

}  // namespace trideco
