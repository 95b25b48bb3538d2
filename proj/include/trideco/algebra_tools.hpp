#pragma once

// Linear-algebra level tools for finite-dimensional associative algebras and
// their modules: centers, radicals, quotients, commutants, joint eigenspaces
// and characters.

#include <algorithm>
#include <optional>
#include <vector>

#include "trideco/exact_eigen.hpp"

namespace trideco {

/// An algebra given by its left regular representation: left[i] is the
/// matrix of x -> e_i x.
struct Algebra {
  std::size_t dim = 0;
  std::vector<Matrix> left;
  Vector unit;
  int field_order = 1;

  Vector product(const Vector& x, const Vector& y) const {
    Vector out(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      if (x[i].is_zero()) continue;
      const Vector col = left[i] * y;
      for (std::size_t k = 0; k < dim; ++k)
        if (!col[k].is_zero()) out[k] += x[i] * col[k];
    }
    return out;
  }

  /// Matrix of x -> x e_i.
  Matrix right(std::size_t i) const {
    Matrix r(dim, dim);
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k) r(k, j) = left[j](k, i);
    return r;
  }

  Matrix left_of(const Vector& x) const {
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      if (!x[i].is_zero()) m += left[i] * x[i];
    return m;
  }
};

inline Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = Cyclotomic(1L);
  return v;
}

inline Matrix columns_to_matrix(std::size_t rows, const std::vector<Vector>& cols) {
  Matrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

/// Basis (as columns) of the span of the given columns.
inline Matrix span_basis(const Matrix& cols) {
  if (cols.cols() == 0) return Matrix(cols.rows(), 0);
  return column_space(cols);
}

/// Incrementally grown subspace kept in reduced echelon form.
class SpanBuilder {
 public:
  explicit SpanBuilder(std::size_t n) : n_(n) {}

  Vector reduce(Vector v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Cyclotomic f = v[pivots_[r]];
      if (f.is_zero()) continue;
      for (std::size_t k = 0; k < n_; ++k)
        if (!rows_[r][k].is_zero()) v[k] -= f * rows_[r][k];
    }
    return v;
  }

  bool contains(const Vector& v) const {
    for (const auto& x : reduce(v))
      if (!x.is_zero()) return false;
    return true;
  }

  /// Adds v; returns false if it was already in the span.
  bool add(const Vector& v) {
    Vector r = reduce(v);
    std::size_t p = 0;
    while (p < n_ && r[p].is_zero()) ++p;
    if (p == n_) return false;
    const Cyclotomic inv = r[p].inverse();
    for (auto& x : r) x *= inv;
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
  }

  std::size_t size() const { return rows_.size(); }
  Matrix basis() const { return columns_to_matrix(n_, rows_); }

 private:
  std::size_t n_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Smallest subspace containing `start` (columns) and stable under all maps.
inline Matrix invariant_closure(const Matrix& start, const std::vector<Matrix>& maps) {
  SpanBuilder span(start.rows());
  std::vector<Vector> queue;
  for (std::size_t c = 0; c < start.cols(); ++c)
    if (span.add(start.col(c))) queue.push_back(start.col(c));
  while (!queue.empty()) {
    const Vector v = std::move(queue.back());
    queue.pop_back();
    for (const auto& m : maps) {
      Vector w = m * v;
      if (span.add(w)) queue.push_back(std::move(w));
    }
  }
  return span.basis();
}

/// Two-sided ideal generated by the given columns.
inline Matrix ideal_closure(const Algebra& a, const Matrix& gens) {
  std::vector<Matrix> maps = a.left;
  for (std::size_t i = 0; i < a.dim; ++i) maps.push_back(a.right(i));
  return invariant_closure(gens, maps);
}

/// Center as columns.
inline Matrix center(const Algebra& a) {
  Matrix constraints(0, a.dim);
  for (std::size_t b = 0; b < a.dim; ++b) {
    Matrix d = a.right(b) - a.left[b];
    constraints = Matrix::vstack(constraints, d);
    constraints = row_reduce(constraints).rref;
  }
  return kernel_basis(constraints);
}

/// Radical of the trace form Tr(L_x L_y); equals the Jacobson radical in
/// characteristic zero.
inline Matrix trace_radical(const Algebra& a) {
  Matrix form(a.dim, a.dim);
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = i; j < a.dim; ++j) {
      form(i, j) = (a.left[i] * a.left[j]).trace();
      form(j, i) = form(i, j);
    }
  return kernel_basis(form);
}

/// Quotient of an algebra by a two-sided ideal. The complement is spanned by
/// the standard basis vectors that are not pivots of the ideal.
struct QuotientAlgebra {
  Algebra algebra;
  Matrix projection;  // quotient coordinates of a vector of the big algebra
  Matrix section;     // columns: chosen lifts of the quotient basis
};

inline QuotientAlgebra quotient(const Algebra& a, const Matrix& ideal) {
  const std::size_t n = a.dim;
  std::vector<bool> pivot(n, false);
  if (ideal.cols() > 0)
    for (auto p : row_reduce(ideal.transpose()).pivots) pivot[p] = true;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (!pivot[i]) rest.push_back(i);
  const std::size_t q = rest.size();
  Matrix section(n, q);
  for (std::size_t j = 0; j < q; ++j) section(rest[j], j) = Cyclotomic(1L);
  const auto full = inverse(Matrix::hstack(ideal, section));
  if (!full) throw invariant_error("QuotientBasis", "ideal and complement are not independent");
  std::vector<std::size_t> tail(q);
  for (std::size_t j = 0; j < q; ++j) tail[j] = ideal.cols() + j;
  QuotientAlgebra out;
  out.projection = full->select_rows(tail);
  out.section = section;
  out.algebra.dim = q;
  out.algebra.field_order = a.field_order;
  out.algebra.unit = out.projection * a.unit;
  for (std::size_t i = 0; i < q; ++i)
    out.algebra.left.push_back(out.projection * a.left[rest[i]] * section);
  return out;
}

/// Pieces of a joint eigenspace decomposition of commuting operators.
struct JointEigenspace {
  Matrix basis;        // columns spanning the common eigenspace
  Vector eigenvalues;  // one per operator
};

/// Splits the ambient space of commuting diagonalizable operators into
/// common eigenspaces. Eigenvalues outside the field either throw or are
/// dropped together with their eigenspaces.
inline std::vector<JointEigenspace> joint_eigenspaces(const std::vector<Matrix>& ops, std::size_t n,
                                                      int field_order, bool require_split) {
  std::vector<JointEigenspace> parts{{Matrix::identity(n), {}}};
  for (const auto& op : ops) {
    std::vector<JointEigenspace> next;
    for (auto& part : parts) {
      const Matrix linv = left_inverse(part.basis);
      const Matrix restricted = linv * op * part.basis;
      for (const auto& ev : exact_eigenvalues(restricted, field_order, require_split)) {
        Matrix shifted = restricted;
        for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) -= ev;
        const Matrix k = kernel_basis(shifted);
        JointEigenspace piece{part.basis * k, part.eigenvalues};
        piece.eigenvalues.push_back(ev);
        next.push_back(std::move(piece));
      }
    }
    parts = std::move(next);
  }
  return parts;
}

/// All algebra maps A -> field, as vectors of values on the basis.
inline std::vector<Vector> algebra_characters(const Algebra& a) {
  // Kill commutators, then the radical; what remains is commutative
  // semisimple and its characters are the joint eigenvalues of the regular
  // representation on one-dimensional common eigenspaces.
  Matrix comm(a.dim, 0);
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = i + 1; j < a.dim; ++j) {
      const Vector c = (a.left[i] - a.right(i)) * unit_vector(a.dim, j);
      bool nonzero = false;
      for (const auto& x : c) nonzero = nonzero || !x.is_zero();
      if (nonzero) comm = Matrix::hstack(comm, Matrix::column(c));
    }
  const QuotientAlgebra ab = quotient(a, ideal_closure(a, comm));
  const QuotientAlgebra ss = quotient(ab.algebra, trace_radical(ab.algebra));
  const std::size_t q = ss.algebra.dim;
  std::vector<Vector> out;
  if (q == 0) return out;
  for (const auto& part : joint_eigenspaces(ss.algebra.left, q, a.field_order, false)) {
    if (part.basis.cols() != 1) continue;
    // chi(e_i) for the big algebra: project e_i to the quotient and apply.
    const Matrix to_ss = ss.projection * ab.projection;
    Vector chi(a.dim);
    for (std::size_t i = 0; i < a.dim; ++i)
      for (std::size_t k = 0; k < q; ++k)
        if (!to_ss(k, i).is_zero()) chi[i] += to_ss(k, i) * part.eigenvalues[k];
    out.push_back(std::move(chi));
  }
  return out;
}

/// Basis of {X : rho_i X = X sigma_i for all i}, as n_out x n_in matrices
/// flattened row-major; with rho = sigma this is the commutant.
inline std::vector<Matrix> intertwiners(const std::vector<Matrix>& rho, const std::vector<Matrix>& sigma) {
  const std::size_t r = rho.empty() ? 0 : rho.front().rows();
  const std::size_t s = sigma.empty() ? 0 : sigma.front().rows();
  Matrix constraints(0, r * s);
  for (std::size_t g = 0; g < rho.size(); ++g) {
    // X is r x s, index (a, b) -> a * s + b; rows of the constraint are (a, b).
    Matrix block(r * s, r * s);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < s; ++b) {
        const std::size_t row = a * s + b;
        for (std::size_t k = 0; k < r; ++k)
          if (!rho[g](a, k).is_zero()) block(row, k * s + b) += rho[g](a, k);
        for (std::size_t k = 0; k < s; ++k)
          if (!sigma[g](k, b).is_zero()) block(row, a * s + k) -= sigma[g](k, b);
      }
    constraints = row_reduce(Matrix::vstack(constraints, block)).rref;
  }
  const Matrix k = kernel_basis(constraints);
  std::vector<Matrix> out;
  for (std::size_t c = 0; c < k.cols(); ++c) {
    Matrix x(r, s);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < s; ++b) x(a, b) = k(a * s + b, c);
    out.push_back(std::move(x));
  }
  return out;
}

inline std::vector<Matrix> commutant(const std::vector<Matrix>& rho) { return intertwiners(rho, rho); }

/// Action of each map restricted to an invariant subspace with the given basis.
inline std::vector<Matrix> restrict_action(const std::vector<Matrix>& rho, const Matrix& basis) {
  const Matrix linv = left_inverse(basis);
  std::vector<Matrix> out;
  out.reserve(rho.size());
  for (const auto& m : rho) out.push_back(linv * m * basis);
  return out;
}

/// Action on the quotient by an invariant subspace. `complement` receives
/// the chosen lift of the quotient basis.
inline std::vector<Matrix> quotient_action(const std::vector<Matrix>& rho, const Matrix& sub,
                                           Matrix* complement = nullptr) {
  const std::size_t n = rho.empty() ? sub.rows() : rho.front().rows();
  std::vector<bool> pivot(n, false);
  if (sub.cols() > 0)
    for (auto p : row_reduce(sub.transpose()).pivots) pivot[p] = true;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (!pivot[i]) rest.push_back(i);
  Matrix lift(n, rest.size());
  for (std::size_t j = 0; j < rest.size(); ++j) lift(rest[j], j) = Cyclotomic(1L);
  const auto full = inverse(Matrix::hstack(sub, lift));
  if (!full) throw invariant_error("QuotientBasis", "submodule and complement are not independent");
  std::vector<std::size_t> tail(rest.size());
  for (std::size_t j = 0; j < rest.size(); ++j) tail[j] = sub.cols() + j;
  const Matrix proj = full->select_rows(tail);
  std::vector<Matrix> out;
  out.reserve(rho.size());
  for (const auto& m : rho) out.push_back(proj * m * lift);
  if (complement) *complement = lift;
  return out;
}

/// Submodule generated by the columns of `start`.
inline Matrix spin(const std::vector<Matrix>& rho, const Matrix& start) { return invariant_closure(start, rho); }

inline bool is_scalar_matrix(const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i == j ? m(i, j) != m(0, 0) : !m(i, j).is_zero()) return false;
  return true;
}

/// For a module over a semisimple algebra: a simple submodule, as columns.
/// Splits along eigenspaces of non-scalar endomorphisms until the
/// endomorphism ring is the field.
inline Matrix simple_submodule(const std::vector<Matrix>& rho, std::size_t n, int field_order) {
  Matrix basis = Matrix::identity(n);
  std::vector<Matrix> action = rho;
  while (true) {
    const auto ends = commutant(action);
    if (ends.size() <= 1) return basis;
    std::optional<Matrix> piece;
    auto try_split = [&](const Matrix& phi) {
      if (piece || is_scalar_matrix(phi)) return;
      const auto evs = exact_eigenvalues(phi, field_order, false);
      if (evs.empty()) return;
      Matrix shifted = phi;
      for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) -= evs.front();
      piece = kernel_basis(shifted);
    };
    for (const auto& phi : ends) try_split(phi);
    for (std::size_t i = 0; i < ends.size() && !piece; ++i)
      for (std::size_t j = 0; j < ends.size() && !piece; ++j) try_split(ends[i] * ends[j]);
    if (!piece)
      throw config_error("FieldNotSplitting", "a simple module is not absolutely simple over Q(zeta_" +
                                                  std::to_string(field_order) + ")");
    basis = basis * *piece;
    action = restrict_action(action, *piece);
  }
}

}  // namespace trideco
