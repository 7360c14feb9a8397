#pragma once

#include <span>
#include <vector>

#include "opalg/linalg.hpp"

namespace opalg {

/// A linear subspace of M_n(C), stored as a Hilbert-Schmidt orthonormal basis.
///
/// The basis is kept as the columns of an n^2 x d matrix Q of vectorized
/// elements (column-major vec), so projection is Q Q^H vec(X).
class OperatorSubspace {
 public:
  OperatorSubspace() = default;
  /// Wraps columns that are already orthonormal; no check is made.
  OperatorSubspace(int ambient_dim, CMatrix orthonormal_columns);

  static OperatorSubspace zero(int ambient_dim);

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(columns_.cols()); }
  const CMatrix& columns() const { return columns_; }

  CMatrix element(int k) const;
  std::vector<CMatrix> basis() const;

  /// Coordinates <X, B_k> of X along each basis element.
  CVector coefficients(const CMatrix& x) const;
  CMatrix combine(const CVector& coeffs) const;
  /// Hilbert-Schmidt orthogonal projection.
  CMatrix project(const CMatrix& x) const;
  /// ||X - P(X)||_HS.
  double residual(const CMatrix& x) const;

 private:
  int ambient_dim_ = 0;
  CMatrix columns_;
};

/// Orthonormal basis of span(spanning_set). Rank is decided by singular values
/// above rank_tol times the largest; an empty set gives the zero subspace.
/// ambient_dim is only consulted when the set is empty.
OperatorSubspace orthonormalize(std::span<const CMatrix> spanning_set, double rank_tol,
                                int ambient_dim = 0);

/// True iff every basis element of w lies within tol of its projection onto v.
bool subspace_contains(const OperatorSubspace& v, const OperatorSubspace& w, double tol);
bool subspace_equal(const OperatorSubspace& v, const OperatorSubspace& w, double tol);

/// Largest residual of a w basis element after projecting onto v (0 if w is zero).
double subspace_excess(const OperatorSubspace& v, const OperatorSubspace& w);

/// True iff the space is closed under X -> X* within tol.
bool closed_under_adjoint(const OperatorSubspace& v, double tol);

}  // namespace opalg
