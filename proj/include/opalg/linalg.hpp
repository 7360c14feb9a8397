#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace opalg {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Tolerances and optimizer knobs shared by every numerical routine.
///
/// rank_tol decides numerical rank (singular values below rank_tol times the
/// largest one are dropped); eq_tol decides subspace membership and equality in
/// Hilbert-Schmidt norm. Every randomized routine derives its stream from
/// rng_seed, so equal configs give bit-identical results.
struct NumericConfig {
  double rank_tol = 1e-9;
  double eq_tol = 1e-7;
  int opt_restarts = 20;
  int opt_max_iters = 500;
  double opt_step = 0.5;
  std::uint64_t rng_seed = 42;
  int dim_cap = 64;

  /// Throws InvalidInput unless 0 < rank_tol <= eq_tol < 1 and the counts are
  /// positive.
  void validate() const;
};

/// Throws InvalidInput if m is not square, is empty, or holds NaN/Inf.
void require_square_finite(const CMatrix& m, const char* what);

/// Largest singular value.
double op_norm(const CMatrix& m);

/// XY - YX.
CMatrix commutator(const CMatrix& x, const CMatrix& y);

CMatrix kron(const CMatrix& x, const CMatrix& y);
CMatrix direct_sum(const CMatrix& x, const CMatrix& y);
CMatrix direct_sum(std::span<const CMatrix> parts);

/// Hilbert-Schmidt inner product <X, Y> = trace(Y* X).
Complex hs_inner(const CMatrix& x, const CMatrix& y);
double hs_norm(const CMatrix& x);

CMatrix identity(int n);
CMatrix matrix_unit(int n, int row, int col);
CMatrix diag(std::initializer_list<Complex> entries);
CMatrix diag(std::span<const Complex> entries);

/// Unitary factor of the polar decomposition (closest unitary in any unitarily
/// invariant norm).
CMatrix polar_unitary(const CMatrix& m);

/// exp(i t H) for Hermitian H.
CMatrix expi_hermitian(const CMatrix& h, double t);

/// Smallest eigenvalue of the Hermitian part.
double min_hermitian_eigenvalue(const CMatrix& m);

/// Columns of vec(X) for each X, column-major (vec(X)^H vec(Y) = trace(X* Y)).
CMatrix stack_vectorized(std::span<const CMatrix> mats);

/// Trace norm (sum of singular values).
double trace_norm(const CMatrix& m);

}  // namespace opalg
