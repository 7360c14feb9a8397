#pragma once

#include <optional>
#include <span>
#include <vector>

#include "opalg/linalg.hpp"
#include "opalg/subspace.hpp"

namespace opalg {

/// A subalgebra of M_n(C) given by an orthonormal basis of its underlying
/// space. `unital` and `selfadjoint` are detected properties, not requests.
struct MatrixAlgebra {
  OperatorSubspace space;
  bool unital = false;
  bool selfadjoint = false;

  int ambient_dim() const { return space.ambient_dim(); }
  int dim() const { return space.dim(); }
  std::vector<CMatrix> basis() const { return space.basis(); }
};

/// Worst closure residuals of a candidate algebra.
struct AlgebraDefects {
  double product = 0.0;   // max over basis pairs of ||B_i B_j - P(B_i B_j)||
  double adjoint = 0.0;   // max over basis of ||B_i* - P(B_i*)||
  double identity = 0.0;  // ||I - P(I)||
};

AlgebraDefects algebra_defects(const OperatorSubspace& space);

/// Wraps a space, detecting unital/selfadjoint flags. Throws InvalidInput if
/// the space is not closed under multiplication within cfg.eq_tol.
MatrixAlgebra make_algebra(OperatorSubspace space, const NumericConfig& cfg);

/// Throws InvalidInput if any invariant implied by the flags fails.
void check_algebra(const MatrixAlgebra& a, const NumericConfig& cfg);

MatrixAlgebra full_algebra(int n);
MatrixAlgebra diagonal_algebra(int n);
MatrixAlgebra scalar_algebra(int n);
/// Block-diagonal M_{n_1} + ... + M_{n_k} inside M_{n_1+...+n_k}.
MatrixAlgebra block_diagonal_algebra(std::span<const int> sizes);

/// Smallest algebra containing the generators (plus I if unital, plus adjoints
/// if star). The closure multiplies pairs of current basis elements until a full
/// round adds nothing. ambient_dim is only needed when generators is empty.
MatrixAlgebra generate_algebra(std::span<const CMatrix> generators, bool unital, bool star,
                               const NumericConfig& cfg, int ambient_dim = 0);

/// {X in ambient : S_i X = X S_i for all i}, as the numerical nullspace of the
/// stacked maps X -> S_i X - X S_i in ambient coordinates.
MatrixAlgebra relative_commutant(std::span<const CMatrix> s, const MatrixAlgebra& ambient,
                                 const NumericConfig& cfg);

/// (A, ambient)''. Throws InvalidInput unless A is contained in ambient.
MatrixAlgebra double_commutant(const MatrixAlgebra& a, const MatrixAlgebra& ambient,
                               const NumericConfig& cfg);

/// B intersected with its own commutant.
MatrixAlgebra center(const MatrixAlgebra& b, const NumericConfig& cfg);

struct NormalityResult {
  bool normal = false;
  MatrixAlgebra bicommutant;
  /// Element of the double commutant farthest from A (only when not normal).
  std::optional<CMatrix> witness;
  double witness_distance = 0.0;
};

/// A is normal in ambient iff A equals its relative double commutant.
NormalityResult is_normal(const MatrixAlgebra& a, const MatrixAlgebra& ambient,
                          const NumericConfig& cfg);

/// Hilbert-Schmidt orthogonal projection onto a unital *-algebra; this is the
/// trace-preserving conditional expectation.
CMatrix hs_conditional_expectation(const CMatrix& t, const MatrixAlgebra& a);

}  // namespace opalg
