#include "opalg/subspace.hpp"

#include <algorithm>

#include "opalg/errors.hpp"

namespace opalg {

OperatorSubspace::OperatorSubspace(int ambient_dim, CMatrix orthonormal_columns)
    : ambient_dim_(ambient_dim), columns_(std::move(orthonormal_columns)) {
  if (ambient_dim <= 0) throw InvalidInput("OperatorSubspace: ambient_dim must be positive");
  if (columns_.cols() == 0) columns_.resize(static_cast<Eigen::Index>(ambient_dim) * ambient_dim, 0);
  if (columns_.rows() != static_cast<Eigen::Index>(ambient_dim) * ambient_dim) {
    throw InvalidInput("OperatorSubspace: column length does not match ambient_dim^2");
  }
}

OperatorSubspace OperatorSubspace::zero(int ambient_dim) {
  return OperatorSubspace(ambient_dim, CMatrix());
}

CMatrix OperatorSubspace::element(int k) const {
  return columns_.col(k).reshaped(ambient_dim_, ambient_dim_);
}

std::vector<CMatrix> OperatorSubspace::basis() const {
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(dim()));
  for (int k = 0; k < dim(); ++k) out.push_back(element(k));
  return out;
}

CVector OperatorSubspace::coefficients(const CMatrix& x) const {
  if (x.rows() != ambient_dim_ || x.cols() != ambient_dim_) {
    throw InvalidInput("OperatorSubspace: element has wrong dimension");
  }
  if (dim() == 0) return CVector(0);
  return columns_.adjoint() * x.reshaped();
}

CMatrix OperatorSubspace::combine(const CVector& coeffs) const {
  if (coeffs.size() != dim()) throw InvalidInput("OperatorSubspace: coefficient count mismatch");
  if (dim() == 0) return CMatrix::Zero(ambient_dim_, ambient_dim_);
  CVector v = columns_ * coeffs;
  return v.reshaped(ambient_dim_, ambient_dim_);
}

CMatrix OperatorSubspace::project(const CMatrix& x) const { return combine(coefficients(x)); }

double OperatorSubspace::residual(const CMatrix& x) const { return (x - project(x)).norm(); }

OperatorSubspace orthonormalize(std::span<const CMatrix> spanning_set, double rank_tol,
                                int ambient_dim) {
  if (spanning_set.empty()) {
    if (ambient_dim <= 0) throw InvalidInput("orthonormalize: empty set needs an ambient_dim");
    return OperatorSubspace::zero(ambient_dim);
  }
  const auto n = spanning_set.front().rows();
  for (const auto& m : spanning_set) {
    if (m.rows() != n || m.cols() != n) throw InvalidInput("orthonormalize: dimension mismatch");
    if (!m.allFinite()) throw InvalidInput("orthonormalize: non-finite entry");
  }
  const CMatrix stacked = stack_vectorized(spanning_set);
  Eigen::JacobiSVD<CMatrix> svd(stacked, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  if (sv.size() > 0 && sv(0) > 0.0) {
    while (rank < sv.size() && sv(rank) > rank_tol * sv(0)) ++rank;
  }
  return OperatorSubspace(static_cast<int>(n), svd.matrixU().leftCols(rank));
}

double subspace_excess(const OperatorSubspace& v, const OperatorSubspace& w) {
  if (v.ambient_dim() != w.ambient_dim()) {
    throw InvalidInput("subspace comparison: ambient dimension mismatch");
  }
  if (w.dim() == 0) return 0.0;
  CMatrix resid = w.columns();
  if (v.dim() > 0) resid -= v.columns() * (v.columns().adjoint() * w.columns());
  return resid.colwise().norm().maxCoeff();
}

bool subspace_contains(const OperatorSubspace& v, const OperatorSubspace& w, double tol) {
  return subspace_excess(v, w) <= tol;
}

bool subspace_equal(const OperatorSubspace& v, const OperatorSubspace& w, double tol) {
  return subspace_contains(v, w, tol) && subspace_contains(w, v, tol);
}

bool closed_under_adjoint(const OperatorSubspace& v, double tol) {
  for (int k = 0; k < v.dim(); ++k) {
    if (v.residual(v.element(k).adjoint()) > tol) return false;
  }
  return true;
}

}  // namespace opalg
