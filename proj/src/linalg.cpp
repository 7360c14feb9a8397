#include "opalg/linalg.hpp"

#include <cmath>
#include <sstream>

#include "opalg/errors.hpp"

namespace opalg {

void NumericConfig::validate() const {
  if (!(rank_tol > 0.0 && rank_tol <= eq_tol && eq_tol < 1.0)) {
    throw InvalidInput("NumericConfig: need 0 < rank_tol <= eq_tol < 1");
  }
  if (opt_restarts <= 0 || opt_max_iters <= 0 || dim_cap <= 0) {
    throw InvalidInput("NumericConfig: counts must be positive");
  }
  if (!(opt_step > 0.0) || !std::isfinite(opt_step)) {
    throw InvalidInput("NumericConfig: opt_step must be positive");
  }
}

void require_square_finite(const CMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw InvalidInput(os.str());
  }
  if (!m.allFinite()) {
    throw InvalidInput(std::string(what) + ": non-finite entry");
  }
}

double op_norm(const CMatrix& m) {
  require_square_finite(m, "op_norm");
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

CMatrix commutator(const CMatrix& x, const CMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw InvalidInput("commutator: dimension mismatch");
  }
  return x * y - y * x;
}

CMatrix kron(const CMatrix& x, const CMatrix& y) {
  CMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return out;
}

CMatrix direct_sum(const CMatrix& x, const CMatrix& y) {
  CMatrix out = CMatrix::Zero(x.rows() + y.rows(), x.cols() + y.cols());
  out.topLeftCorner(x.rows(), x.cols()) = x;
  out.bottomRightCorner(y.rows(), y.cols()) = y;
  return out;
}

CMatrix direct_sum(std::span<const CMatrix> parts) {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  for (const auto& p : parts) {
    rows += p.rows();
    cols += p.cols();
  }
  CMatrix out = CMatrix::Zero(rows, cols);
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  for (const auto& p : parts) {
    out.block(r, c, p.rows(), p.cols()) = p;
    r += p.rows();
    c += p.cols();
  }
  return out;
}

Complex hs_inner(const CMatrix& x, const CMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw InvalidInput("hs_inner: dimension mismatch");
  }
  return (y.adjoint() * x).trace();
}

double hs_norm(const CMatrix& x) { return x.norm(); }

CMatrix identity(int n) { return CMatrix::Identity(n, n); }

CMatrix matrix_unit(int n, int row, int col) {
  CMatrix e = CMatrix::Zero(n, n);
  e(row, col) = 1.0;
  return e;
}

CMatrix diag(std::initializer_list<Complex> entries) {
  return diag(std::span<const Complex>(entries.begin(), entries.size()));
}

CMatrix diag(std::span<const Complex> entries) {
  const auto n = static_cast<Eigen::Index>(entries.size());
  CMatrix d = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) d(i, i) = entries[static_cast<std::size_t>(i)];
  return d;
}

CMatrix polar_unitary(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

CMatrix expi_hermitian(const CMatrix& h, double t) {
  const CMatrix herm = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
  CVector phases(herm.rows());
  for (Eigen::Index i = 0; i < herm.rows(); ++i) {
    phases(i) = std::exp(Complex(0.0, t * es.eigenvalues()(i)));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double min_hermitian_eigenvalue(const CMatrix& m) {
  const CMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

CMatrix stack_vectorized(std::span<const CMatrix> mats) {
  if (mats.empty()) return CMatrix(0, 0);
  const Eigen::Index len = mats.front().size();
  CMatrix out(len, static_cast<Eigen::Index>(mats.size()));
  for (std::size_t k = 0; k < mats.size(); ++k) {
    if (mats[k].size() != len) throw InvalidInput("stack_vectorized: dimension mismatch");
    out.col(static_cast<Eigen::Index>(k)) = mats[k].reshaped();
  }
  return out;
}

double trace_norm(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues().sum();
}

}  // namespace opalg
