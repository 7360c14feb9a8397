#include "opalg/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "opalg/errors.hpp"

namespace opalg {
namespace {

void require_same_dim(std::span<const CMatrix> mats, int n, const char* what) {
  for (const auto& m : mats) {
    require_square_finite(m, what);
    if (m.rows() != n) throw InvalidInput(std::string(what) + ": dimension mismatch");
  }
}

// Incremental orthonormal basis with classical Gram-Schmidt, applied twice.
class BasisBuilder {
 public:
  BasisBuilder(int n, CMatrix start) : n_(n), q_(std::move(start)) {}

  // Adds the component of x orthogonal to the current span when its HS norm
  // exceeds tol * max(1, ||x||). Returns true if the basis grew.
  bool add(const CMatrix& x, double tol) {
    CVector v = x.reshaped();
    const double scale = std::max(1.0, v.norm());
    for (int pass = 0; pass < 2 && q_.cols() > 0; ++pass) {
      v -= q_ * (q_.adjoint() * v);
    }
    const double r = v.norm();
    if (r <= tol * scale) return false;
    q_.conservativeResize(q_.rows(), q_.cols() + 1);
    q_.col(q_.cols() - 1) = v / r;
    return true;
  }

  int dim() const { return static_cast<int>(q_.cols()); }
  CMatrix element(int k) const { return q_.col(k).reshaped(n_, n_); }
  const CMatrix& columns() const { return q_; }

 private:
  int n_;
  CMatrix q_;
};

}  // namespace

AlgebraDefects algebra_defects(const OperatorSubspace& space) {
  AlgebraDefects d;
  const int n = space.ambient_dim();
  const auto basis = space.basis();
  for (const auto& bi : basis) {
    for (const auto& bj : basis) d.product = std::max(d.product, space.residual(bi * bj));
    d.adjoint = std::max(d.adjoint, space.residual(bi.adjoint()));
  }
  d.identity = space.residual(CMatrix::Identity(n, n)) / std::sqrt(static_cast<double>(n));
  return d;
}

MatrixAlgebra make_algebra(OperatorSubspace space, const NumericConfig& cfg) {
  const AlgebraDefects d = algebra_defects(space);
  if (d.product > cfg.eq_tol) {
    std::ostringstream os;
    os << "space is not closed under multiplication (residual " << d.product << ")";
    throw InvalidInput(os.str());
  }
  MatrixAlgebra a{std::move(space), d.identity <= cfg.eq_tol, d.adjoint <= cfg.eq_tol};
  return a;
}

void check_algebra(const MatrixAlgebra& a, const NumericConfig& cfg) {
  const AlgebraDefects d = algebra_defects(a.space);
  if (d.product > cfg.eq_tol) throw InvalidInput("algebra is not closed under multiplication");
  if (a.selfadjoint && d.adjoint > cfg.eq_tol) throw InvalidInput("algebra is not closed under adjoint");
  if (a.unital && d.identity > cfg.eq_tol) throw InvalidInput("algebra does not contain the identity");
}

MatrixAlgebra full_algebra(int n) {
  if (n <= 0) throw InvalidInput("full_algebra: n must be positive");
  return MatrixAlgebra{OperatorSubspace(n, CMatrix::Identity(n * n, n * n)), true, true};
}

MatrixAlgebra diagonal_algebra(int n) {
  if (n <= 0) throw InvalidInput("diagonal_algebra: n must be positive");
  CMatrix q = CMatrix::Zero(n * n, n);
  for (int i = 0; i < n; ++i) q(i * n + i, i) = 1.0;
  return MatrixAlgebra{OperatorSubspace(n, std::move(q)), true, true};
}

MatrixAlgebra scalar_algebra(int n) {
  if (n <= 0) throw InvalidInput("scalar_algebra: n must be positive");
  CMatrix q = CMatrix::Zero(n * n, 1);
  for (int i = 0; i < n; ++i) q(i * n + i, 0) = 1.0 / std::sqrt(static_cast<double>(n));
  return MatrixAlgebra{OperatorSubspace(n, std::move(q)), true, true};
}

MatrixAlgebra block_diagonal_algebra(std::span<const int> sizes) {
  int n = 0;
  for (int s : sizes) {
    if (s <= 0) throw InvalidInput("block_diagonal_algebra: block sizes must be positive");
    n += s;
  }
  if (n == 0) throw InvalidInput("block_diagonal_algebra: no blocks");
  int d = 0;
  for (int s : sizes) d += s * s;
  CMatrix q = CMatrix::Zero(n * n, d);
  int offset = 0;
  int col = 0;
  for (int s : sizes) {
    for (int j = 0; j < s; ++j) {
      for (int i = 0; i < s; ++i) q((offset + j) * n + (offset + i), col++) = 1.0;
    }
    offset += s;
  }
  return MatrixAlgebra{OperatorSubspace(n, std::move(q)), true, true};
}

MatrixAlgebra generate_algebra(std::span<const CMatrix> generators, bool unital, bool star,
                               const NumericConfig& cfg, int ambient_dim) {
  cfg.validate();
  const int n = generators.empty() ? ambient_dim : static_cast<int>(generators.front().rows());
  if (n <= 0) throw InvalidInput("generate_algebra: need generators or a positive ambient_dim");
  if (n > cfg.dim_cap) {
    std::ostringstream os;
    os << "generate_algebra: dimension " << n << " exceeds cap " << cfg.dim_cap;
    throw ResourceError(os.str());
  }
  require_same_dim(generators, n, "generate_algebra");

  std::vector<CMatrix> seed(generators.begin(), generators.end());
  if (star) {
    for (const auto& g : generators) seed.push_back(g.adjoint());
  }
  if (unital) seed.push_back(CMatrix::Identity(n, n));
  const OperatorSubspace initial = orthonormalize(seed, cfg.rank_tol, n);

  BasisBuilder builder(n, initial.columns());
  const int full = n * n;
  for (bool grew = true; grew && builder.dim() < full;) {
    grew = false;
    const int d = builder.dim();
    std::vector<CMatrix> current;
    current.reserve(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) current.push_back(builder.element(k));
    for (int i = 0; i < d && builder.dim() < full; ++i) {
      if (star) grew |= builder.add(current[static_cast<std::size_t>(i)].adjoint(), cfg.rank_tol);
      for (int j = 0; j < d && builder.dim() < full; ++j) {
        grew |= builder.add(current[static_cast<std::size_t>(i)] * current[static_cast<std::size_t>(j)],
                            cfg.rank_tol);
      }
    }
  }
  return make_algebra(OperatorSubspace(n, builder.columns()), cfg);
}

MatrixAlgebra relative_commutant(std::span<const CMatrix> s, const MatrixAlgebra& ambient,
                                 const NumericConfig& cfg) {
  const int n = ambient.ambient_dim();
  require_same_dim(s, n, "relative_commutant");
  const int d = ambient.dim();
  if (s.empty() || d == 0) return ambient;

  const auto basis = ambient.basis();
  const Eigen::Index block = static_cast<Eigen::Index>(n) * n;
  CMatrix m(block * static_cast<Eigen::Index>(s.size()), d);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (int k = 0; k < d; ++k) {
      const CMatrix c = s[i] * basis[static_cast<std::size_t>(k)] - basis[static_cast<std::size_t>(k)] * s[i];
      m.block(static_cast<Eigen::Index>(i) * block, k, block, 1) = c.reshaped();
    }
  }
  // Not BDCSVD: in Eigen 3.4 its null vectors can be wrong when several
  // singular values are exactly zero.
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  // Anchor the cut to the generator scale too, so roundoff-sized commutators
  // (everything commutes) are not mistaken for rank.
  double scale = 0.0;
  for (const auto& x : s) scale = std::max(scale, x.norm());
  const double cut = cfg.rank_tol * std::max(sv.size() > 0 ? sv(0) : 0.0, scale);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  const CMatrix null = svd.matrixV().rightCols(d - rank);
  return make_algebra(OperatorSubspace(n, ambient.space.columns() * null), cfg);
}

MatrixAlgebra double_commutant(const MatrixAlgebra& a, const MatrixAlgebra& ambient,
                               const NumericConfig& cfg) {
  if (a.ambient_dim() != ambient.ambient_dim()) {
    throw InvalidInput("double_commutant: ambient dimension mismatch");
  }
  if (!subspace_contains(ambient.space, a.space, cfg.eq_tol)) {
    throw InvalidInput("double_commutant: algebra is not contained in the ambient algebra");
  }
  const MatrixAlgebra first = relative_commutant(a.basis(), ambient, cfg);
  return relative_commutant(first.basis(), ambient, cfg);
}

MatrixAlgebra center(const MatrixAlgebra& b, const NumericConfig& cfg) {
  return relative_commutant(b.basis(), b, cfg);
}

NormalityResult is_normal(const MatrixAlgebra& a, const MatrixAlgebra& ambient,
                          const NumericConfig& cfg) {
  NormalityResult out;
  out.bicommutant = double_commutant(a, ambient, cfg);
  out.normal = subspace_equal(a.space, out.bicommutant.space, cfg.eq_tol);
  if (!out.normal) {
    int best = -1;
    double best_resid = -1.0;
    for (int k = 0; k < out.bicommutant.dim(); ++k) {
      const double r = a.space.residual(out.bicommutant.space.element(k));
      if (r > best_resid) {
        best_resid = r;
        best = k;
      }
    }
    if (best >= 0 && best_resid > cfg.eq_tol) {
      out.witness = out.bicommutant.space.element(best);
      out.witness_distance = best_resid;
    }
  }
  return out;
}

CMatrix hs_conditional_expectation(const CMatrix& t, const MatrixAlgebra& a) {
  if (!a.selfadjoint || !a.unital) {
    throw InvalidInput("hs_conditional_expectation: algebra must be unital and selfadjoint");
  }
  require_square_finite(t, "hs_conditional_expectation");
  return a.space.project(t);
}

}  // namespace opalg
