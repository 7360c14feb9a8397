#include "opalg/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "opalg/errors.hpp"

namespace opalg {
namespace {

constexpr int kMaxDraws = 5;
constexpr std::uint64_t kCentralStream = 0xce47;
constexpr std::uint64_t kBlockStream = 0xb10c;

// Groups of consecutive (ascending) eigenvalues separated by more than gap_tol.
std::vector<std::vector<int>> cluster_eigenvalues(const Eigen::VectorXd& evals, double gap_tol) {
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < evals.size(); ++i) {
    if (groups.empty() || evals(i) - evals(i - 1) > gap_tol) groups.emplace_back();
    groups.back().push_back(i);
  }
  return groups;
}

double cluster_tolerance(const Eigen::VectorXd& evals) {
  const double scale = std::max(1.0, evals.cwiseAbs().maxCoeff());
  return 1e-6 * scale;
}

CMatrix random_hermitian_in(const std::vector<CMatrix>& basis, Rng& rng) {
  CMatrix h = CMatrix::Zero(basis.front().rows(), basis.front().cols());
  for (const auto& b : basis) h += rng.normal() * (b + b.adjoint());
  return 0.5 * (h + h.adjoint());
}

CMatrix columns_of(const CMatrix& evecs, const std::vector<int>& idx) {
  CMatrix out(evecs.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = evecs.col(idx[c]);
  return out;
}

void require_star_unital(const MatrixAlgebra& a, const char* what) {
  if (!a.selfadjoint) throw InvalidInput(std::string(what) + ": algebra must be selfadjoint");
  if (!a.unital) throw InvalidInput(std::string(what) + ": algebra must be unital");
}

// Isometries V_k (n x r_k) onto the ranges of the minimal central projections.
std::vector<CMatrix> central_split(const MatrixAlgebra& a, const NumericConfig& cfg) {
  const int n = a.ambient_dim();
  const MatrixAlgebra z = center(a, cfg);
  if (z.dim() <= 1) return {CMatrix::Identity(n, n)};
  const auto zb = z.basis();
  Rng rng(cfg.rng_seed, kCentralStream);
  for (int draw = 0; draw < kMaxDraws; ++draw) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(random_hermitian_in(zb, rng));
    const auto groups = cluster_eigenvalues(es.eigenvalues(), cluster_tolerance(es.eigenvalues()));
    if (static_cast<int>(groups.size()) != z.dim()) continue;
    std::vector<CMatrix> out;
    for (const auto& g : groups) out.push_back(columns_of(es.eigenvectors(), g));
    return out;
  }
  throw StructuralError("minimal_central_projections: could not separate the center spectrum");
}

// Orthonormal basis of C^r in which the compressed block algebra acts as
// kron(M_s, I_m).
CMatrix block_basis(const std::vector<CMatrix>& sub_basis, int s, int m, Rng& rng) {
  const int r = s * m;
  if (s == 1) return CMatrix::Identity(r, r);
  for (int draw = 0; draw < kMaxDraws; ++draw) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(random_hermitian_in(sub_basis, rng));
    const auto groups = cluster_eigenvalues(es.eigenvalues(), cluster_tolerance(es.eigenvalues()));
    if (static_cast<int>(groups.size()) != s) continue;
    if (std::any_of(groups.begin(), groups.end(),
                    [m](const auto& g) { return static_cast<int>(g.size()) != m; })) {
      continue;
    }
    std::vector<CMatrix> w;
    for (const auto& g : groups) w.push_back(columns_of(es.eigenvectors(), g));

    CMatrix out(r, r);
    out.leftCols(m) = w[0];
    for (int j = 1; j < s; ++j) {
      // Q_0 A Q_j is one-dimensional; its elements are multiples of a partial
      // isometry from range(Q_j) onto range(Q_0).
      CMatrix best;
      double best_norm = -1.0;
      for (const auto& b : sub_basis) {
        CMatrix x = w[0].adjoint() * b * w[static_cast<std::size_t>(j)];
        const double nrm = x.norm();
        if (nrm > best_norm) {
          best_norm = nrm;
          best = std::move(x);
        }
      }
      if (best_norm <= 1e-8) throw StructuralError("wedderburn: block matrix units not found");
      out.middleCols(j * m, m) = w[static_cast<std::size_t>(j)] * polar_unitary(best).adjoint();
    }
    return out;
  }
  throw StructuralError("wedderburn: could not split a simple block into minimal projections");
}

// Residual of x against the structured space (+)_k M_{s_k} (x) I_{m_k}.
double structure_residual(const BlockStructure& bs, const CMatrix& x_adapted) {
  const CMatrix fitted = assemble_block_diagonal(bs, block_partial_traces(bs, x_adapted, true));
  return (x_adapted - fitted).norm();
}

}  // namespace

int BlockStructure::offset(std::size_t k) const {
  int off = 0;
  for (std::size_t i = 0; i < k; ++i) off += blocks[i].size * blocks[i].multiplicity;
  return off;
}

int BlockStructure::algebra_dim() const {
  int d = 0;
  for (const auto& b : blocks) d += b.size * b.size;
  return d;
}

std::vector<CMatrix> minimal_central_projections(const MatrixAlgebra& a, const NumericConfig& cfg) {
  require_star_unital(a, "minimal_central_projections");
  std::vector<CMatrix> out;
  for (const auto& v : central_split(a, cfg)) out.push_back(v * v.adjoint());
  return out;
}

BlockStructure wedderburn(const MatrixAlgebra& a, const NumericConfig& cfg) {
  require_star_unital(a, "wedderburn");
  check_algebra(a, cfg);
  const int n = a.ambient_dim();
  const auto basis = a.basis();
  Rng rng(cfg.rng_seed, kBlockStream);

  BlockStructure bs;
  bs.ambient_dim = n;
  bs.unitary = CMatrix(n, n);
  int col = 0;
  for (const auto& v : central_split(a, cfg)) {
    const int r = static_cast<int>(v.cols());
    std::vector<CMatrix> compressed;
    compressed.reserve(basis.size());
    for (const auto& b : basis) compressed.push_back(v.adjoint() * b * v);
    const OperatorSubspace sub = orthonormalize(compressed, cfg.rank_tol, r);
    const int s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(sub.dim()))));
    if (s <= 0 || s * s != sub.dim() || r % s != 0) {
      std::ostringstream os;
      os << "wedderburn: central block of rank " << r << " carries an algebra of dimension "
         << sub.dim() << ", which is not a full matrix block";
      throw StructuralError(os.str());
    }
    const int m = r / s;
    bs.unitary.middleCols(col, r) = v * block_basis(sub.basis(), s, m, rng);
    bs.blocks.push_back(Block{s, m});
    col += r;
  }

  for (const auto& b : basis) {
    if (structure_residual(bs, bs.unitary.adjoint() * b * bs.unitary) > cfg.eq_tol) {
      throw StructuralError("wedderburn: adapted basis does not block-diagonalize the algebra");
    }
  }
  return bs;
}

MatrixAlgebra rebuild_algebra(const BlockStructure& bs) {
  const int n = bs.ambient_dim;
  CMatrix q(static_cast<Eigen::Index>(n) * n, bs.algebra_dim());
  int col = 0;
  for (std::size_t k = 0; k < bs.blocks.size(); ++k) {
    const auto [s, m] = bs.blocks[k];
    const int off = bs.offset(k);
    for (int j = 0; j < s; ++j) {
      for (int i = 0; i < s; ++i) {
        CMatrix e = CMatrix::Zero(n, n);
        e.block(off, off, s * m, s * m) =
            kron(matrix_unit(s, i, j), CMatrix::Identity(m, m)) / std::sqrt(static_cast<double>(m));
        q.col(col++) = (bs.unitary * e * bs.unitary.adjoint()).reshaped();
      }
    }
  }
  return MatrixAlgebra{OperatorSubspace(n, std::move(q)), true, true};
}

CMatrix assemble_block_diagonal(const BlockStructure& bs, const std::vector<CMatrix>& parts) {
  if (parts.size() != bs.blocks.size()) throw InvalidInput("assemble_block_diagonal: block count mismatch");
  CMatrix out = CMatrix::Zero(bs.ambient_dim, bs.ambient_dim);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto [s, m] = bs.blocks[k];
    const int off = bs.offset(k);
    out.block(off, off, s * m, s * m) = kron(parts[k], CMatrix::Identity(m, m));
  }
  return out;
}

std::vector<CMatrix> haar_block_unitaries(const BlockStructure& bs, Rng& rng) {
  std::vector<CMatrix> out;
  out.reserve(bs.blocks.size());
  for (const auto& b : bs.blocks) out.push_back(haar_unitary(b.size, rng));
  return out;
}

std::vector<CMatrix> block_partial_traces(const BlockStructure& bs, const CMatrix& x, bool normalize) {
  std::vector<CMatrix> out;
  out.reserve(bs.blocks.size());
  for (std::size_t k = 0; k < bs.blocks.size(); ++k) {
    const auto [s, m] = bs.blocks[k];
    const int off = bs.offset(k);
    CMatrix p = CMatrix::Zero(s, s);
    for (int i = 0; i < s; ++i) {
      for (int j = 0; j < s; ++j) {
        for (int alpha = 0; alpha < m; ++alpha) p(i, j) += x(off + i * m + alpha, off + j * m + alpha);
      }
    }
    if (normalize) p /= static_cast<double>(m);
    out.push_back(std::move(p));
  }
  return out;
}

CMatrix twirl_expectation(const CMatrix& t, const BlockStructure& bs) {
  require_square_finite(t, "twirl_expectation");
  if (t.rows() != bs.ambient_dim) throw InvalidInput("twirl_expectation: dimension mismatch");
  const CMatrix adapted = bs.unitary.adjoint() * t * bs.unitary;
  const CMatrix e = assemble_block_diagonal(bs, block_partial_traces(bs, adapted, true));
  return bs.unitary * e * bs.unitary.adjoint();
}

CMatrix twirl_expectation(const CMatrix& t, const MatrixAlgebra& a, const NumericConfig& cfg) {
  require_star_unital(a, "twirl_expectation");
  if (t.rows() != a.ambient_dim()) throw InvalidInput("twirl_expectation: dimension mismatch");
  return twirl_expectation(t, wedderburn(a, cfg));
}

}  // namespace opalg
