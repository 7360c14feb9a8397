#pragma once

#include <vector>

#include "opalg/algebra.hpp"
#include "opalg/linalg.hpp"
#include "opalg/random.hpp"

namespace opalg {

struct Block {
  int size = 1;          // s_k
  int multiplicity = 1;  // m_k
};

/// Wedderburn form of a unital *-algebra: U* a U = (+)_k (a_k (x) I_{m_k}).
///
/// Inside block k, coordinates are ordered (j, alpha) -> j * m_k + alpha with
/// j < s_k and alpha < m_k, so the algebra acts as kron(a_k, I_{m_k}) and its
/// commutant as kron(I_{s_k}, c_k).
struct BlockStructure {
  int ambient_dim = 0;
  CMatrix unitary;
  std::vector<Block> blocks;

  /// Offset of block k in the adapted basis.
  int offset(std::size_t k) const;
  /// Sum of s_k^2.
  int algebra_dim() const;
};

/// Pairwise orthogonal projections summing to I that generate the center.
/// Throws InvalidInput for non-selfadjoint or non-unital input.
std::vector<CMatrix> minimal_central_projections(const MatrixAlgebra& a, const NumericConfig& cfg);

/// Throws InvalidInput if `a` fails its closure invariants and StructuralError if
/// the blocks cannot be resolved after the allowed number of random draws.
BlockStructure wedderburn(const MatrixAlgebra& a, const NumericConfig& cfg);

/// The algebra (+)_k M_{s_k} (x) I_{m_k}, conjugated back by the unitary.
MatrixAlgebra rebuild_algebra(const BlockStructure& bs);

/// Assembles (+)_k kron(w_k, I_{m_k}) in adapted coordinates.
CMatrix assemble_block_diagonal(const BlockStructure& bs, const std::vector<CMatrix>& parts);

/// Haar-random unitary of (+)_k U(s_k) (x) I_{m_k}, in adapted coordinates.
std::vector<CMatrix> haar_block_unitaries(const BlockStructure& bs, Rng& rng);

/// Blockwise (1/m_k) Tr_{m_k} of the diagonal blocks of x (adapted coordinates).
std::vector<CMatrix> block_partial_traces(const BlockStructure& bs, const CMatrix& x,
                                          bool normalize);

/// Exact Haar average of W T W* over unitaries W of the commutant of a, which
/// is the trace-preserving conditional expectation onto (a, M_n)'' = a.
CMatrix twirl_expectation(const CMatrix& t, const MatrixAlgebra& a, const NumericConfig& cfg);

/// Same, reusing a precomputed decomposition of a.
CMatrix twirl_expectation(const CMatrix& t, const BlockStructure& bs);

}  // namespace opalg
