#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "opalg/algebra.hpp"
#include "opalg/blocks.hpp"
#include "opalg/linalg.hpp"

namespace opalg {

/// A computed distance or seminorm with bracketing bounds and a certificate.
struct DistanceReport {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  /// Optimal approximant for distances; best unitary (or contraction) for d_n.
  std::optional<CMatrix> witness;
  int iterations = 0;
  bool converged = false;
};

/// min over a in V of ||T - a||, by smoothed minimization of the largest
/// singular value (log-sum-exp over squared singular values with continuation)
/// followed by BFGS refinement.
///
/// `upper` is ||T - witness|| for the best iterate. `lower` comes from a dual
/// certificate: for any Y orthogonal to V, |<T, Y>| / ||Y||_1 <= dist(T, V).
/// converged is set iff upper - lower <= 1e-6 * max(1, ||T||).
DistanceReport dist_opnorm(const CMatrix& t, const OperatorSubspace& v, const NumericConfig& cfg);

/// Result of the derivation seminorm computation.
struct DerivationReport {
  DistanceReport report;
  /// Best ||WT - TW|| over unitaries W of the commutant.
  double unitary_value = 0.0;
  /// Best ||WT - TW|| / ||W|| over the (non-selfadjoint) commutant, when the
  /// commutant is not closed under adjoint; otherwise empty.
  std::optional<double> contraction_value;
  bool commutant_selfadjoint = true;
  /// In finite dimensions the asymptotic seminorm equals the exact one.
  bool approximate_alias = false;
};

/// d_n(T, A, ambient) = sup ||WT - TW|| over contractions W in (A, ambient)'.
///
/// The sup is searched over the unitary group of the commutant, parametrized
/// blockwise through its Wedderburn form, by polar steps on a log-sum-exp
/// smoothing of the singular values (smoothing shrinks as steps stall), from
/// cfg.opt_restarts Haar-random starts. `lower` is the best value
/// found; `upper` is min(2 dist(T, A''), 2 dist(T, A)).
DerivationReport d_n(const CMatrix& t, const MatrixAlgebra& a, const MatrixAlgebra& ambient,
                     const NumericConfig& cfg);

/// Alias of d_n flagged as the asymptotic seminorm.
DerivationReport d_an(const CMatrix& t, const MatrixAlgebra& a, const MatrixAlgebra& ambient,
                      const NumericConfig& cfg);

/// max ||WT - TW|| over `num_samples` Haar-random unitaries of the commutant.
/// Always a lower bound for d_n.
double d_n_sampling_oracle(const CMatrix& t, const MatrixAlgebra& a, const MatrixAlgebra& ambient,
                           int num_samples, const NumericConfig& cfg);

struct KnEstimate {
  /// Empirical lower bound of K_n = K_an; +infinity if A is not normal.
  double value = 0.0;
  bool infinite = false;
  int samples_used = 0;
  int samples_skipped = 0;
  /// Largest dist(T, A) - d_n(T, A, ambient) over the samples.
  double max_dist_excess = -std::numeric_limits<double>::infinity();
  /// Element with d_n = 0 but positive distance to A (when infinite).
  std::optional<CMatrix> non_normal_witness;
};

/// max over sampled unit-HS Gaussian T in ambient of dist(T, A) / d_n(T, A, ambient).
/// Samples run on up to `jobs` threads; the reduction is in sample order.
KnEstimate kn_lower_estimate(const MatrixAlgebra& a, const MatrixAlgebra& ambient, int num_samples,
                             const NumericConfig& cfg, int jobs = 1);

struct CompositionCheck {
  double bound_factor = 0.0;  // k_DB + k_AD (2 k_DB + 1)
  int samples = 0;
  int violations = 0;
  /// Largest dist(T, A) / d_n(T, A, ambient) seen.
  double max_ratio = 0.0;
};

/// Per-sample check of dist(T, A) <= [k_DB + k_AD (2 k_DB + 1)] d_n(T, A, ambient)
/// + eq_tol for the chain A in D in ambient with certified constants k_AD, k_DB.
CompositionCheck composition_inequality_check(const MatrixAlgebra& a, const MatrixAlgebra& d,
                                              const MatrixAlgebra& ambient, double k_ad, double k_db,
                                              int samples, const NumericConfig& cfg);

/// Random element of `space` with Gaussian coordinates, scaled to unit HS norm.
CMatrix random_unit_element(const OperatorSubspace& space, Rng& rng);

}  // namespace opalg
