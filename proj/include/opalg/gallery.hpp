#pragma once

#include <string>
#include <utility>
#include <vector>

#include "opalg/algebra.hpp"
#include "opalg/linalg.hpp"
#include "opalg/random.hpp"

namespace opalg::gallery {

/// Ordered (name, value) pairs reported alongside a pass/fail verdict.
using Evidence = std::vector<std::pair<std::string, double>>;

/// The 3-dimensional commutative algebras of 3x3 matrices
///   N_1 = {[[a, b, c], [0, a, 0], [0, 0, a]]},  N_2 = {[[a, 0, c], [0, a, b], [0, 0, a]]}.
MatrixAlgebra build_N(int j, const NumericConfig& cfg);

/// {[[alpha I_2, X], [0, alpha I_2]] : trace X = 0} in M_4.
MatrixAlgebra build_counterexample_4x4(const NumericConfig& cfg);

enum class TnForm {
  /// Weighted shift with weights min(k/n, 1): the sum runs over k < n.
  kWeightedShift,
  /// The bracket S^n S*^n + sum_{k=1}^{n} (k/n) S^k (1 - S S*) S*^k taken literally,
  /// which counts the k = n projection twice.
  kLiteral,
};

/// [S^n S*^n + sum_k (k/n) S^k (1 - S S*) S*^k] S with S the N x N truncated
/// shift (ones on the subdiagonal). Throws InvalidInput if n < 1 or N < 4n.
CMatrix build_Tn(int n, int N, TnForm form = TnForm::kWeightedShift);

struct TnReport {
  int n = 0;
  int N = 0;
  /// ||[T, T*]|| compressed to the first N - 1 coordinates, where the
  /// truncated shift still acts as an isometry.
  double commutator_norm = 0.0;
  /// Same quantity at 2N.
  double commutator_norm_doubled = 0.0;
  /// |commutator_norm(N) - commutator_norm(2N)|.
  double slack = 0.0;
  /// ||[T, T*]|| of the full truncation, including the boundary artifact.
  double boundary_commutator_norm = 0.0;
  double op_norm = 0.0;
  double bound = 0.0;  // 2/n
  /// Non-certified evidence about the distance to normal operators: ||T|| is
  /// an upper bound (0 is normal) and sqrt(||T||^2 + c/2) - ||T|| with
  /// c = ||[T, T*]|| a lower bound.
  double normal_distance_upper = 0.0;
  double normal_distance_lower = 0.0;
};

TnReport tn_commutator_check(int n, int N, TnForm form = TnForm::kWeightedShift);

struct SubdirectReport {
  int k = 0;
  int algebra_dim = 0;      // dim A, A generated by I and a (+) a
  int bicommutant_dim = 0;  // dim (A, M_k (+) M_k)''
  int cstar_dim = 0;        // dim C*(a) in M_k
  bool formula_holds = false;  // (A, B)'' = C*(a) (+) C*(a)
  bool strict = false;         // A is a proper subspace of (A, B)''
};

/// Throws InvalidInput unless a is square and selfadjoint within cfg.eq_tol.
SubdirectReport subdirect_check(const CMatrix& a, const NumericConfig& cfg);

struct LittleScanReport {
  int n = 0;
  int trials = 0;
  int normal = 0;
  int non_normal = 0;
  /// n = 4 only: the explicit counterexample plus its random unitary conjugates.
  int injected = 0;
  int injected_non_normal = 0;
  bool pass = false;
};

/// Random unital commutative subalgebras of M_n, n in {2, 3, 4}.
LittleScanReport little_scan(int n, int trials, const NumericConfig& cfg, int injected_conjugates = 20);

/// Random unital commutative subalgebra of M_n (exposed for the suites).
MatrixAlgebra random_commutative_algebra(int n, Rng& rng, const NumericConfig& cfg);

struct InjReport {
  int direct_sum_instances = 0;
  int direct_sum_failures = 0;
  int matrix_amplification_instances = 0;
  int matrix_amplification_failures = 0;
  bool pass = false;
};

/// Normality is preserved by direct sums over central projections and by
/// passing to M_k(E) in M_k(D). Each family gets `instances` seeded instances
/// plus fixed hand-picked ones.
InjReport prop_inj_structure_checks(int instances, const NumericConfig& cfg);

struct GalleryItem {
  std::string name;
  std::vector<int> params;
  std::string claim;
  std::string citation;
  bool pass = false;
  Evidence evidence;
};

/// Names, parameters, claims and citations of every item, in catalog order.
std::vector<GalleryItem> catalog();

/// Runs every item (in parallel up to `jobs`); results are in catalog order and
/// do not depend on `jobs`.
std::vector<GalleryItem> run_gallery(const NumericConfig& cfg, int jobs);

/// Runs a single item by name; throws InvalidInput for unknown names.
GalleryItem run_item(const std::string& name, const NumericConfig& cfg);

}  // namespace opalg::gallery
