#pragma once

#include <string>
#include <vector>

#include "opalg/gallery.hpp"
#include "opalg/io.hpp"
#include "opalg/linalg.hpp"

namespace opalg::suite {

struct CriterionResult {
  int id = 0;
  std::string name;
  double measured = 0.0;
  std::string relation;  // how measured compares to bound: "<=", ">=", "=="
  double bound = 0.0;
  bool pass = false;
  gallery::Evidence evidence;
  /// Wall-clock seconds; kept out of the JSON so reports stay reproducible.
  double seconds = 0.0;
  double runtime_limit = 0.0;
};

struct SuiteReport {
  std::string name;
  NumericConfig cfg;
  std::vector<CriterionResult> criteria;

  bool pass() const;
};

constexpr int kAcceptanceCriteria = 12;

/// Runs the acceptance criteria (all of them when `only` is empty). Criterion
/// 12 re-runs the others under a different worker count and compares JSON.
SuiteReport run_acceptance(const NumericConfig& cfg, int jobs, const std::vector<int>& only = {});

/// Property checks across every module.
SuiteReport run_invariants(const NumericConfig& cfg, int jobs);

/// Deterministic JSON: cfg, per-criterion values and verdicts, no timings.
io::Json suite_to_json(const SuiteReport& r);

/// Random unital *-algebra (+)_k M_{s_k} (x) I_{m_k} in M_n, conjugated by a Haar unitary.
MatrixAlgebra random_block_algebra(int n, Rng& rng, const NumericConfig& cfg);

}  // namespace opalg::suite
