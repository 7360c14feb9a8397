#include "opalg/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

#include "opalg/algebra.hpp"
#include "opalg/blocks.hpp"
#include "opalg/errors.hpp"
#include "opalg/parallel.hpp"
#include "opalg/random.hpp"
#include "opalg/seminorms.hpp"

namespace opalg::suite {
namespace {

using gallery::Evidence;

constexpr std::uint64_t kTurner = 0xa003;
constexpr std::uint64_t kScalar = 0xa005;
constexpr std::uint64_t kTwirl = 0xa007;
constexpr std::uint64_t kSubdirect = 0xa009;
constexpr std::uint64_t kOracle = 0xa00a;
constexpr std::uint64_t kLaws = 0xa00b;
constexpr std::uint64_t kInvariant = 0xb000;

using Check = std::function<CriterionResult(const NumericConfig&, int)>;

struct Spec {
  int id;
  const char* name;
  double runtime_limit;
  Check run;
};

CriterionResult make(double measured, const char* relation, double bound, bool pass, Evidence ev) {
  CriterionResult r;
  r.measured = measured;
  r.relation = relation;
  r.bound = bound;
  r.pass = pass;
  r.evidence = std::move(ev);
  return r;
}

// Violation-count result: passes iff no instance failed.
CriterionResult count_result(int failures, int instances, Evidence extra = {}) {
  Evidence ev{{"instances", instances}, {"failures", failures}};
  ev.insert(ev.end(), extra.begin(), extra.end());
  return make(failures, "==", 0.0, failures == 0, std::move(ev));
}

MatrixAlgebra conjugate_algebra(const MatrixAlgebra& a, const CMatrix& u, const NumericConfig& cfg) {
  std::vector<CMatrix> g;
  for (const auto& b : a.basis()) g.push_back(u * b * u.adjoint());
  return make_algebra(orthonormalize(g, cfg.rank_tol), cfg);
}

double subspace_distance(const OperatorSubspace& v, const OperatorSubspace& w) {
  return std::max(subspace_excess(v, w), subspace_excess(w, v));
}

// A selfadjoint algebra for seminorm checks in M_n.
MatrixAlgebra random_small_star_algebra(int n, Rng& rng, const NumericConfig& cfg) {
  const int kind = static_cast<int>(rng.uniform() * 3.0) % 3;
  if (kind == 0) return scalar_algebra(n);
  if (kind == 1) return diagonal_algebra(n);
  return random_block_algebra(n, rng, cfg);
}

// ---------------------------------------------------------------------------
// Acceptance criteria

CriterionResult c1_self_commutancy(const NumericConfig& cfg, int) {
  double worst = 0.0;
  for (int j : {1, 2}) {
    const MatrixAlgebra n = gallery::build_N(j, cfg);
    const MatrixAlgebra c = relative_commutant(n.basis(), full_algebra(3), cfg);
    worst = std::max(worst, subspace_distance(n.space, c.space));
  }
  return make(worst, "<", 1e-9, worst < 1e-9, {{"max_subspace_distance", worst}});
}

CriterionResult c2_counterexample(const NumericConfig& cfg, int) {
  const MatrixAlgebra a = gallery::build_counterexample_4x4(cfg);
  const NormalityResult r = is_normal(a, full_algebra(4), cfg);
  const bool pass = a.dim() == 4 && r.bicommutant.dim() == 5 && !r.normal;
  return make(r.bicommutant.dim(), "==", 5.0, pass,
              {{"dim", a.dim()}, {"bicommutant_dim", r.bicommutant.dim()}, {"normal", r.normal}});
}

CriterionResult c3_turner(const NumericConfig& cfg, int jobs) {
  constexpr int per_n = 200;
  const auto ok = parallel_map(5 * per_n, jobs, [&](std::size_t i) {
    const int n = 2 + static_cast<int>(i) / per_n;
    Rng rng = Rng(cfg.rng_seed, kTurner).split(i);
    const std::vector<CMatrix> g{gaussian_matrix(n, rng)};
    return is_normal(generate_algebra(g, true, false, cfg), full_algebra(n), cfg).normal ? 1 : 0;
  });
  int failures = 0;
  for (int v : ok) failures += 1 - v;
  return count_result(failures, static_cast<int>(ok.size()));
}

CriterionResult c4_little(const NumericConfig& cfg, int jobs) {
  const auto reports = parallel_map(3, jobs, [&](std::size_t i) {
    return gallery::little_scan(static_cast<int>(i) + 2, i == 2 ? 0 : 200, cfg, 20);
  });
  const int failures = reports[0].non_normal + reports[1].non_normal +
                       (reports[2].injected - reports[2].injected_non_normal);
  return count_result(failures, reports[0].trials + reports[1].trials + reports[2].injected,
                      {{"M2_normal", reports[0].normal},
                       {"M3_normal", reports[1].normal},
                       {"M4_injected", reports[2].injected},
                       {"M4_injected_non_normal", reports[2].injected_non_normal}});
}

CriterionResult c5_scalar_center(const NumericConfig& cfg, int jobs) {
  constexpr int per_n = 100;
  const auto dev = parallel_map(4 * per_n, jobs, [&](std::size_t i) {
    const int n = 2 + static_cast<int>(i) / per_n;
    Rng rng = Rng(cfg.rng_seed, kScalar).split(i);
    const CMatrix t = gaussian_matrix(n, rng);
    const double dist = dist_opnorm(t, scalar_algebra(n).space, cfg).value;
    const double dn = d_n(t, scalar_algebra(n), full_algebra(n), cfg).report.value;
    return std::abs(dn - 2.0 * dist) / (1.0 + op_norm(t));
  });
  const double worst = *std::max_element(dev.begin(), dev.end());
  return make(worst, "<=", 1e-5, worst <= 1e-5, {{"instances", static_cast<double>(dev.size())}});
}

CriterionResult c6_masa(const NumericConfig& cfg, int jobs) {
  double worst_excess = -1.0;
  double min_kn = 1e300;
  double max_kn = 0.0;
  int infinite = 0;
  for (int n = 2; n <= 5; ++n) {
    const KnEstimate k = kn_lower_estimate(diagonal_algebra(n), full_algebra(n), 100, cfg, jobs);
    worst_excess = std::max(worst_excess, k.max_dist_excess);
    min_kn = std::min(min_kn, k.value);
    max_kn = std::max(max_kn, k.value);
    if (k.infinite) ++infinite;
  }
  const bool pass = worst_excess <= 1e-6 && infinite == 0 && min_kn > 0.0 && max_kn <= 1.0 + 1e-4;
  return make(max_kn, "<=", 1.0 + 1e-4, pass,
              {{"max_dist_minus_dn", worst_excess}, {"min_kn_estimate", min_kn}, {"max_kn_estimate", max_kn}});
}

CriterionResult c7_twirl(const NumericConfig& cfg, int jobs) {
  struct Out {
    double excess;
    double residual;
  };
  const auto res = parallel_map(100, jobs, [&](std::size_t i) {
    Rng rng = Rng(cfg.rng_seed, kTwirl).split(i);
    const int n = 2 + static_cast<int>(rng.uniform() * 5.0) % 5;
    const MatrixAlgebra a = random_block_algebra(n, rng, cfg);
    const CMatrix t = gaussian_matrix(n, rng);
    const CMatrix e = twirl_expectation(t, a, cfg);
    const double dn = d_n(t, a, full_algebra(n), cfg).report.value;
    const MatrixAlgebra bic = double_commutant(a, full_algebra(n), cfg);
    return Out{op_norm(t - e) - dn, bic.space.residual(e)};
  });
  double excess = -1e300;
  double residual = 0.0;
  for (const auto& o : res) {
    excess = std::max(excess, o.excess);
    residual = std::max(residual, o.residual);
  }
  const bool pass = excess <= 1e-6 && residual <= 1e-8;
  return make(excess, "<=", 1e-6, pass, {{"max_twirl_gap_minus_dn", excess}, {"max_bicommutant_residual", residual}});
}

CriterionResult c8_tn(const NumericConfig&, int) {
  const gallery::TnReport r = gallery::tn_commutator_check(10, 200);
  const bool pass = r.slack < 0.02 && r.commutator_norm <= r.bound + r.slack;
  return make(r.commutator_norm, "<=", r.bound + r.slack, pass,
              {{"commutator_norm_N400", r.commutator_norm_doubled},
               {"slack", r.slack},
               {"boundary_commutator_norm", r.boundary_commutator_norm},
               {"op_norm", r.op_norm}});
}

CriterionResult c9_subdirect(const NumericConfig& cfg, int jobs) {
  const auto ok = parallel_map(21, jobs, [&](std::size_t i) {
    CMatrix a;
    if (i == 0) {
      a = diag({1.0, 2.0});
    } else {
      Rng rng = Rng(cfg.rng_seed, kSubdirect).split(i);
      a = gaussian_hermitian(3, rng);
    }
    const gallery::SubdirectReport r = gallery::subdirect_check(a, cfg);
    const int expected = 2 * r.cstar_dim;
    return r.formula_holds && r.strict && r.bicommutant_dim == expected ? 1 : 0;
  });
  int failures = 0;
  for (int v : ok) failures += 1 - v;
  return count_result(failures, static_cast<int>(ok.size()));
}

CriterionResult c10_oracle(const NumericConfig& cfg, int jobs) {
  struct Out {
    double below;  // oracle - d_n (must be <= 1e-9)
    double gap;    // (d_n - oracle) / d_n
  };
  const auto res = parallel_map(50, jobs, [&](std::size_t i) {
    Rng rng = Rng(cfg.rng_seed, kOracle).split(i);
    const int n = 2 + static_cast<int>(i % 2);
    const MatrixAlgebra a = random_small_star_algebra(n, rng, cfg);
    const CMatrix t = gaussian_matrix(n, rng);
    NumericConfig local = cfg;
    local.rng_seed = cfg.rng_seed + i;
    const double dn = d_n(t, a, full_algebra(n), local).report.value;
    const double oracle = d_n_sampling_oracle(t, a, full_algebra(n), 10000, local);
    return Out{oracle - dn, dn > 1e-12 ? (dn - oracle) / dn : 0.0};
  });
  double below = -1e300;
  double gap = 0.0;
  for (const auto& o : res) {
    below = std::max(below, o.below);
    gap = std::max(gap, o.gap);
  }
  const bool pass = below <= 1e-9 && gap <= 0.02;
  return make(gap, "<=", 0.02, pass, {{"max_oracle_minus_dn", below}, {"max_relative_gap", gap}});
}

CriterionResult c11_laws(const NumericConfig& cfg, int jobs) {
  struct Out {
    int subadd = 0;
    int homog = 0;
    int adjoint = 0;
    int chain = 0;
    int zero = 0;
  };
  const auto res = parallel_map(200, jobs, [&](std::size_t i) {
    Rng rng = Rng(cfg.rng_seed, kLaws).split(i);
    const int n = 2 + static_cast<int>(i % 3);
    const MatrixAlgebra a = random_small_star_algebra(n, rng, cfg);
    const MatrixAlgebra m = full_algebra(n);
    const MatrixAlgebra bic = double_commutant(a, m, cfg);
    // Every other instance lies in the double commutant, to exercise both sides
    // of the zero characterization.
    CMatrix t = gaussian_matrix(n, rng);
    if (i % 2 == 1) t = bic.space.project(t);
    const CMatrix s = gaussian_matrix(n, rng);
    const Complex c = rng.complex_normal();

    Out o;
    const DerivationReport dt = d_n(t, a, m, cfg);
    const DerivationReport ds = d_n(s, a, m, cfg);
    const DerivationReport dts = d_n(t + s, a, m, cfg);
    if (dts.report.lower > dt.report.upper + ds.report.upper + 1e-6 ||
        dts.report.value > dt.report.value + ds.report.value + 1e-6) {
      o.subadd = 1;
    }
    const double dct = d_n(c * t, a, m, cfg).report.value;
    if (std::abs(dct - std::abs(c) * dt.report.value) > 1e-6 * (1.0 + std::abs(c))) o.homog = 1;
    if (std::abs(d_n(CMatrix(t.adjoint()), a, m, cfg).report.value - dt.report.value) > 1e-6) o.adjoint = 1;
    const double dan = d_an(t, a, m, cfg).report.value;
    const double dist = dist_opnorm(t, a.space, cfg).value;
    if (dt.report.value > dan + 1e-12 || dan > 2.0 * dist + 1e-6) o.chain = 1;
    const bool dn_zero = dt.report.value < 1e-7;
    const bool in_bic = dist_opnorm(t, bic.space, cfg).value < 1e-6;
    if (dn_zero != in_bic) o.zero = 1;
    return o;
  });
  Out total;
  for (const auto& o : res) {
    total.subadd += o.subadd;
    total.homog += o.homog;
    total.adjoint += o.adjoint;
    total.chain += o.chain;
    total.zero += o.zero;
  }
  const int violations = total.subadd + total.homog + total.adjoint + total.chain + total.zero;
  return count_result(violations, 200,
                      {{"subadditivity", total.subadd},
                       {"homogeneity", total.homog},
                       {"adjoint_symmetry", total.adjoint},
                       {"chain_bound", total.chain},
                       {"zero_characterization", total.zero}});
}

const std::vector<Spec>& acceptance_specs() {
  static const std::vector<Spec> specs{
      {1, "self_commutancy_N1_N2", 1.0, c1_self_commutancy},
      {2, "counterexample_4x4", 1.0, c2_counterexample},
      {3, "turner_sweep", 30.0, c3_turner},
      {4, "little_dichotomy", 60.0, c4_little},
      {5, "scalar_center_constant", 60.0, c5_scalar_center},
      {6, "masa_metric_bound", 60.0, c6_masa},
      {7, "twirl_sandwich", 60.0, c7_twirl},
      {8, "tn_commutator_bound", 5.0, c8_tn},
      {9, "subdirect_analog", 10.0, c9_subdirect},
      {10, "oracle_agreement", 60.0, c10_oracle},
      {11, "seminorm_property_suite", 60.0, c11_laws},
  };
  return specs;
}

CriterionResult timed(const Spec& spec, const NumericConfig& cfg, int jobs) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r = spec.run(cfg, jobs);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.id = spec.id;
  r.name = spec.name;
  r.runtime_limit = spec.runtime_limit;
  return r;
}

SuiteReport run_specs(const std::vector<Spec>& specs, const std::string& name, const NumericConfig& cfg, int jobs,
                      const std::vector<int>& only) {
  cfg.validate();
  SuiteReport out;
  out.name = name;
  out.cfg = cfg;
  for (const auto& spec : specs) {
    if (!only.empty() && std::find(only.begin(), only.end(), spec.id) == only.end()) continue;
    out.criteria.push_back(timed(spec, cfg, jobs));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Invariants

template <class Fn>
CriterionResult count_instances(const NumericConfig& cfg, int jobs, int instances, std::uint64_t stream, Fn&& fn) {
  const auto bad = parallel_map(static_cast<std::size_t>(instances), jobs, [&](std::size_t i) {
    Rng rng = Rng(cfg.rng_seed, stream).split(i);
    return fn(rng, i) ? 0 : 1;
  });
  int failures = 0;
  for (int b : bad) failures += b;
  return count_result(failures, instances);
}

MatrixAlgebra random_generated_algebra(int n, Rng& rng, const NumericConfig& cfg) {
  std::vector<CMatrix> g;
  if (rng.uniform() < 0.5) {
    g.push_back(gaussian_matrix(n, rng));
  } else {
    g.push_back(matrix_unit(n, 0, 0));
    g.push_back(matrix_unit(n, 0, n - 1));
  }
  return generate_algebra(g, true, rng.uniform() < 0.3, cfg);
}

std::vector<Spec> invariant_specs() {
  std::vector<Spec> s;
  s.push_back({1, "commutant_antitonicity", 0.0, [](const NumericConfig& cfg, int jobs) {
                 return count_instances(cfg, jobs, 20, kInvariant + 1, [&](Rng& rng, std::size_t i) {
                   const int n = 2 + static_cast<int>(i % 4);
                   std::vector<CMatrix> small{gaussian_hermitian(n, rng)};
                   if (rng.uniform() < 0.5) small[0] = matrix_unit(n, 0, 0);
                   std::vector<CMatrix> large = small;
                   large.push_back(gaussian_matrix(n, rng));
                   const auto cs = relative_commutant(small, full_algebra(n), cfg);
                   const auto cl = relative_commutant(large, full_algebra(n), cfg);
                   return subspace_contains(cs.space, cl.space, cfg.eq_tol);
                 });
               }});
  s.push_back({2, "triple_commutant_stability", 0.0, [](const NumericConfig& cfg, int jobs) {
                 return count_instances(cfg, jobs, 20, kInvariant + 2, [&](Rng& rng, std::size_t i) {
                   const int n = 2 + static_cast<int>(i % 4);
                   const MatrixAlgebra a = random_generated_algebra(n, rng, cfg);
                   const MatrixAlgebra m = full_algebra(n);
                   const auto c1 = relative_commutant(a.basis(), m, cfg);
                   const auto c3 = relative_commutant(double_commutant(a, m, cfg).basis(), m, cfg);
                   return subspace_equal(c1.space, c3.space, cfg.eq_tol);
                 });
               }});
  s.push_back({3, "bicommutant_contains_algebra_and_center", 0.0, [](const NumericConfig& cfg, int jobs) {
                 return count_instances(cfg, jobs, 20, kInvariant + 3, [&](Rng& rng, std::size_t i) {
                   const int n = 2 + static_cast<int>(i % 3);
                   const int sizes[] = {n, n};
                   const MatrixAlgebra b = block_diagonal_algebra(sizes);
                   const std::vector<CMatrix> g{b.space.project(gaussian_matrix(2 * n, rng))};
                   const MatrixAlgebra a = generate_algebra(g, true, false, cfg);
                   const MatrixAlgebra dc = double_commutant(a, b, cfg);
                   return subspace_contains(dc.space, a.space, cfg.eq_tol) &&
                          subspace_contains(dc.space, center(b, cfg).space, cfg.eq_tol);
                 });
               }});
  s.push_back({4, "wedderburn_round_trip", 0.0, [](const NumericConfig& cfg, int jobs) {
                 return count_instances(cfg, jobs, 20, kInvariant + 4, [&](Rng& rng, std::size_t) {
                   const int n = 2 + static_cast<int>(rng.uniform() * 5.0) % 5;
                   const MatrixAlgebra a = random_block_algebra(n, rng, cfg);
                   const BlockStructure bs = wedderburn(a, cfg);
                   int total = 0;
                   for (const auto& b : bs.blocks) total += b.size * b.multiplicity;
                   return total == n && subspace_equal(rebuild_algebra(bs).space, a.space, cfg.eq_tol);
                 });
               }});
  s.push_back({5, "twirl_expectation_properties", 0.0, [](const NumericConfig& cfg, int jobs) {
                 return count_instances(cfg, jobs, 20, kInvariant + 5, [&](Rng& rng, std::size_t) {
                   const int n = 2 + static_cast<int>(rng.uniform() * 4.0) % 4;
                   const MatrixAlgebra a = random_block_algebra(n, rng, cfg);
                   const BlockStructure bs = wedderburn(a, cfg);
                   const CMatrix t = gaussian_matrix(n, rng);
                   const CMatrix e = twirl_expectation(t, bs);
                   const CMatrix x = gaussian_matrix(n, rng);
                   const auto basis = a.basis();
                   const CMatrix p = basis[static_cast<std::size_t>(rng.uniform() * basis.size()) % basis.size()];
                   bool ok = (twirl_expectation(e, bs) - e).norm() < 1e-8;
                   ok = ok && (twirl_expectation(identity(n), bs) - identity(n)).norm() < 1e-8;
                   ok = ok && min_hermitian_eigenvalue(twirl_expectation(CMatrix(x * x.adjoint()), bs)) >= -cfg.eq_tol;
                   ok = ok && (twirl_expectation(CMatrix(p * t), bs) - p * e).norm() < 1e-8;
                   ok = ok && (twirl_expectation(CMatrix(t * p), bs) - e * p).norm() < 1e-8;
                   ok = ok && (e - hs_conditional_expectation(t, a)).norm() < 1e-8;
                   return ok;
                 });
               }});
  s.push_back({6, "hs_expectation_properties", 0.0, [](const NumericConfig& cfg, int jobs) {
                 return count_instances(cfg, jobs, 20, kInvariant + 6, [&](Rng& rng, std::size_t) {
                   const int n = 2 + static_cast<int>(rng.uniform() * 4.0) % 4;
                   const MatrixAlgebra a = random_block_algebra(n, rng, cfg);
                   const CMatrix t = gaussian_matrix(n, rng);
                   const CMatrix e = hs_conditional_expectation(t, a);
                   bool ok = a.space.residual(e) < 1e-9;
                   ok = ok && (hs_conditional_expectation(e, a) - e).norm() < 1e-9;
                   ok = ok && std::abs(e.trace() - t.trace()) < 1e-9;
                   for (const auto& b : a.basis()) {
                     ok = ok && (hs_conditional_expectation(CMatrix(b * t), a) - b * e).norm() <=
                                    cfg.eq_tol * op_norm(b) * op_norm(t);
                   }
                   return ok;
                 });
               }});
  s.push_back({7, "twirl_sandwich", 0.0, [](const NumericConfig& cfg, int jobs) {
                 return count_instances(cfg, jobs, 20, kInvariant + 7, [&](Rng& rng, std::size_t) {
                   const int n = 2 + static_cast<int>(rng.uniform() * 4.0) % 4;
                   const MatrixAlgebra a = random_block_algebra(n, rng, cfg);
                   const CMatrix t = gaussian_matrix(n, rng);
                   return op_norm(t - twirl_expectation(t, a, cfg)) <=
                          d_n(t, a, full_algebra(n), cfg).report.value + 1e-6;
                 });
               }});
  s.push_back({8, "unitary_invariance", 0.0, [](const NumericConfig& cfg, int jobs) {
                 return count_instances(cfg, jobs, 10, kInvariant + 8, [&](Rng& rng, std::size_t) {
                   const int n = 2 + static_cast<int>(rng.uniform() * 3.0) % 3;
                   const MatrixAlgebra a = random_small_star_algebra(n, rng, cfg);
                   const CMatrix t = gaussian_matrix(n, rng);
                   const CMatrix u = haar_unitary(n, rng);
                   const MatrixAlgebra au = conjugate_algebra(a, u, cfg);
                   const CMatrix tu = u * t * u.adjoint();
                   const double dn = d_n(t, a, full_algebra(n), cfg).report.value;
                   const double dnu = d_n(tu, au, full_algebra(n), cfg).report.value;
                   const double dist = dist_opnorm(t, a.space, cfg).value;
                   const double distu = dist_opnorm(tu, au.space, cfg).value;
                   return std::abs(dn - dnu) <= 1e-8 * (1.0 + dn) && std::abs(dist - distu) <= 1e-8 * (1.0 + dist);
                 });
               }});
  s.push_back({9, "turner_sweep", 0.0, [](const NumericConfig& cfg, int jobs) {
                 return count_instances(cfg, jobs, 100, kInvariant + 9, [&](Rng& rng, std::size_t i) {
                   const int n = 2 + static_cast<int>(i % 5);
                   const std::vector<CMatrix> g{gaussian_matrix(n, rng)};
                   return is_normal(generate_algebra(g, true, false, cfg), full_algebra(n), cfg).normal;
                 });
               }});
  s.push_back({10, "masa_bound_sweep", 0.0, [](const NumericConfig& cfg, int jobs) {
                 return count_instances(cfg, jobs, 50, kInvariant + 10, [&](Rng& rng, std::size_t i) {
                   const int n = 2 + static_cast<int>(i % 5);
                   const CMatrix t = gaussian_matrix(n, rng);
                   return dist_opnorm(t, diagonal_algebra(n).space, cfg).value <=
                          d_n(t, diagonal_algebra(n), full_algebra(n), cfg).report.value + 1e-6;
                 });
               }});
  s.push_back({11, "scalar_center_ratio", 0.0, [](const NumericConfig& cfg, int jobs) {
                 return count_instances(cfg, jobs, 40, kInvariant + 11, [&](Rng& rng, std::size_t i) {
                   const int n = 2 + static_cast<int>(i % 4);
                   const CMatrix t = gaussian_matrix(n, rng);
                   const double dist = dist_opnorm(t, scalar_algebra(n).space, cfg).value;
                   const double dn = d_n(t, scalar_algebra(n), full_algebra(n), cfg).report.value;
                   return std::abs(dn - 2.0 * dist) <= 1e-5;
                 });
               }});
  s.push_back({12, "composition_inequality", 0.0, [](const NumericConfig& cfg, int) {
                 const CompositionCheck c = composition_inequality_check(scalar_algebra(3), diagonal_algebra(3),
                                                                         full_algebra(3), 1.0, 1.0, 50, cfg);
                 return count_result(c.violations, c.samples, {{"max_ratio", c.max_ratio}});
               }});
  s.push_back({13, "gallery_reproducible", 0.0, [](const NumericConfig& cfg, int) {
                 int failures = 0;
                 const char* names[] = {"counterexample_4x4", "subdirect_random_M3", "little_n3", "scalar_center_ratio"};
                 for (const char* name : names) {
                   const auto a = io::gallery_item_to_json(gallery::run_item(name, cfg), true);
                   const auto b = io::gallery_item_to_json(gallery::run_item(name, cfg), true);
                   if (io::dump(a) != io::dump(b)) ++failures;
                 }
                 return count_result(failures, 4);
               }});
  return s;
}

}  // namespace

bool SuiteReport::pass() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.pass; });
}

MatrixAlgebra random_block_algebra(int n, Rng& rng, const NumericConfig& cfg) {
  std::vector<std::pair<int, int>> blocks;
  int rest = n;
  while (rest > 0) {
    const int s = 1 + static_cast<int>(rng.uniform() * rest) % rest;
    const int max_m = rest / s;
    const int m = 1 + static_cast<int>(rng.uniform() * max_m) % max_m;
    blocks.emplace_back(s, m);
    rest -= s * m;
  }
  std::vector<CMatrix> g;
  int off = 0;
  for (const auto& [s, m] : blocks) {
    for (const auto& b : full_algebra(s).basis()) {
      CMatrix e = CMatrix::Zero(n, n);
      e.block(off, off, s * m, s * m) = kron(b, identity(m));
      g.push_back(std::move(e));
    }
    off += s * m;
  }
  const MatrixAlgebra raw = make_algebra(orthonormalize(g, cfg.rank_tol), cfg);
  return conjugate_algebra(raw, haar_unitary(n, rng), cfg);
}

SuiteReport run_acceptance(const NumericConfig& cfg, int jobs, const std::vector<int>& only) {
  SuiteReport out = run_specs(acceptance_specs(), "acceptance", cfg, jobs, only);
  const bool want_determinism = only.empty() || std::find(only.begin(), only.end(), 12) != only.end();
  if (!want_determinism) return out;

  // Re-run the same criteria under another worker count and compare bytes.
  std::vector<int> ids;
  for (const auto& c : out.criteria) ids.push_back(c.id);
  const auto start = std::chrono::steady_clock::now();
  bool identical = true;
  if (!ids.empty()) {
    const SuiteReport again = run_specs(acceptance_specs(), "acceptance", cfg, jobs == 1 ? 3 : 1, ids);
    identical = io::dump(suite_to_json(out)) == io::dump(suite_to_json(again));
  }
  CriterionResult r = make(identical ? 1.0 : 0.0, "==", 1.0, identical,
                           {{"criteria_compared", static_cast<double>(ids.size())}});
  r.id = 12;
  r.name = "determinism";
  r.runtime_limit = 0.0;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.criteria.push_back(std::move(r));
  return out;
}

SuiteReport run_invariants(const NumericConfig& cfg, int jobs) {
  return run_specs(invariant_specs(), "invariants", cfg, jobs, {});
}

io::Json suite_to_json(const SuiteReport& r) {
  io::Json out;
  out["suite"] = r.name;
  out["cfg"] = io::config_to_json(r.cfg);
  io::Json list = io::Json::array();
  for (const auto& c : r.criteria) {
    io::Json j;
    j["id"] = c.id;
    j["name"] = c.name;
    j["measured"] = std::isfinite(c.measured) ? io::Json(c.measured) : io::Json(nullptr);
    j["relation"] = c.relation;
    j["bound"] = c.bound;
    j["pass"] = c.pass;
    io::Json ev = io::Json::object();
    for (const auto& [k, v] : c.evidence) ev[k] = std::isfinite(v) ? io::Json(v) : io::Json(nullptr);
    j["evidence"] = std::move(ev);
    list.push_back(std::move(j));
  }
  out["criteria"] = std::move(list);
  out["pass"] = r.pass();
  return out;
}

}  // namespace opalg::suite
