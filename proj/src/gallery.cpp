#include "opalg/gallery.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "opalg/errors.hpp"
#include "opalg/parallel.hpp"
#include "opalg/random.hpp"
#include "opalg/seminorms.hpp"

namespace opalg::gallery {
namespace {

constexpr std::uint64_t kLittleStream = 0x1177;
constexpr std::uint64_t kInjectStream = 0x1178;
constexpr std::uint64_t kInjStream = 0x1e5a;
constexpr std::uint64_t kSubdirectStream = 0x5d1c;
constexpr std::uint64_t kTurnerStream = 0x7e2e;
constexpr std::uint64_t kRatioStream = 0x2a71;

using RealMatrix = Eigen::MatrixXd;
using Sparse = Eigen::SparseMatrix<double>;

MatrixAlgebra from_spanning_set(const std::vector<CMatrix>& span, const NumericConfig& cfg) {
  return make_algebra(orthonormalize(span, cfg.rank_tol), cfg);
}

MatrixAlgebra conjugate(const MatrixAlgebra& a, const CMatrix& v, const NumericConfig& cfg) {
  const CMatrix v_inv = v.inverse();
  std::vector<CMatrix> g;
  for (const auto& b : a.basis()) g.push_back(v * b * v_inv);
  return from_spanning_set(g, cfg);
}

// I + 0.3 G / ||G||: invertible with condition number below 2.
CMatrix well_conditioned(int n, Rng& rng) {
  const CMatrix g = gaussian_matrix(n, rng);
  return identity(n) + 0.3 * g / op_norm(g);
}

// Embeds each block's basis at its diagonal offset.
MatrixAlgebra direct_sum_algebra(const std::vector<MatrixAlgebra>& parts, const NumericConfig& cfg) {
  int n = 0;
  for (const auto& p : parts) n += p.ambient_dim();
  std::vector<CMatrix> g;
  int off = 0;
  for (const auto& p : parts) {
    for (const auto& b : p.basis()) {
      CMatrix e = CMatrix::Zero(n, n);
      e.block(off, off, b.rows(), b.cols()) = b;
      g.push_back(std::move(e));
    }
    off += p.ambient_dim();
  }
  return from_spanning_set(g, cfg);
}

// M_k(E) = span{E_ij (x) e}.
MatrixAlgebra matrix_amplification(const MatrixAlgebra& e, int k, const NumericConfig& cfg) {
  std::vector<CMatrix> g;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      for (const auto& b : e.basis()) g.push_back(kron(matrix_unit(k, i, j), b));
    }
  }
  return from_spanning_set(g, cfg);
}

// Jordan matrix with a random partition of n and eigenvalues drawn with repetition.
CMatrix random_jordan(int n, Rng& rng) {
  const int pool = std::max(1, (n + 1) / 2);
  std::vector<Complex> values(static_cast<std::size_t>(pool));
  for (auto& v : values) v = rng.complex_normal();
  CMatrix j = CMatrix::Zero(n, n);
  int i = 0;
  while (i < n) {
    const int len = 1 + static_cast<int>(rng.uniform() * (n - i));
    const Complex lambda = values[static_cast<std::size_t>(rng.uniform() * pool) % values.size()];
    for (int r = 0; r < len && i + r < n; ++r) {
      j(i + r, i + r) = lambda;
      if (r > 0) j(i + r - 1, i + r) = 1.0;
    }
    i += len;
  }
  return j;
}

double subspace_distance(const OperatorSubspace& v, const OperatorSubspace& w) {
  return std::max(subspace_excess(v, w), subspace_excess(w, v));
}

RealMatrix shift_power_dense(const Sparse& s) { return RealMatrix(s); }

// ||C|| for the top-left m x m block of a Hermitian C.
double hermitian_block_norm(const RealMatrix& c, int m) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(c.topLeftCorner(m, m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

RealMatrix build_tn_real(int n, int big_n, TnForm form) {
  if (n < 1) throw InvalidInput("build_Tn: n must be positive");
  if (big_n < 4 * n) throw InvalidInput("build_Tn: truncation dimension must be at least 4n");
  std::vector<Eigen::Triplet<double>> trips;
  for (int i = 0; i + 1 < big_n; ++i) trips.emplace_back(i + 1, i, 1.0);
  Sparse s(big_n, big_n);
  s.setFromTriplets(trips.begin(), trips.end());
  Sparse id(big_n, big_n);
  id.setIdentity();
  const Sparse st = s.transpose();
  const Sparse defect = id - Sparse(s * st);

  Sparse sk = id;  // S^k
  Sparse bracket(big_n, big_n);
  const int last = form == TnForm::kLiteral ? n : n - 1;
  for (int k = 1; k <= n; ++k) {
    sk = Sparse(sk * s);
    if (k <= last) {
      bracket += (static_cast<double>(k) / n) * Sparse(Sparse(sk * defect) * Sparse(sk.transpose()));
    }
  }
  bracket += Sparse(sk * Sparse(sk.transpose()));
  return shift_power_dense(Sparse(bracket * s));
}

double commutator_compressed(const RealMatrix& t) {
  const RealMatrix c = t * t.transpose() - t.transpose() * t;
  return hermitian_block_norm(c, static_cast<int>(t.rows()) - 1);
}

}  // namespace

MatrixAlgebra build_N(int j, const NumericConfig& cfg) {
  if (j != 1 && j != 2) throw InvalidInput("build_N: j must be 1 or 2");
  std::vector<CMatrix> g{identity(3)};
  if (j == 1) {
    g.push_back(matrix_unit(3, 0, 1));
  } else {
    g.push_back(matrix_unit(3, 1, 2));
  }
  g.push_back(matrix_unit(3, 0, 2));
  return from_spanning_set(g, cfg);
}

MatrixAlgebra build_counterexample_4x4(const NumericConfig& cfg) {
  std::vector<CMatrix> g{identity(4)};
  const CMatrix corners[] = {diag({1.0, -1.0}), matrix_unit(2, 0, 1), matrix_unit(2, 1, 0)};
  for (const auto& c : corners) {
    CMatrix m = CMatrix::Zero(4, 4);
    m.topRightCorner(2, 2) = c;
    g.push_back(std::move(m));
  }
  return from_spanning_set(g, cfg);
}

CMatrix build_Tn(int n, int N, TnForm form) { return build_tn_real(n, N, form).cast<Complex>(); }

TnReport tn_commutator_check(int n, int N, TnForm form) {
  TnReport out;
  out.n = n;
  out.N = N;
  out.bound = 2.0 / n;
  const RealMatrix t = build_tn_real(n, N, form);
  const RealMatrix t2 = build_tn_real(n, 2 * N, form);
  out.commutator_norm = commutator_compressed(t);
  out.commutator_norm_doubled = commutator_compressed(t2);
  out.slack = std::abs(out.commutator_norm - out.commutator_norm_doubled);
  const RealMatrix full = t * t.transpose() - t.transpose() * t;
  out.boundary_commutator_norm = hermitian_block_norm(full, N);
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(t.transpose() * t, Eigen::EigenvaluesOnly);
  out.op_norm = std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
  out.normal_distance_upper = out.op_norm;
  out.normal_distance_lower =
      std::sqrt(out.op_norm * out.op_norm + 0.5 * out.boundary_commutator_norm) - out.op_norm;
  return out;
}

SubdirectReport subdirect_check(const CMatrix& a, const NumericConfig& cfg) {
  require_square_finite(a, "subdirect_check");
  if ((a - a.adjoint()).norm() > cfg.eq_tol * std::max(1.0, a.norm())) {
    throw InvalidInput("subdirect_check: generator must be selfadjoint");
  }
  const int k = static_cast<int>(a.rows());
  const int sizes[] = {k, k};
  const MatrixAlgebra b = block_diagonal_algebra(sizes);
  const std::vector<CMatrix> gens{direct_sum(a, a)};
  const MatrixAlgebra alg = generate_algebra(gens, true, true, cfg);
  const MatrixAlgebra bic = double_commutant(alg, b, cfg);

  const std::vector<CMatrix> single{a};
  const MatrixAlgebra cstar = generate_algebra(single, true, true, cfg);
  std::vector<CMatrix> pair;
  const CMatrix zero = CMatrix::Zero(k, k);
  for (const auto& x : cstar.basis()) {
    pair.push_back(direct_sum(x, zero));
    pair.push_back(direct_sum(zero, x));
  }
  const OperatorSubspace expected = orthonormalize(pair, cfg.rank_tol);

  SubdirectReport out;
  out.k = k;
  out.algebra_dim = alg.dim();
  out.bicommutant_dim = bic.dim();
  out.cstar_dim = cstar.dim();
  out.formula_holds = subspace_equal(bic.space, expected, cfg.eq_tol);
  out.strict = alg.dim() < bic.dim() && subspace_contains(bic.space, alg.space, cfg.eq_tol);
  return out;
}

MatrixAlgebra random_commutative_algebra(int n, Rng& rng, const NumericConfig& cfg) {
  const int kind = static_cast<int>(rng.uniform() * 4.0) % 4;
  const CMatrix v = well_conditioned(n, rng);
  const CMatrix v_inv = v.inverse();
  switch (kind) {
    case 0: {
      const std::vector<CMatrix> g{gaussian_matrix(n, rng)};
      return generate_algebra(g, true, false, cfg);
    }
    case 1: {
      const std::vector<CMatrix> g{v * random_jordan(n, rng) * v_inv};
      return generate_algebra(g, true, false, cfg);
    }
    case 2: {
      // Two commuting generators: X and a random element of its commutant.
      const CMatrix x = v * random_jordan(n, rng) * v_inv;
      const std::vector<CMatrix> gx{x};
      const MatrixAlgebra c = relative_commutant(gx, full_algebra(n), cfg);
      CVector coeff(c.dim());
      for (int i = 0; i < c.dim(); ++i) coeff(i) = rng.complex_normal();
      const std::vector<CMatrix> g{x, c.space.combine(coeff)};
      return generate_algebra(g, true, false, cfg);
    }
    default: {
      if (n == 3) return conjugate(build_N(rng.uniform() < 0.5 ? 1 : 2, cfg), v, cfg);
      // Semisimple with repeated eigenvalues.
      CMatrix d = CMatrix::Zero(n, n);
      for (int i = 0; i < n; ++i) d(i, i) = static_cast<double>(static_cast<int>(rng.uniform() * 2.0));
      const std::vector<CMatrix> g{v * d * v_inv};
      return generate_algebra(g, true, false, cfg);
    }
  }
}

LittleScanReport little_scan(int n, int trials, const NumericConfig& cfg, int injected_conjugates) {
  if (n < 2 || n > 4) throw InvalidInput("little_scan: n must be 2, 3 or 4");
  LittleScanReport out;
  out.n = n;
  out.trials = trials;
  const Rng root(cfg.rng_seed, kLittleStream + static_cast<std::uint64_t>(n));
  for (int i = 0; i < trials; ++i) {
    Rng rng = root.split(static_cast<std::uint64_t>(i));
    const MatrixAlgebra a = random_commutative_algebra(n, rng, cfg);
    if (is_normal(a, full_algebra(n), cfg).normal) {
      ++out.normal;
    } else {
      ++out.non_normal;
    }
  }
  if (n == 4) {
    const MatrixAlgebra cex = build_counterexample_4x4(cfg);
    Rng rng(cfg.rng_seed, kInjectStream);
    for (int i = 0; i <= injected_conjugates; ++i) {
      const MatrixAlgebra a = i == 0 ? cex : conjugate(cex, haar_unitary(4, rng), cfg);
      ++out.injected;
      if (!is_normal(a, full_algebra(4), cfg).normal) ++out.injected_non_normal;
    }
    out.pass = out.injected > 0 && out.injected_non_normal == out.injected;
  } else {
    out.pass = out.non_normal == 0;
  }
  return out;
}

namespace {

MatrixAlgebra random_normal_block(int k, Rng& rng, const NumericConfig& cfg) {
  const int kind = static_cast<int>(rng.uniform() * 5.0) % 5;
  switch (kind) {
    case 0:
      return full_algebra(k);
    case 1:
      return scalar_algebra(k);
    case 2: {
      const CMatrix u = haar_unitary(k, rng);
      return conjugate(diagonal_algebra(k), u, cfg);
    }
    case 3: {
      const std::vector<CMatrix> g{gaussian_matrix(k, rng)};
      return generate_algebra(g, true, false, cfg);
    }
    default:
      return k <= 3 ? random_commutative_algebra(k, rng, cfg) : full_algebra(k);
  }
}

// A random unital *-algebra D in M_m (m <= 3) and a subalgebra E normal in D.
std::pair<MatrixAlgebra, MatrixAlgebra> random_normal_pair(Rng& rng, const NumericConfig& cfg) {
  static const std::vector<std::vector<int>> shapes{{1, 1}, {2}, {1, 2}, {2, 1}, {1, 1, 1}, {3}};
  const auto& sizes = shapes[static_cast<std::size_t>(rng.uniform() * shapes.size()) % shapes.size()];
  int m = 0;
  for (int s : sizes) m += s;
  const CMatrix u = haar_unitary(m, rng);
  const MatrixAlgebra d = conjugate(block_diagonal_algebra(sizes), u, cfg);
  const int kind = static_cast<int>(rng.uniform() * 4.0) % 4;
  switch (kind) {
    case 0:
      return {d, d};
    case 1:
      return {d, center(d, cfg)};
    case 2: {
      const MatrixAlgebra masa = conjugate(diagonal_algebra(m), u, cfg);
      return {d, masa};
    }
    default: {
      CVector coeff(d.dim());
      for (int i = 0; i < d.dim(); ++i) coeff(i) = rng.complex_normal();
      const CMatrix x = d.space.combine(coeff);
      const std::vector<CMatrix> g{CMatrix(0.5 * (x + x.adjoint()))};
      return {d, generate_algebra(g, true, true, cfg)};
    }
  }
}

}  // namespace

InjReport prop_inj_structure_checks(int instances, const NumericConfig& cfg) {
  InjReport out;
  auto direct_sum_case = [&](const std::vector<MatrixAlgebra>& parts) {
    ++out.direct_sum_instances;
    bool ok = true;
    std::vector<int> sizes;
    for (const auto& p : parts) {
      ok = ok && is_normal(p, full_algebra(p.ambient_dim()), cfg).normal;
      sizes.push_back(p.ambient_dim());
    }
    const MatrixAlgebra a = direct_sum_algebra(parts, cfg);
    const MatrixAlgebra compressed = block_diagonal_algebra(sizes);
    ok = ok && is_normal(a, compressed, cfg).normal;
    ok = ok && is_normal(a, full_algebra(a.ambient_dim()), cfg).normal;
    if (!ok) ++out.direct_sum_failures;
  };
  auto amplification_case = [&](const MatrixAlgebra& d, const MatrixAlgebra& e, int k) {
    ++out.matrix_amplification_instances;
    bool ok = is_normal(e, d, cfg).normal;
    ok = ok && is_normal(matrix_amplification(e, k, cfg), matrix_amplification(d, k, cfg), cfg).normal;
    if (!ok) ++out.matrix_amplification_failures;
  };

  direct_sum_case({diagonal_algebra(2), full_algebra(2)});
  direct_sum_case({scalar_algebra(2), full_algebra(2)});
  amplification_case(full_algebra(2), diagonal_algebra(2), 2);

  const Rng root(cfg.rng_seed, kInjStream);
  for (int i = 0; i < instances; ++i) {
    Rng rng = root.split(static_cast<std::uint64_t>(i));
    const int blocks = 2 + static_cast<int>(rng.uniform() * 2.0) % 2;
    std::vector<MatrixAlgebra> parts;
    int total = 0;
    for (int b = 0; b < blocks; ++b) {
      const int k = std::min(1 + static_cast<int>(rng.uniform() * 3.0) % 3, 6 - total - (blocks - b - 1));
      parts.push_back(random_normal_block(std::max(1, k), rng, cfg));
      total += std::max(1, k);
    }
    direct_sum_case(parts);
    const auto [d, e] = random_normal_pair(rng, cfg);
    amplification_case(d, e, 2);
  }
  out.pass = out.direct_sum_failures == 0 && out.matrix_amplification_failures == 0;
  return out;
}

namespace {

using Runner = std::function<void(GalleryItem&, const NumericConfig&)>;

struct Entry {
  GalleryItem item;
  Runner run;
};

void self_commutant_item(GalleryItem& it, const NumericConfig& cfg, int j) {
  const MatrixAlgebra n = build_N(j, cfg);
  const MatrixAlgebra c = relative_commutant(n.basis(), full_algebra(3), cfg);
  const double dist = subspace_distance(n.space, c.space);
  it.evidence = {{"dim", n.dim()}, {"commutant_dim", c.dim()}, {"subspace_distance", dist}};
  it.pass = n.dim() == 3 && c.dim() == 3 && dist < 1e-9;
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = [] {
    std::vector<Entry> t;
    t.push_back({{"N1_self_commutant", {1}, "N_1' = N_1 in M_3", "commutative subalgebras of M_3", false, {}},
                 [](GalleryItem& it, const NumericConfig& cfg) { self_commutant_item(it, cfg, 1); }});
    t.push_back({{"N2_self_commutant", {2}, "N_2' = N_2 in M_3", "commutative subalgebras of M_3", false, {}},
                 [](GalleryItem& it, const NumericConfig& cfg) { self_commutant_item(it, cfg, 2); }});
    t.push_back({{"N_normal", {1, 2}, "N_1 and N_2 are distinct normal subalgebras of M_3",
                  "commutative subalgebras of M_3", false, {}},
                 [](GalleryItem& it, const NumericConfig& cfg) {
                   const MatrixAlgebra n1 = build_N(1, cfg);
                   const MatrixAlgebra n2 = build_N(2, cfg);
                   const bool normal1 = is_normal(n1, full_algebra(3), cfg).normal;
                   const bool normal2 = is_normal(n2, full_algebra(3), cfg).normal;
                   const bool equal = subspace_equal(n1.space, n2.space, cfg.eq_tol);
                   it.evidence = {{"N1_normal", normal1}, {"N2_normal", normal2}, {"N1_equals_N2", equal}};
                   it.pass = normal1 && normal2 && !equal;
                 }});
    t.push_back({{"counterexample_4x4", {4},
                  "the trace-zero corner algebra is commutative, 4-dimensional and not normal in M_4; "
                  "its double commutant drops the trace condition",
                  "commutative non-normal subalgebra of M_4", false, {}},
                 [](GalleryItem& it, const NumericConfig& cfg) {
                   const MatrixAlgebra a = build_counterexample_4x4(cfg);
                   const NormalityResult r = is_normal(a, full_algebra(4), cfg);
                   it.evidence = {{"dim", a.dim()},
                                  {"bicommutant_dim", r.bicommutant.dim()},
                                  {"normal", r.normal},
                                  {"witness_distance", r.witness_distance}};
                   it.pass = a.dim() == 4 && r.bicommutant.dim() == 5 && !r.normal;
                 }});
    t.push_back({{"Tn_commutator", {10, 200}, "||T_n T_n* - T_n* T_n|| <= 2/n",
                  "weighted shift self-commutator bound", false, {}},
                 [](GalleryItem& it, const NumericConfig&) {
                   const TnReport r = tn_commutator_check(10, 200);
                   const TnReport lit = tn_commutator_check(10, 200, TnForm::kLiteral);
                   it.evidence = {{"commutator_norm", r.commutator_norm},
                                  {"commutator_norm_doubled", r.commutator_norm_doubled},
                                  {"slack", r.slack},
                                  {"bound", r.bound},
                                  {"boundary_commutator_norm", r.boundary_commutator_norm},
                                  {"literal_commutator_norm", lit.commutator_norm}};
                   it.pass = r.slack < 1e-3 && r.commutator_norm <= r.bound + r.slack;
                 }});
    t.push_back({{"T1_hand_check", {1, 8}, "T_1 = [S S* + S (1 - S S*) S*] S on C^8",
                  "weighted shift construction", false, {}},
                 [](GalleryItem& it, const NumericConfig&) {
                   CMatrix s = CMatrix::Zero(8, 8);
                   for (int i = 0; i < 7; ++i) s(i + 1, i) = 1.0;
                   const CMatrix ss = s * s.adjoint();
                   const CMatrix literal = (ss + s * (identity(8) - ss) * s.adjoint()) * s;
                   const double lit_err = (build_Tn(1, 8, TnForm::kLiteral) - literal).norm();
                   const double shift_err = (build_Tn(1, 8) - ss * s).norm();
                   it.evidence = {{"literal_error", lit_err}, {"weighted_shift_error", shift_err}};
                   it.pass = lit_err < 1e-14 && shift_err < 1e-14;
                 }});
    t.push_back({{"Tn_norm_bound", {10, 40}, "||T_n|| <= 2", "weighted shift construction", false, {}},
                 [](GalleryItem& it, const NumericConfig&) {
                   double worst_shift = 0.0;
                   double worst_literal = 0.0;
                   for (int n = 1; n <= 10; ++n) {
                     worst_shift = std::max(worst_shift, op_norm(build_Tn(n, 40)));
                     worst_literal = std::max(worst_literal, op_norm(build_Tn(n, 40, TnForm::kLiteral)));
                   }
                   it.evidence = {{"max_norm_weighted_shift", worst_shift}, {"max_norm_literal", worst_literal}};
                   it.pass = worst_shift <= 2.0 + 1e-12 && worst_literal <= 2.0 + 1e-12;
                 }});
    t.push_back({{"Tn_normal_distance_evidence", {10, 200},
                  "distance from T_n to the normal operators (evidence only, not certified)",
                  "weighted shift self-commutator bound", false, {}},
                 [](GalleryItem& it, const NumericConfig&) {
                   const TnReport r = tn_commutator_check(10, 200);
                   it.evidence = {{"upper_bound", r.normal_distance_upper},
                                  {"lower_bound", r.normal_distance_lower},
                                  {"certified", 0.0}};
                   it.pass = r.normal_distance_lower <= r.normal_distance_upper;
                 }});
    t.push_back({{"subdirect_diag12", {2}, "(A, M_2 + M_2)'' = C*(a) + C*(a), strictly larger than A",
                  "double commutants of subdirect products", false, {}},
                 [](GalleryItem& it, const NumericConfig& cfg) {
                   const SubdirectReport r = subdirect_check(diag({1.0, 2.0}), cfg);
                   it.evidence = {{"algebra_dim", r.algebra_dim},
                                  {"bicommutant_dim", r.bicommutant_dim},
                                  {"formula_holds", r.formula_holds},
                                  {"strict", r.strict}};
                   it.pass = r.formula_holds && r.strict && r.bicommutant_dim == 4 && r.algebra_dim == 2;
                 }});
    t.push_back({{"subdirect_identity", {2}, "(A, M_2 + M_2)'' = C*(I) + C*(I) for a = I",
                  "double commutants of subdirect products", false, {}},
                 [](GalleryItem& it, const NumericConfig& cfg) {
                   const SubdirectReport r = subdirect_check(identity(2), cfg);
                   it.evidence = {{"algebra_dim", r.algebra_dim},
                                  {"bicommutant_dim", r.bicommutant_dim},
                                  {"formula_holds", r.formula_holds},
                                  {"strict", r.strict}};
                   it.pass = r.formula_holds;
                 }});
    t.push_back({{"subdirect_random_M3", {3, 20},
                  "(A, M_3 + M_3)'' = C*(a) + C*(a) of dimension 6 for selfadjoint a with distinct eigenvalues",
                  "double commutants of subdirect products", false, {}},
                 [](GalleryItem& it, const NumericConfig& cfg) {
                   Rng rng(cfg.rng_seed, kSubdirectStream);
                   int ok = 0;
                   for (int i = 0; i < 20; ++i) {
                     const SubdirectReport r = subdirect_check(gaussian_hermitian(3, rng), cfg);
                     if (r.formula_holds && r.strict && r.bicommutant_dim == 6) ++ok;
                   }
                   it.evidence = {{"instances", 20}, {"passed", ok}};
                   it.pass = ok == 20;
                 }});
    for (int n : {2, 3}) {
      t.push_back({{"little_n" + std::to_string(n), {n, 200},
                    "every unital commutative subalgebra of M_" + std::to_string(n) + " is normal",
                    "commutative subalgebras of M_2 and M_3", false, {}},
                   [n](GalleryItem& it, const NumericConfig& cfg) {
                     const LittleScanReport r = little_scan(n, 200, cfg);
                     it.evidence = {{"trials", r.trials}, {"normal", r.normal}, {"non_normal", r.non_normal}};
                     it.pass = r.pass;
                   }});
    }
    t.push_back({{"little_n4", {4, 50, 20}, "M_4 has a unital commutative subalgebra that is not normal",
                  "commutative subalgebras of M_4", false, {}},
                 [](GalleryItem& it, const NumericConfig& cfg) {
                   const LittleScanReport r = little_scan(4, 50, cfg, 20);
                   it.evidence = {{"trials", r.trials},
                                  {"normal", r.normal},
                                  {"non_normal", r.non_normal},
                                  {"injected", r.injected},
                                  {"injected_non_normal", r.injected_non_normal}};
                   it.pass = r.pass;
                 }});
    t.push_back({{"prop_inj", {50},
                  "normality passes to direct sums over central projections and to M_k(E) in M_k(D)",
                  "permanence of normality", false, {}},
                 [](GalleryItem& it, const NumericConfig& cfg) {
                   const InjReport r = prop_inj_structure_checks(50, cfg);
                   it.evidence = {{"direct_sum_instances", r.direct_sum_instances},
                                  {"direct_sum_failures", r.direct_sum_failures},
                                  {"amplification_instances", r.matrix_amplification_instances},
                                  {"amplification_failures", r.matrix_amplification_failures}};
                   it.pass = r.pass;
                 }});
    t.push_back({{"turner_sweep", {2, 6, 40}, "the unital algebra of polynomials in T is normal",
                  "Turner's theorem", false, {}},
                 [](GalleryItem& it, const NumericConfig& cfg) {
                   int failures = 0;
                   int total = 0;
                   for (int n = 2; n <= 6; ++n) {
                     const Rng root(cfg.rng_seed, kTurnerStream + static_cast<std::uint64_t>(n));
                     for (int i = 0; i < 40; ++i) {
                       Rng rng = root.split(static_cast<std::uint64_t>(i));
                       const std::vector<CMatrix> g{gaussian_matrix(n, rng)};
                       ++total;
                       if (!is_normal(generate_algebra(g, true, false, cfg), full_algebra(n), cfg).normal) {
                         ++failures;
                       }
                     }
                   }
                   it.evidence = {{"instances", total}, {"failures", failures}};
                   it.pass = failures == 0;
                 }});
    t.push_back({{"scalar_center_ratio", {3, 20}, "d_n(T, CI, M_n) = 2 dist(T, CI), so K_n(CI, M_n) = 1/2",
                  "Stampfli's distance formula", false, {}},
                 [](GalleryItem& it, const NumericConfig& cfg) {
                   const Rng root(cfg.rng_seed, kRatioStream);
                   double worst = 0.0;
                   for (int i = 0; i < 20; ++i) {
                     Rng rng = root.split(static_cast<std::uint64_t>(i));
                     const CMatrix t = gaussian_matrix(3, rng);
                     const double dist = dist_opnorm(t, scalar_algebra(3).space, cfg).value;
                     const double dn = d_n(t, scalar_algebra(3), full_algebra(3), cfg).report.value;
                     worst = std::max(worst, std::abs(dn - 2.0 * dist) / (1.0 + op_norm(t)));
                   }
                   it.evidence = {{"max_relative_deviation", worst}};
                   it.pass = worst <= 1e-5;
                 }});
    t.push_back({{"masa_kn", {4, 50}, "K_n(D, M_n) <= 1 for the diagonal masa (empirical lower bound)",
                  "conditional expectations onto masas", false, {}},
                 [](GalleryItem& it, const NumericConfig& cfg) {
                   const KnEstimate k = kn_lower_estimate(diagonal_algebra(4), full_algebra(4), 50, cfg);
                   it.evidence = {{"kn_lower_estimate", k.value}, {"samples_used", k.samples_used}};
                   it.pass = !k.infinite && k.value > 0.0 && k.value <= 1.0 + 1e-4;
                 }});
    return t;
  }();
  return table;
}

}  // namespace

std::vector<GalleryItem> catalog() {
  std::vector<GalleryItem> out;
  for (const auto& e : entries()) out.push_back(e.item);
  return out;
}

GalleryItem run_item(const std::string& name, const NumericConfig& cfg) {
  for (const auto& e : entries()) {
    if (e.item.name == name) {
      GalleryItem it = e.item;
      e.run(it, cfg);
      return it;
    }
  }
  throw InvalidInput("gallery: unknown item '" + name + "'");
}

std::vector<GalleryItem> run_gallery(const NumericConfig& cfg, int jobs) {
  cfg.validate();
  const auto& table = entries();
  return parallel_map(table.size(), jobs, [&](std::size_t i) {
    GalleryItem it = table[i].item;
    table[i].run(it, cfg);
    return it;
  });
}

}  // namespace opalg::gallery
