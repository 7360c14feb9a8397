#include <doctest.h>

#include <set>

#include "opalg/algebra.hpp"
#include "opalg/errors.hpp"
#include "opalg/gallery.hpp"
#include "opalg/random.hpp"
#include "test_helpers.hpp"

using namespace opalg;
using namespace opalg::gallery;

namespace {

NumericConfig cfg;

CMatrix shift(int N) {
  CMatrix s = CMatrix::Zero(N, N);
  for (int k = 0; k + 1 < N; ++k) s(k + 1, k) = 1.0;
  return s;
}

CMatrix mpow(const CMatrix& x, int p) {
  CMatrix out = CMatrix::Identity(x.rows(), x.cols());
  for (int i = 0; i < p; ++i) out = out * x;
  return out;
}

// The bracket formula built densely, summing k = 1..kmax.
CMatrix dense_tn(int n, int N, int kmax) {
  const CMatrix s = shift(N);
  const CMatrix one = CMatrix::Identity(N, N);
  CMatrix bracket = mpow(s, n) * mpow(s.adjoint(), n);
  for (int k = 1; k <= kmax; ++k) {
    bracket += (static_cast<double>(k) / n) * mpow(s, k) * (one - s * s.adjoint()) * mpow(s.adjoint(), k);
  }
  return bracket * s;
}

}  // namespace

TEST_CASE("N1 and N2 are 3-dimensional, commutative and self-commutant") {
  for (int j : {1, 2}) {
    const MatrixAlgebra a = build_N(j, cfg);
    CHECK(a.dim() == 3);
    CHECK(a.unital);
    CHECK_FALSE(a.selfadjoint);
    for (const auto& x : a.basis()) {
      for (const auto& y : a.basis()) CHECK(commutator(x, y).norm() < 1e-12);
    }
    CHECK(subspace_equal(relative_commutant(a.basis(), full_algebra(3), cfg).space, a.space, 1e-9));
  }
  CHECK_THROWS_AS(build_N(3, cfg), InvalidInput);
}

TEST_CASE("4x4 counterexample") {
  const MatrixAlgebra a = build_counterexample_4x4(cfg);
  CHECK(a.dim() == 4);
  const NormalityResult r = is_normal(a, full_algebra(4), cfg);
  CHECK_FALSE(r.normal);
  CHECK(r.bicommutant.dim() == 5);
  // The extra element is the full corner [[0, I], [0, 0]], which has trace 2.
  CMatrix corner = CMatrix::Zero(4, 4);
  corner.block(0, 2, 2, 2) = identity(2);
  CHECK(r.bicommutant.space.residual(corner) < 1e-9);
  CHECK(a.space.residual(corner) > 0.1);
}

TEST_CASE("T_n matches a dense build of the bracket formula") {
  for (int n : {1, 2, 3, 5}) {
    const int N = 4 * n + 3;
    CHECK((build_Tn(n, N) - dense_tn(n, N, n - 1)).norm() < 1e-12);
    CHECK((build_Tn(n, N, TnForm::kLiteral) - dense_tn(n, N, n)).norm() < 1e-12);
  }
  CHECK_THROWS_AS(build_Tn(0, 10), InvalidInput);
  CHECK_THROWS_AS(build_Tn(3, 11), InvalidInput);
}

TEST_CASE("T_n commutator agrees with the closed form") {
  // Interior of [T, T*] is diag((2k - 1) / n^2) for k <= n and 0 beyond.
  for (int n : {2, 4, 10}) {
    const TnReport r = tn_commutator_check(n, 20 * n);
    const double expected = (2.0 * n - 1.0) / (static_cast<double>(n) * n);
    CHECK(r.commutator_norm == doctest::Approx(expected).epsilon(1e-10));
    CHECK(r.slack < 1e-10);
    CHECK(r.commutator_norm <= r.bound);
    CHECK(r.op_norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.boundary_commutator_norm == doctest::Approx(1.0).epsilon(1e-12));
  }
  // The literal form double counts k = n.
  const TnReport lit = tn_commutator_check(10, 200, TnForm::kLiteral);
  CHECK(lit.commutator_norm > 2.0 / 10);
}

TEST_CASE("subdirect analog") {
  const SubdirectReport r = subdirect_check(diag({1.0, 2.0}), cfg);
  CHECK(r.k == 2);
  CHECK(r.algebra_dim == 2);
  CHECK(r.cstar_dim == 2);
  CHECK(r.bicommutant_dim == 4);
  CHECK(r.formula_holds);
  CHECK(r.strict);

  Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const SubdirectReport h = subdirect_check(gaussian_hermitian(3, rng), cfg);
    CHECK(h.cstar_dim == 3);
    CHECK(h.bicommutant_dim == 6);
    CHECK(h.formula_holds);
    CHECK(h.strict);
  }
  CHECK_THROWS_AS(subdirect_check(matrix_unit(2, 0, 1), cfg), InvalidInput);
}

TEST_CASE("random commutative algebras are commutative and unital") {
  Rng rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 3;
    const MatrixAlgebra a = random_commutative_algebra(n, rng, cfg);
    CHECK(a.unital);
    const auto b = a.basis();
    for (const auto& x : b) {
      for (const auto& y : b) CHECK(commutator(x, y).norm() < 1e-8);
    }
  }
}

TEST_CASE("little scan") {
  const LittleScanReport r2 = little_scan(2, 30, cfg, 0);
  CHECK(r2.non_normal == 0);
  CHECK(r2.pass);
  const LittleScanReport r4 = little_scan(4, 0, cfg, 5);
  CHECK(r4.injected == 6);
  CHECK(r4.injected_non_normal == 6);
}

TEST_CASE("normality survives direct sums and matrix amplification") {
  const InjReport r = prop_inj_structure_checks(5, cfg);
  CHECK(r.direct_sum_failures == 0);
  CHECK(r.matrix_amplification_failures == 0);
  CHECK(r.pass);
}

TEST_CASE("catalog") {
  const auto items = catalog();
  std::set<std::string> names;
  for (const auto& it : items) {
    CHECK_FALSE(it.claim.empty());
    CHECK_FALSE(it.citation.empty());
    names.insert(it.name);
  }
  CHECK(names.size() == items.size());
  CHECK(names.count("counterexample_4x4") == 1);
  CHECK_THROWS_AS(run_item("no_such_item", cfg), InvalidInput);
  for (const char* name : {"N1_self_commutant", "counterexample_4x4", "Tn_commutator", "subdirect_diag12"}) {
    const GalleryItem it = run_item(name, cfg);
    CHECK(it.pass);
    CHECK_FALSE(it.evidence.empty());
  }
}
