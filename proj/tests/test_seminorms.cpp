#include <doctest.h>

#include <cmath>
#include <vector>

#include "opalg/algebra.hpp"
#include "opalg/blocks.hpp"
#include "opalg/errors.hpp"
#include "opalg/random.hpp"
#include "opalg/seminorms.hpp"
#include "test_helpers.hpp"

using namespace opalg;
using opalg::testing::power_iteration_norm;

namespace {

constexpr double kPi = 3.14159265358979323846;

NumericConfig cfg;

// Zooming grid over the complex diagonal entries; the objective is convex, so
// shrinking the box around the best grid point tracks the minimum.
double diagonal_distance_grid(const CMatrix& t) {
  const int n = static_cast<int>(t.rows());
  const int dims = 2 * n;
  const double radius0 = 2.0 * power_iteration_norm(t);
  std::vector<double> centre(dims, 0.0);
  double radius = radius0;
  double best = power_iteration_norm(t);
  constexpr int pts = 5;
  std::vector<int> idx(dims);
  for (int level = 0; level < 45; ++level) {
    std::vector<double> best_point = centre;
    int total = 1;
    for (int k = 0; k < dims; ++k) total *= pts;
    for (int flat = 0; flat < total; ++flat) {
      int rest = flat;
      std::vector<double> p(dims);
      for (int k = 0; k < dims; ++k) {
        p[k] = centre[k] + radius * (2.0 * (rest % pts) / (pts - 1) - 1.0);
        rest /= pts;
      }
      CMatrix r = t;
      for (int i = 0; i < n; ++i) r(i, i) -= Complex(p[2 * i], p[2 * i + 1]);
      const double v = op_norm(r);
      if (v < best) {
        best = v;
        best_point = p;
      }
    }
    centre = best_point;
    radius *= 0.7;
  }
  return best;
}

// Exhaustive search over SU(2); global phases do not change ||UT - TU||.
double su2_grid_max_commutator(const CMatrix& t, int steps) {
  double best = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double theta = 0.5 * kPi * i / steps;
    for (int j = 0; j < steps; ++j) {
      const double alpha = 2.0 * kPi * j / steps;
      for (int k = 0; k < steps; ++k) {
        const double beta = 2.0 * kPi * k / steps;
        const Complex a = std::polar(std::cos(theta), alpha);
        const Complex b = std::polar(std::sin(theta), beta);
        CMatrix u(2, 2);
        u << a, b, -std::conj(b), std::conj(a);
        best = std::max(best, op_norm(u * t - t * u));
      }
    }
  }
  return best;
}

// For Hermitian T the distance to scalars is half the spectral spread.
double hermitian_scalar_distance(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  return 0.5 * (es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff());
}

MatrixAlgebra n1() {
  std::vector<CMatrix> g{identity(3), matrix_unit(3, 0, 1), matrix_unit(3, 0, 2)};
  return make_algebra(orthonormalize(g, cfg.rank_tol), cfg);
}

}  // namespace

TEST_CASE("dist_opnorm examples") {
  const DistanceReport r = dist_opnorm(diag({1.0, -1.0}), scalar_algebra(2).space, cfg);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.converged);
  REQUIRE(r.witness.has_value());
  CHECK(op_norm(*r.witness) < 1e-6);

  const CMatrix in_v = diag({2.0, -1.0, 0.5});
  const DistanceReport z = dist_opnorm(in_v, diagonal_algebra(3).space, cfg);
  CHECK(z.value < 1e-8);
  CHECK((*z.witness - in_v).norm() < 1e-8);

  CHECK_THROWS_AS(dist_opnorm(identity(2), scalar_algebra(3).space, cfg), InvalidInput);
}

TEST_CASE("dist_opnorm to the diagonal matches a grid search") {
  Rng rng(101);
  for (int trial = 0; trial < 3; ++trial) {
    const CMatrix t = gaussian_matrix(3, rng);
    const DistanceReport r = dist_opnorm(t, diagonal_algebra(3).space, cfg);
    CHECK(r.converged);
    CHECK(std::abs(r.value - diagonal_distance_grid(t)) < 1e-3);
  }
}

TEST_CASE("dist_opnorm to scalars for Hermitian matrices") {
  Rng rng(103);
  for (int n = 2; n <= 6; ++n) {
    const CMatrix h = gaussian_hermitian(n, rng);
    const DistanceReport r = dist_opnorm(h, scalar_algebra(n).space, cfg);
    CHECK(std::abs(r.value - hermitian_scalar_distance(h)) < 1e-6);
  }
}

TEST_CASE("dist_opnorm certificates bracket the value") {
  Rng rng(107);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 4;
    const CMatrix t = gaussian_matrix(n, rng);
    const int sizes[] = {1, n - 1};
    const DistanceReport r = dist_opnorm(t, block_diagonal_algebra(sizes).space, cfg);
    CHECK(r.lower <= r.value);
    CHECK(r.value <= r.upper);
    CHECK(r.converged);
    CHECK(r.upper - r.lower <= 1e-6 * std::max(1.0, op_norm(t)));
    CHECK(op_norm(t - *r.witness) == doctest::Approx(r.upper).epsilon(1e-12));
  }
}

TEST_CASE("d_n on scalars with diag(1, 0)") {
  const CMatrix t = diag({1.0, 0.0});
  const DerivationReport r = d_n(t, scalar_algebra(2), full_algebra(2), cfg);
  CHECK(r.report.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.commutant_selfadjoint);
  CHECK_FALSE(r.contraction_value.has_value());
  REQUIRE(r.report.witness.has_value());
  const CMatrix& u = *r.report.witness;
  CHECK((u.adjoint() * u - identity(2)).norm() < 1e-9);
  CHECK(op_norm(u * t - t * u) == doctest::Approx(1.0).epsilon(1e-9));
  // The flip attains the maximum.
  CMatrix flip(2, 2);
  flip << 0, 1, 1, 0;
  CHECK(op_norm(flip * t - t * flip) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(su2_grid_max_commutator(t, 40) <= r.report.value + 1e-9);
}

TEST_CASE("d_n matches exhaustive SU(2) search") {
  Rng rng(109);
  for (int trial = 0; trial < 3; ++trial) {
    const CMatrix t = gaussian_matrix(2, rng);
    const double dn = d_n(t, scalar_algebra(2), full_algebra(2), cfg).report.value;
    const double grid = su2_grid_max_commutator(t, 48);
    CHECK(grid <= dn + 1e-9);
    CHECK(dn - grid < 1e-2 * dn);
  }
}

TEST_CASE("d_n on scalars is twice the distance to scalars") {
  Rng rng(113);
  for (int n = 2; n <= 5; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      const CMatrix t = gaussian_matrix(n, rng);
      const double dist = dist_opnorm(t, scalar_algebra(n).space, cfg).value;
      const double dn = d_n(t, scalar_algebra(n), full_algebra(n), cfg).report.value;
      CHECK(std::abs(dn - 2.0 * dist) <= 1e-5 * (1.0 + op_norm(t)));
    }
  }
}

TEST_CASE("d_n vanishes on the double commutant") {
  Rng rng(127);
  const int sizes[] = {1, 2};
  const MatrixAlgebra a = block_diagonal_algebra(sizes);
  const CMatrix t = a.space.project(gaussian_matrix(3, rng));
  const DerivationReport r = d_n(t, a, full_algebra(3), cfg);
  CHECK(r.report.value < 1e-10);
  CHECK(r.report.upper < 1e-6);

  // Non-selfadjoint algebra: the commutant of N1 is N1 itself.
  const MatrixAlgebra n = n1();
  const CMatrix in_n = n.space.project(gaussian_matrix(3, rng));
  const DerivationReport rn = d_n(in_n, n, full_algebra(3), cfg);
  CHECK_FALSE(rn.commutant_selfadjoint);
  REQUIRE(rn.contraction_value.has_value());
  CHECK(rn.report.value < 1e-9);
}

TEST_CASE("d_n for non-selfadjoint algebras reports both routes") {
  Rng rng(131);
  const MatrixAlgebra n = n1();
  const CMatrix t = gaussian_matrix(3, rng);
  const DerivationReport r = d_n(t, n, full_algebra(3), cfg);
  REQUIRE(r.contraction_value.has_value());
  CHECK(*r.contraction_value > 1e-3);
  CHECK(r.report.value == doctest::Approx(std::max(r.unitary_value, *r.contraction_value)));
  CHECK(r.report.value <= r.report.upper + 1e-9);
  // Witness is a contraction in the commutant.
  REQUIRE(r.report.witness.has_value());
  const CMatrix& w = *r.report.witness;
  CHECK(op_norm(w) <= 1.0 + 1e-9);
  for (const CMatrix& b : n.basis()) CHECK(commutator(w, b).norm() < 1e-8);
  CHECK(op_norm(w * t - t * w) == doctest::Approx(r.report.value).epsilon(1e-9));
}

TEST_CASE("d_an is d_n with the alias flag") {
  Rng rng(137);
  const CMatrix t = gaussian_matrix(3, rng);
  const DerivationReport a = d_n(t, diagonal_algebra(3), full_algebra(3), cfg);
  const DerivationReport b = d_an(t, diagonal_algebra(3), full_algebra(3), cfg);
  CHECK(b.approximate_alias);
  CHECK_FALSE(a.approximate_alias);
  CHECK(a.report.value == b.report.value);
  const DerivationReport c = d_an(CMatrix(t.adjoint()), diagonal_algebra(3), full_algebra(3), cfg);
  CHECK(std::abs(c.report.value - b.report.value) < 1e-8);
}

TEST_CASE("d_n is deterministic for a fixed seed") {
  Rng rng(139);
  const CMatrix t = gaussian_matrix(4, rng);
  const DerivationReport a = d_n(t, scalar_algebra(4), full_algebra(4), cfg);
  const DerivationReport b = d_n(t, scalar_algebra(4), full_algebra(4), cfg);
  CHECK(a.report.value == b.report.value);
  CHECK(a.report.iterations == b.report.iterations);
  CHECK((*a.report.witness - *b.report.witness).norm() == 0.0);
}

TEST_CASE("d_n rejects incompatible input") {
  CHECK_THROWS_AS(d_n(identity(2), scalar_algebra(3), full_algebra(3), cfg), InvalidInput);
  CHECK_THROWS_AS(d_n(identity(3), full_algebra(3), diagonal_algebra(3), cfg), InvalidInput);
  CHECK_THROWS_AS(d_n(identity(3), scalar_algebra(3), n1(), cfg), InvalidInput);
}

TEST_CASE("sampling oracle examples") {
  Rng rng(149);
  const CMatrix t = gaussian_matrix(3, rng);
  CHECK(d_n_sampling_oracle(t, full_algebra(3), full_algebra(3), 100, cfg) < 1e-12);

  const CMatrix d = diag({1.0, 0.0});
  CHECK(d_n_sampling_oracle(d, scalar_algebra(2), full_algebra(2), 10000, cfg) >= 0.98);

  for (int trial = 0; trial < 5; ++trial) {
    const int n = 2 + trial % 2;
    const CMatrix x = gaussian_matrix(n, rng);
    const MatrixAlgebra a = trial % 2 == 0 ? scalar_algebra(n) : diagonal_algebra(n);
    const double oracle = d_n_sampling_oracle(x, a, full_algebra(n), 2000, cfg);
    CHECK(oracle <= d_n(x, a, full_algebra(n), cfg).report.value + 1e-9);
  }
}

TEST_CASE("kn_lower_estimate examples") {
  const KnEstimate full = kn_lower_estimate(full_algebra(3), full_algebra(3), 20, cfg);
  CHECK(full.value == 0.0);
  CHECK_FALSE(full.infinite);
  CHECK(full.samples_skipped == 20);

  const KnEstimate masa = kn_lower_estimate(diagonal_algebra(4), full_algebra(4), 200, cfg);
  CHECK_FALSE(masa.infinite);
  CHECK(masa.value > 0.0);
  CHECK(masa.value <= 1.0 + 1e-4);
  CHECK(masa.samples_used == 200);

  const KnEstimate sc = kn_lower_estimate(scalar_algebra(3), full_algebra(3), 200, cfg);
  CHECK(sc.value >= 0.49);
  CHECK(sc.value <= 0.51);

  const KnEstimate bad = kn_lower_estimate(scalar_algebra(2), diagonal_algebra(2), 10, cfg);
  CHECK(bad.infinite);
  CHECK(std::isinf(bad.value));
  REQUIRE(bad.non_normal_witness.has_value());
  CHECK(scalar_algebra(2).space.residual(*bad.non_normal_witness) > cfg.eq_tol);
}

TEST_CASE("composition inequality on scalars in diagonal in M_3") {
  const CompositionCheck c =
      composition_inequality_check(scalar_algebra(3), diagonal_algebra(3), full_algebra(3), 1.0, 1.0, 100, cfg);
  CHECK(c.bound_factor == 4.0);
  CHECK(c.samples == 100);
  CHECK(c.violations == 0);

  const CompositionCheck same =
      composition_inequality_check(diagonal_algebra(3), diagonal_algebra(3), full_algebra(3), 0.0, 1.0, 20, cfg);
  CHECK(same.bound_factor == 1.0);
  CHECK(same.violations == 0);

  CHECK_THROWS_AS(
      composition_inequality_check(diagonal_algebra(3), scalar_algebra(3), full_algebra(3), 1.0, 1.0, 1, cfg),
      InvalidInput);
}

TEST_CASE("seminorm laws on sampled triples") {
  Rng rng(151);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 2 + trial % 3;
    const MatrixAlgebra a = trial % 2 == 0 ? scalar_algebra(n) : diagonal_algebra(n);
    const MatrixAlgebra m = full_algebra(n);
    const CMatrix t = gaussian_matrix(n, rng);
    const CMatrix s = gaussian_matrix(n, rng);
    const Complex c = rng.complex_normal();
    const DerivationReport dt = d_n(t, a, m, cfg);
    const DerivationReport ds = d_n(s, a, m, cfg);
    const DerivationReport dts = d_n(t + s, a, m, cfg);
    CHECK(dts.report.lower <= dt.report.upper + ds.report.upper + 1e-6);
    CHECK(std::abs(d_n(c * t, a, m, cfg).report.value - std::abs(c) * dt.report.value) <=
          1e-6 * (1.0 + std::abs(c) * dt.report.value));
    CHECK(std::abs(d_n(CMatrix(t.adjoint()), a, m, cfg).report.value - dt.report.value) <= 1e-6);
    CHECK(dt.report.value <= 2.0 * dist_opnorm(t, a.space, cfg).value + 1e-6);
  }
}

TEST_CASE("twirl sandwich and unitary invariance") {
  Rng rng(157);
  for (int trial = 0; trial < 4; ++trial) {
    const int n = 3 + trial % 2;
    const int sizes[] = {1, n - 1};
    const MatrixAlgebra a = block_diagonal_algebra(sizes);
    const CMatrix t = gaussian_matrix(n, rng);
    const double dn = d_n(t, a, full_algebra(n), cfg).report.value;
    CHECK(op_norm(t - twirl_expectation(t, a, cfg)) <= dn + 1e-6);

    const CMatrix u = haar_unitary(n, rng);
    std::vector<CMatrix> conj;
    for (const CMatrix& b : a.basis()) conj.push_back(u * b * u.adjoint());
    const MatrixAlgebra au = make_algebra(orthonormalize(conj, cfg.rank_tol), cfg);
    const CMatrix tu = u * t * u.adjoint();
    CHECK(std::abs(d_n(tu, au, full_algebra(n), cfg).report.value - dn) < 1e-8);
    CHECK(std::abs(dist_opnorm(tu, au.space, cfg).value - dist_opnorm(t, a.space, cfg).value) < 1e-8);
  }
}

TEST_CASE("random_unit_element lies in the space with unit norm") {
  Rng rng(163);
  const OperatorSubspace v = diagonal_algebra(4).space;
  const CMatrix x = random_unit_element(v, rng);
  CHECK(x.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(v.residual(x) < 1e-12);
}
