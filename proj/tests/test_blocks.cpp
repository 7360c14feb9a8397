#include <doctest.h>

#include <vector>

#include "opalg/algebra.hpp"
#include "opalg/blocks.hpp"
#include "opalg/errors.hpp"
#include "opalg/random.hpp"

using namespace opalg;

namespace {

NumericConfig cfg;

MatrixAlgebra conjugate(const MatrixAlgebra& a, const CMatrix& u) {
  std::vector<CMatrix> g;
  for (const CMatrix& b : a.basis()) g.push_back(u * b * u.adjoint());
  return make_algebra(orthonormalize(g, cfg.rank_tol), cfg);
}

// M_s (x) I_m as an algebra in M_{s m}.
MatrixAlgebra ampliation(int s, int m) {
  std::vector<CMatrix> g;
  for (const CMatrix& b : full_algebra(s).basis()) g.push_back(kron(b, identity(m)));
  return make_algebra(orthonormalize(g, cfg.rank_tol), cfg);
}

void check_structure(const MatrixAlgebra& a, const BlockStructure& bs) {
  int total = 0;
  for (const Block& b : bs.blocks) total += b.size * b.multiplicity;
  CHECK(total == a.ambient_dim());
  CHECK(bs.algebra_dim() == a.dim());
  CHECK((bs.unitary.adjoint() * bs.unitary - identity(a.ambient_dim())).norm() < 1e-9);
  // Every basis element is (+)_k kron(x_k, I_m) in adapted coordinates.
  for (const CMatrix& x : a.basis()) {
    const CMatrix y = bs.unitary.adjoint() * x * bs.unitary;
    std::vector<CMatrix> parts = block_partial_traces(bs, y, true);
    CHECK((assemble_block_diagonal(bs, parts) - y).norm() < 1e-8);
  }
}

}  // namespace

TEST_CASE("minimal_central_projections examples") {
  const auto p_full = minimal_central_projections(full_algebra(3), cfg);
  REQUIRE(p_full.size() == 1);
  CHECK((p_full[0] - identity(3)).norm() < 1e-9);

  const int sizes[] = {2, 3};
  const auto p = minimal_central_projections(block_diagonal_algebra(sizes), cfg);
  REQUIRE(p.size() == 2);
  const CMatrix e1 = direct_sum(identity(2), CMatrix::Zero(3, 3));
  const CMatrix e2 = direct_sum(CMatrix::Zero(2, 2), identity(3));
  const bool order_a = (p[0] - e1).norm() < 1e-9 && (p[1] - e2).norm() < 1e-9;
  const bool order_b = (p[0] - e2).norm() < 1e-9 && (p[1] - e1).norm() < 1e-9;
  CHECK((order_a || order_b));

  Rng rng(3);
  const CMatrix u = haar_unitary(4, rng);
  const auto q = minimal_central_projections(conjugate(diagonal_algebra(4), u), cfg);
  REQUIRE(q.size() == 4);
  CMatrix sum = CMatrix::Zero(4, 4);
  for (std::size_t i = 0; i < q.size(); ++i) {
    sum += q[i];
    CHECK((q[i] * q[i] - q[i]).norm() < 1e-9);
    CHECK((q[i] - q[i].adjoint()).norm() < 1e-9);
    CHECK(std::abs(q[i].trace() - 1.0) < 1e-9);
    for (std::size_t j = 0; j < i; ++j) CHECK((q[i] * q[j]).norm() < 1e-9);
  }
  CHECK((sum - identity(4)).norm() < 1e-9);
}

TEST_CASE("minimal_central_projections rejects non-selfadjoint input") {
  const std::vector<CMatrix> g{matrix_unit(2, 0, 1)};
  CHECK_THROWS_AS(minimal_central_projections(generate_algebra(g, true, false, cfg), cfg), InvalidInput);
}

TEST_CASE("wedderburn examples") {
  const BlockStructure full = wedderburn(full_algebra(3), cfg);
  REQUIRE(full.blocks.size() == 1);
  CHECK(full.blocks[0].size == 3);
  CHECK(full.blocks[0].multiplicity == 1);

  const BlockStructure sc = wedderburn(scalar_algebra(4), cfg);
  REQUIRE(sc.blocks.size() == 1);
  CHECK(sc.blocks[0].size == 1);
  CHECK(sc.blocks[0].multiplicity == 4);

  Rng rng(7);
  const MatrixAlgebra a = conjugate(ampliation(2, 3), haar_unitary(6, rng));
  const BlockStructure bs = wedderburn(a, cfg);
  REQUIRE(bs.blocks.size() == 1);
  CHECK(bs.blocks[0].size == 2);
  CHECK(bs.blocks[0].multiplicity == 3);
  CHECK(bs.algebra_dim() == 4);
  check_structure(a, bs);
}

TEST_CASE("wedderburn on mixed block algebras") {
  Rng rng(11);
  // (M_2 (x) I_2) (+) M_1 (x) I_3 (+) M_3 inside M_10, scrambled.
  const MatrixAlgebra raw = [] {
    std::vector<CMatrix> g;
    const CMatrix z3 = CMatrix::Zero(3, 3);
    for (const CMatrix& b : full_algebra(2).basis()) g.push_back(direct_sum(direct_sum(kron(b, identity(2)), z3), z3));
    g.push_back(direct_sum(direct_sum(CMatrix::Zero(4, 4), identity(3)), z3));
    for (const CMatrix& b : full_algebra(3).basis()) g.push_back(direct_sum(CMatrix::Zero(7, 7), b));
    return make_algebra(orthonormalize(g, cfg.rank_tol), cfg);
  }();
  const MatrixAlgebra a = conjugate(raw, haar_unitary(10, rng));
  CHECK(a.dim() == 14);
  const BlockStructure bs = wedderburn(a, cfg);
  CHECK(bs.blocks.size() == 3);
  check_structure(a, bs);
  CHECK(subspace_equal(rebuild_algebra(bs).space, a.space, 1e-8));
}

TEST_CASE("wedderburn rejects bad input") {
  const std::vector<CMatrix> g{matrix_unit(2, 0, 1)};
  CHECK_THROWS_AS(wedderburn(generate_algebra(g, true, false, cfg), cfg), InvalidInput);
}

TEST_CASE("wedderburn round trip on random generated *-algebras") {
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 5;
    std::vector<CMatrix> g;
    CMatrix d = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) d(i, i) = static_cast<double>(i % 2);
    g.push_back(haar_unitary(n, rng) * d * haar_unitary(n, rng).adjoint());
    const MatrixAlgebra a = generate_algebra(g, true, true, cfg);
    const BlockStructure bs = wedderburn(a, cfg);
    check_structure(a, bs);
    CHECK(subspace_equal(rebuild_algebra(bs).space, a.space, 1e-8));
  }
}

TEST_CASE("twirl_expectation trivial cases") {
  Rng rng(17);
  const CMatrix t = gaussian_matrix(4, rng);
  CHECK((twirl_expectation(t, full_algebra(4), cfg) - t).norm() < 1e-9);
  CHECK((twirl_expectation(t, scalar_algebra(4), cfg) - t.trace() / 4.0 * identity(4)).norm() < 1e-9);
  const std::vector<CMatrix> g{matrix_unit(2, 0, 1)};
  CHECK_THROWS_AS(twirl_expectation(identity(2), generate_algebra(g, true, false, cfg), cfg), InvalidInput);
}

TEST_CASE("twirl_expectation on the diagonal masa matches a Monte Carlo Haar average") {
  Rng rng(19);
  const CMatrix t = gaussian_matrix(3, rng);
  const CMatrix exact = twirl_expectation(t, diagonal_algebra(3), cfg);
  CHECK((exact - CMatrix(t.diagonal().asDiagonal())).norm() < 1e-9);

  Rng phases(20);
  CMatrix avg = CMatrix::Zero(3, 3);
  const int samples = 10000;
  for (int k = 0; k < samples; ++k) {
    CVector d(3);
    for (int i = 0; i < 3; ++i) d(i) = std::polar(1.0, 2.0 * 3.14159265358979323846 * phases.uniform());
    const CMatrix w = d.asDiagonal();
    avg += w * t * w.adjoint();
  }
  avg /= static_cast<double>(samples);
  CHECK((avg - exact).norm() / t.norm() < 1e-2);
}

TEST_CASE("twirl_expectation agrees with the HS projection on *-algebras") {
  Rng rng(23);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 3 + trial % 3;
    const std::vector<CMatrix> g{gaussian_hermitian(n, rng) * (trial % 2 == 0 ? 1.0 : 0.0) +
                                 CMatrix(matrix_unit(n, 0, 0))};
    const MatrixAlgebra a = generate_algebra(g, true, true, cfg);
    const CMatrix t = gaussian_matrix(n, rng);
    CHECK((twirl_expectation(t, a, cfg) - hs_conditional_expectation(t, a)).norm() < 1e-8);
  }
}

TEST_CASE("twirl_expectation is idempotent, unital, positive and bimodular") {
  Rng rng(29);
  const MatrixAlgebra a = conjugate(ampliation(2, 2), haar_unitary(4, rng));
  const BlockStructure bs = wedderburn(a, cfg);
  const CMatrix t = gaussian_matrix(4, rng);
  const CMatrix e = twirl_expectation(t, bs);
  CHECK(a.space.residual(e) < 1e-8);
  CHECK((twirl_expectation(e, bs) - e).norm() < 1e-9);
  CHECK((twirl_expectation(identity(4), bs) - identity(4)).norm() < 1e-9);

  const CMatrix x = gaussian_matrix(4, rng);
  const CMatrix pos = x * x.adjoint();
  CHECK(min_hermitian_eigenvalue(twirl_expectation(pos, bs)) >= -cfg.eq_tol);

  for (const CMatrix& p : a.basis()) {
    for (const CMatrix& q : a.basis()) {
      CHECK((twirl_expectation(p * t * q, bs) - p * e * q).norm() < 1e-8);
    }
  }
}

TEST_CASE("haar_block_unitaries are unitaries of the algebra") {
  Rng rng(31);
  const MatrixAlgebra a = conjugate(ampliation(2, 3), haar_unitary(6, rng));
  const BlockStructure bs = wedderburn(a, cfg);
  Rng draw(32);
  const auto parts = haar_block_unitaries(bs, draw);
  REQUIRE(parts.size() == 1);
  CHECK(parts[0].rows() == 2);
  const CMatrix w = bs.unitary * assemble_block_diagonal(bs, parts) * bs.unitary.adjoint();
  CHECK((w.adjoint() * w - identity(6)).norm() < 1e-9);
  CHECK(a.space.residual(w) < 1e-8);
}
