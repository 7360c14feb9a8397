#include <doctest.h>

#include "opalg/algebra.hpp"
#include "opalg/errors.hpp"
#include "opalg/gallery.hpp"
#include "opalg/io.hpp"
#include "opalg/random.hpp"

using namespace opalg;
using io::Json;

namespace {
NumericConfig cfg;
}

TEST_CASE("matrix JSON round trip") {
  Rng rng(1);
  const CMatrix m = gaussian_matrix(3, rng);
  const Json j = io::matrix_to_json(m);
  CHECK(j["dim"] == 3);
  CHECK(io::matrix_from_json(j) == m);
  // Through text as well.
  CHECK(io::matrix_from_json(Json::parse(io::dump(j))) == m);
}

TEST_CASE("matrix JSON rejects malformed input") {
  Json ragged = Json::parse(R"({"dim": 2, "entries": [[[1,0],[0,0]], [[0,0]]]})");
  CHECK_THROWS_AS(io::matrix_from_json(ragged), InvalidInput);
  Json not_pair = Json::parse(R"({"dim": 1, "entries": [[[1,0,0]]]})");
  CHECK_THROWS_AS(io::matrix_from_json(not_pair), InvalidInput);
  Json wrong_rows = Json::parse(R"({"dim": 2, "entries": [[[1,0],[0,0]]]})");
  CHECK_THROWS_AS(io::matrix_from_json(wrong_rows), InvalidInput);
  Json text = Json::parse(R"({"dim": 1, "entries": [[["a",0]]]})");
  CHECK_THROWS_AS(io::matrix_from_json(text), InvalidInput);
  CHECK_THROWS_AS(io::matrix_from_json(Json::parse(R"({"entries": []})")), InvalidInput);
  CHECK_THROWS_AS(io::matrix_from_json(Json::parse(R"({"dim": 0, "entries": []})")), InvalidInput);
}

TEST_CASE("algebra JSON round trip") {
  for (const MatrixAlgebra& a : {diagonal_algebra(3), gallery::build_N(1, cfg), full_algebra(2)}) {
    const Json j = io::algebra_to_json(a);
    const MatrixAlgebra b = io::algebra_from_json(Json::parse(io::dump(j)), cfg);
    CHECK(b.dim() == a.dim());
    CHECK(b.unital == a.unital);
    CHECK(b.selfadjoint == a.selfadjoint);
    CHECK(subspace_equal(a.space, b.space, 1e-12));
    // Orthonormal bases are kept verbatim, so serialization is stable.
    CHECK(io::dump(io::algebra_to_json(b)) == io::dump(j));
  }
}

TEST_CASE("algebra JSON accepts a non-orthonormal basis and checks flags") {
  Json j;
  j["ambient_dim"] = 2;
  j["unital"] = true;
  j["selfadjoint"] = true;
  j["basis"] = Json::array({io::matrix_to_json(identity(2)), io::matrix_to_json(diag({2.0, 0.0}))});
  const MatrixAlgebra a = io::algebra_from_json(j, cfg);
  CHECK(subspace_equal(a.space, diagonal_algebra(2).space, 1e-12));

  j["unital"] = false;
  CHECK_THROWS_AS(io::algebra_from_json(j, cfg), InvalidInput);
  j["unital"] = true;
  j["basis"] = Json::array({io::matrix_to_json(matrix_unit(2, 0, 1)), io::matrix_to_json(matrix_unit(2, 1, 0))});
  CHECK_THROWS_AS(io::algebra_from_json(j, cfg), InvalidInput);
}

TEST_CASE("block structure and reports round trip") {
  const BlockStructure bs = wedderburn(diagonal_algebra(2), cfg);
  const Json j = io::block_structure_to_json(bs);
  const BlockStructure back = io::block_structure_from_json(Json::parse(io::dump(j)));
  CHECK(io::dump(io::block_structure_to_json(back)) == io::dump(j));

  Json bad = j;
  bad["blocks"][0]["m"] = 3;
  CHECK_THROWS_AS(io::block_structure_from_json(bad), InvalidInput);

  DistanceReport r;
  r.value = 1.5;
  r.lower = 1.25;
  r.upper = 1.75;
  r.converged = true;
  r.witness = identity(2);
  r.iterations = 7;
  const Json rj = io::distance_report_to_json(r);
  CHECK(io::dump(io::distance_report_to_json(io::distance_report_from_json(rj))) == io::dump(rj));
}

TEST_CASE("config JSON") {
  NumericConfig c;
  c.rng_seed = 7;
  c.opt_restarts = 3;
  const NumericConfig back = io::config_from_json(io::config_to_json(c));
  CHECK(back.rng_seed == 7);
  CHECK(back.opt_restarts == 3);
  CHECK(back.eq_tol == c.eq_tol);
  CHECK_THROWS_AS(io::config_from_json(Json::parse(R"({"eq_tol": -1})")), InvalidInput);
  CHECK_THROWS_AS(io::config_from_json(Json::parse(R"({"rng_seed": -1})")), InvalidInput);
  CHECK_THROWS_AS(io::config_from_json(Json::parse("[]")), InvalidInput);
}

TEST_CASE("infinite kn is written as null") {
  KnEstimate k;
  k.value = std::numeric_limits<double>::infinity();
  k.infinite = true;
  const Json j = io::kn_estimate_to_json(k);
  CHECK(j["value"].is_null());
  CHECK(j["infinite"] == true);
}

TEST_CASE("gallery manifest lists every catalog item") {
  const Json m = io::gallery_manifest();
  CHECK(m["items"].size() == gallery::catalog().size());
  CHECK_FALSE(m["items"][0].contains("pass"));
}

TEST_CASE("read_json_file errors") {
  CHECK_THROWS_AS(io::read_json_file("/nonexistent/file.json"), InvalidInput);
}
