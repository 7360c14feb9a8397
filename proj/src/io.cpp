#include "opalg/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "opalg/errors.hpp"

namespace opalg::io {
namespace {

const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidInput(std::string(what) + ": missing field '" + key + "'");
  }
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw InvalidInput(std::string(what) + ": expected a number");
  return j.get<double>();
}

int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw InvalidInput(std::string(what) + ": expected an integer");
  return j.get<int>();
}

bool boolean(const Json& j, const char* what) {
  if (!j.is_boolean()) throw InvalidInput(std::string(what) + ": expected a boolean");
  return j.get<bool>();
}

// Non-finite values have no JSON spelling; they are written as null.
Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Json matrix_to_json(const CMatrix& m) {
  require_square_finite(m, "matrix_to_json");
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
    rows.push_back(std::move(row));
  }
  Json out;
  out["dim"] = m.rows();
  out["entries"] = std::move(rows);
  return out;
}

CMatrix matrix_from_json(const Json& j) {
  const int n = integer(field(j, "dim", "matrix"), "matrix.dim");
  if (n <= 0) throw InvalidInput("matrix: dim must be positive");
  const Json& rows = field(j, "entries", "matrix");
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
    throw InvalidInput("matrix: entries must be a list of dim rows");
  }
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const Json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw InvalidInput("matrix: row " + std::to_string(i) + " does not have dim entries");
    }
    for (int k = 0; k < n; ++k) {
      const Json& z = row[static_cast<std::size_t>(k)];
      if (!z.is_array() || z.size() != 2) throw InvalidInput("matrix: entries must be [re, im] pairs");
      m(i, k) = Complex(number(z[0], "matrix entry"), number(z[1], "matrix entry"));
    }
  }
  return m;
}

Json algebra_to_json(const MatrixAlgebra& a) {
  Json out;
  out["ambient_dim"] = a.ambient_dim();
  out["unital"] = a.unital;
  out["selfadjoint"] = a.selfadjoint;
  Json basis = Json::array();
  for (const auto& b : a.basis()) basis.push_back(matrix_to_json(b));
  out["basis"] = std::move(basis);
  return out;
}

std::vector<CMatrix> generators_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidInput("generators: expected a list of matrices");
  std::vector<CMatrix> out;
  for (const auto& m : j) out.push_back(matrix_from_json(m));
  return out;
}

MatrixAlgebra algebra_from_json(const Json& j, const NumericConfig& cfg) {
  const int n = integer(field(j, "ambient_dim", "algebra"), "algebra.ambient_dim");
  if (n <= 0) throw InvalidInput("algebra: ambient_dim must be positive");
  const bool unital = boolean(field(j, "unital", "algebra"), "algebra.unital");
  const bool selfadjoint = boolean(field(j, "selfadjoint", "algebra"), "algebra.selfadjoint");
  const std::vector<CMatrix> basis = generators_from_json(field(j, "basis", "algebra"));
  for (const auto& b : basis) {
    if (b.rows() != n) throw InvalidInput("algebra: basis element does not match ambient_dim");
  }

  OperatorSubspace space;
  const CMatrix cols = basis.empty() ? CMatrix(n * n, 0) : stack_vectorized(basis);
  const CMatrix gram = cols.adjoint() * cols;
  if ((gram - CMatrix::Identity(gram.rows(), gram.cols())).norm() <= 1e-12) {
    space = OperatorSubspace(n, cols);
  } else {
    space = orthonormalize(basis, cfg.rank_tol, n);
  }
  MatrixAlgebra a = make_algebra(std::move(space), cfg);
  if (a.unital != unital || a.selfadjoint != selfadjoint) {
    throw InvalidInput("algebra: declared unital/selfadjoint flags do not match the basis");
  }
  return a;
}

Json block_structure_to_json(const BlockStructure& bs) {
  Json blocks = Json::array();
  for (const auto& b : bs.blocks) blocks.push_back(Json{{"s", b.size}, {"m", b.multiplicity}});
  Json out;
  out["blocks"] = std::move(blocks);
  out["unitary"] = matrix_to_json(bs.unitary);
  return out;
}

BlockStructure block_structure_from_json(const Json& j) {
  BlockStructure bs;
  bs.unitary = matrix_from_json(field(j, "unitary", "block structure"));
  bs.ambient_dim = static_cast<int>(bs.unitary.rows());
  const Json& blocks = field(j, "blocks", "block structure");
  if (!blocks.is_array() || blocks.empty()) throw InvalidInput("block structure: blocks must be a non-empty list");
  int total = 0;
  for (const auto& b : blocks) {
    const int s = integer(field(b, "s", "block"), "block.s");
    const int m = integer(field(b, "m", "block"), "block.m");
    if (s <= 0 || m <= 0) throw InvalidInput("block structure: s and m must be positive");
    bs.blocks.push_back(Block{s, m});
    total += s * m;
  }
  if (total != bs.ambient_dim) throw InvalidInput("block structure: sum of s*m does not match the unitary");
  return bs;
}

Json distance_report_to_json(const DistanceReport& r) {
  Json out;
  out["value"] = finite_or_null(r.value);
  out["lower"] = finite_or_null(r.lower);
  out["upper"] = finite_or_null(r.upper);
  out["converged"] = r.converged;
  out["witness"] = r.witness ? matrix_to_json(*r.witness) : Json(nullptr);
  out["iterations"] = r.iterations;
  return out;
}

DistanceReport distance_report_from_json(const Json& j) {
  DistanceReport r;
  r.value = number(field(j, "value", "distance report"), "value");
  r.lower = number(field(j, "lower", "distance report"), "lower");
  r.upper = number(field(j, "upper", "distance report"), "upper");
  r.converged = boolean(field(j, "converged", "distance report"), "converged");
  const Json& w = field(j, "witness", "distance report");
  if (!w.is_null()) r.witness = matrix_from_json(w);
  r.iterations = integer(field(j, "iterations", "distance report"), "iterations");
  return r;
}

Json derivation_report_to_json(const DerivationReport& r) {
  Json out = distance_report_to_json(r.report);
  out["unitary_value"] = r.unitary_value;
  out["contraction_value"] = r.contraction_value ? Json(*r.contraction_value) : Json(nullptr);
  out["commutant_selfadjoint"] = r.commutant_selfadjoint;
  out["approximate_alias"] = r.approximate_alias;
  return out;
}

Json kn_estimate_to_json(const KnEstimate& k) {
  Json out;
  out["value"] = finite_or_null(k.value);
  out["infinite"] = k.infinite;
  out["label"] = "empirical lower bound";
  out["samples_used"] = k.samples_used;
  out["samples_skipped"] = k.samples_skipped;
  out["non_normal_witness"] = k.non_normal_witness ? matrix_to_json(*k.non_normal_witness) : Json(nullptr);
  return out;
}

Json config_to_json(const NumericConfig& cfg) {
  Json out;
  out["rank_tol"] = cfg.rank_tol;
  out["eq_tol"] = cfg.eq_tol;
  out["opt_restarts"] = cfg.opt_restarts;
  out["opt_max_iters"] = cfg.opt_max_iters;
  out["opt_step"] = cfg.opt_step;
  out["rng_seed"] = cfg.rng_seed;
  out["dim_cap"] = cfg.dim_cap;
  return out;
}

NumericConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("config: expected an object");
  NumericConfig cfg;
  if (j.contains("rank_tol")) cfg.rank_tol = number(j.at("rank_tol"), "rank_tol");
  if (j.contains("eq_tol")) cfg.eq_tol = number(j.at("eq_tol"), "eq_tol");
  if (j.contains("opt_restarts")) cfg.opt_restarts = integer(j.at("opt_restarts"), "opt_restarts");
  if (j.contains("opt_max_iters")) cfg.opt_max_iters = integer(j.at("opt_max_iters"), "opt_max_iters");
  if (j.contains("opt_step")) cfg.opt_step = number(j.at("opt_step"), "opt_step");
  if (j.contains("rng_seed")) {
    if (!j.at("rng_seed").is_number_unsigned()) throw InvalidInput("rng_seed: expected a non-negative integer");
    cfg.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  }
  if (j.contains("dim_cap")) cfg.dim_cap = integer(j.at("dim_cap"), "dim_cap");
  cfg.validate();
  return cfg;
}

Json gallery_item_to_json(const gallery::GalleryItem& it, bool with_result) {
  Json out;
  out["name"] = it.name;
  out["params"] = it.params;
  out["claim"] = it.claim;
  out["citation"] = it.citation;
  if (with_result) {
    out["pass"] = it.pass;
    Json ev = Json::object();
    for (const auto& [k, v] : it.evidence) ev[k] = finite_or_null(v);
    out["evidence"] = std::move(ev);
  }
  return out;
}

Json gallery_manifest() {
  Json items = Json::array();
  for (const auto& it : gallery::catalog()) items.push_back(gallery_item_to_json(it, false));
  Json out;
  out["items"] = std::move(items);
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace opalg::io
