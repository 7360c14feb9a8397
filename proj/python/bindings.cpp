// Python bindings. Matrices cross as complex128 numpy arrays; reports that have
// a JSON form are also available as JSON strings (the *_json functions).

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "opalg/algebra.hpp"
#include "opalg/blocks.hpp"
#include "opalg/errors.hpp"
#include "opalg/gallery.hpp"
#include "opalg/io.hpp"
#include "opalg/random.hpp"
#include "opalg/seminorms.hpp"
#include "opalg/suite.hpp"

namespace py = pybind11;
using namespace opalg;

namespace {

MatrixAlgebra algebra_from_basis(const std::vector<CMatrix>& basis, const NumericConfig& cfg) {
  if (basis.empty()) throw InvalidInput("algebra needs at least one basis element");
  return make_algebra(orthonormalize(basis, cfg.rank_tol), cfg);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "finite-dimensional operator algebra toolkit";

  static py::exception<InvalidInput> invalid(m, "InvalidInput", PyExc_ValueError);
  static py::exception<ResourceError> resource(m, "ResourceError", PyExc_MemoryError);
  static py::exception<StructuralError> structural(m, "StructuralError", PyExc_RuntimeError);

  py::class_<NumericConfig>(m, "NumericConfig")
      .def(py::init<>())
      .def_readwrite("rank_tol", &NumericConfig::rank_tol)
      .def_readwrite("eq_tol", &NumericConfig::eq_tol)
      .def_readwrite("opt_restarts", &NumericConfig::opt_restarts)
      .def_readwrite("opt_max_iters", &NumericConfig::opt_max_iters)
      .def_readwrite("opt_step", &NumericConfig::opt_step)
      .def_readwrite("rng_seed", &NumericConfig::rng_seed)
      .def_readwrite("dim_cap", &NumericConfig::dim_cap)
      .def("validate", &NumericConfig::validate)
      .def("to_json", [](const NumericConfig& c) { return io::dump(io::config_to_json(c)); });

  py::class_<MatrixAlgebra>(m, "MatrixAlgebra")
      .def(py::init(&algebra_from_basis), py::arg("basis"), py::arg("cfg") = NumericConfig{})
      .def_property_readonly("dim", &MatrixAlgebra::dim)
      .def_property_readonly("ambient_dim", &MatrixAlgebra::ambient_dim)
      .def_readonly("unital", &MatrixAlgebra::unital)
      .def_readonly("selfadjoint", &MatrixAlgebra::selfadjoint)
      .def("basis", &MatrixAlgebra::basis)
      .def("project", [](const MatrixAlgebra& a, const CMatrix& x) { return a.space.project(x); })
      .def("residual", [](const MatrixAlgebra& a, const CMatrix& x) { return a.space.residual(x); })
      .def("contains", [](const MatrixAlgebra& a, const MatrixAlgebra& b,
                          double tol) { return subspace_contains(a.space, b.space, tol); },
           py::arg("other"), py::arg("tol") = 1e-7)
      .def("equals", [](const MatrixAlgebra& a, const MatrixAlgebra& b,
                        double tol) { return subspace_equal(a.space, b.space, tol); },
           py::arg("other"), py::arg("tol") = 1e-7)
      .def("to_json", [](const MatrixAlgebra& a) { return io::dump(io::algebra_to_json(a)); })
      .def_static("from_json", [](const std::string& s, const NumericConfig& cfg) {
        return io::algebra_from_json(io::Json::parse(s), cfg);
      }, py::arg("text"), py::arg("cfg") = NumericConfig{})
      .def("__repr__", [](const MatrixAlgebra& a) {
        return "<MatrixAlgebra dim=" + std::to_string(a.dim()) + " in M_" + std::to_string(a.ambient_dim()) + ">";
      });

  m.def("full_algebra", &full_algebra);
  m.def("diagonal_algebra", &diagonal_algebra);
  m.def("scalar_algebra", &scalar_algebra);
  m.def("block_diagonal_algebra", [](const std::vector<int>& sizes) { return block_diagonal_algebra(sizes); });
  m.def("generate_algebra", [](const std::vector<CMatrix>& g, bool unital, bool star, const NumericConfig& cfg) {
    return generate_algebra(g, unital, star, cfg);
  }, py::arg("generators"), py::arg("unital") = true, py::arg("star") = false, py::arg("cfg") = NumericConfig{});
  m.def("relative_commutant", [](const std::vector<CMatrix>& s, const MatrixAlgebra& ambient,
                                 const NumericConfig& cfg) { return relative_commutant(s, ambient, cfg); },
        py::arg("s"), py::arg("ambient"), py::arg("cfg") = NumericConfig{});
  m.def("double_commutant", &double_commutant, py::arg("a"), py::arg("ambient"), py::arg("cfg") = NumericConfig{});
  m.def("center", &center, py::arg("b"), py::arg("cfg") = NumericConfig{});
  m.def("is_normal", [](const MatrixAlgebra& a, const MatrixAlgebra& ambient, const NumericConfig& cfg) {
    const NormalityResult r = is_normal(a, ambient, cfg);
    py::dict out;
    out["normal"] = r.normal;
    out["bicommutant"] = r.bicommutant;
    out["witness"] = r.witness ? py::cast(*r.witness) : py::none();
    out["witness_distance"] = r.witness_distance;
    return out;
  }, py::arg("a"), py::arg("ambient"), py::arg("cfg") = NumericConfig{});
  m.def("hs_conditional_expectation", &hs_conditional_expectation);

  py::class_<Block>(m, "Block").def_readonly("size", &Block::size).def_readonly("multiplicity", &Block::multiplicity);
  py::class_<BlockStructure>(m, "BlockStructure")
      .def_readonly("ambient_dim", &BlockStructure::ambient_dim)
      .def_readonly("unitary", &BlockStructure::unitary)
      .def_readonly("blocks", &BlockStructure::blocks)
      .def("to_json", [](const BlockStructure& b) { return io::dump(io::block_structure_to_json(b)); });
  m.def("wedderburn", &wedderburn, py::arg("a"), py::arg("cfg") = NumericConfig{});
  m.def("rebuild_algebra", &rebuild_algebra);
  m.def("twirl_expectation", [](const CMatrix& t, const MatrixAlgebra& a, const NumericConfig& cfg) {
    return twirl_expectation(t, a, cfg);
  }, py::arg("t"), py::arg("a"), py::arg("cfg") = NumericConfig{});

  py::class_<DistanceReport>(m, "DistanceReport")
      .def_readonly("value", &DistanceReport::value)
      .def_readonly("lower", &DistanceReport::lower)
      .def_readonly("upper", &DistanceReport::upper)
      .def_readonly("witness", &DistanceReport::witness)
      .def_readonly("iterations", &DistanceReport::iterations)
      .def_readonly("converged", &DistanceReport::converged)
      .def("to_json", [](const DistanceReport& r) { return io::dump(io::distance_report_to_json(r)); });
  py::class_<DerivationReport>(m, "DerivationReport")
      .def_readonly("report", &DerivationReport::report)
      .def_readonly("unitary_value", &DerivationReport::unitary_value)
      .def_readonly("contraction_value", &DerivationReport::contraction_value)
      .def_readonly("commutant_selfadjoint", &DerivationReport::commutant_selfadjoint)
      .def_property_readonly("value", [](const DerivationReport& r) { return r.report.value; })
      .def("to_json", [](const DerivationReport& r) { return io::dump(io::derivation_report_to_json(r)); });
  py::class_<KnEstimate>(m, "KnEstimate")
      .def_readonly("value", &KnEstimate::value)
      .def_readonly("infinite", &KnEstimate::infinite)
      .def_readonly("samples_used", &KnEstimate::samples_used)
      .def_readonly("samples_skipped", &KnEstimate::samples_skipped)
      .def_readonly("max_dist_excess", &KnEstimate::max_dist_excess)
      .def("to_json", [](const KnEstimate& k) { return io::dump(io::kn_estimate_to_json(k)); });

  m.def("dist_opnorm", [](const CMatrix& t, const MatrixAlgebra& a, const NumericConfig& cfg) {
    return dist_opnorm(t, a.space, cfg);
  }, py::arg("t"), py::arg("a"), py::arg("cfg") = NumericConfig{});
  m.def("d_n", &d_n, py::arg("t"), py::arg("a"), py::arg("ambient"), py::arg("cfg") = NumericConfig{});
  m.def("d_an", &d_an, py::arg("t"), py::arg("a"), py::arg("ambient"), py::arg("cfg") = NumericConfig{});
  m.def("d_n_sampling_oracle", &d_n_sampling_oracle, py::arg("t"), py::arg("a"), py::arg("ambient"),
        py::arg("num_samples"), py::arg("cfg") = NumericConfig{});
  m.def("kn_lower_estimate", &kn_lower_estimate, py::arg("a"), py::arg("ambient"), py::arg("num_samples"),
        py::arg("cfg") = NumericConfig{}, py::arg("jobs") = 1, py::call_guard<py::gil_scoped_release>());

  m.def("build_N", &gallery::build_N, py::arg("j"), py::arg("cfg") = NumericConfig{});
  m.def("build_counterexample_4x4", &gallery::build_counterexample_4x4, py::arg("cfg") = NumericConfig{});
  m.def("build_Tn", [](int n, int N) { return gallery::build_Tn(n, N); });
  m.def("gallery_manifest_json", [] { return io::dump(io::gallery_manifest()); });
  m.def("run_gallery_item_json", [](const std::string& name, const NumericConfig& cfg) {
    return io::dump(io::gallery_item_to_json(gallery::run_item(name, cfg), true));
  }, py::arg("name"), py::arg("cfg") = NumericConfig{});
  m.def("run_acceptance_json", [](const NumericConfig& cfg, int jobs, const std::vector<int>& only) {
    return io::dump(suite::suite_to_json(suite::run_acceptance(cfg, jobs, only)));
  }, py::arg("cfg") = NumericConfig{}, py::arg("jobs") = 1, py::arg("only") = std::vector<int>{},
     py::call_guard<py::gil_scoped_release>());
  m.def("run_invariants_json", [](const NumericConfig& cfg, int jobs) {
    return io::dump(suite::suite_to_json(suite::run_invariants(cfg, jobs)));
  }, py::arg("cfg") = NumericConfig{}, py::arg("jobs") = 1, py::call_guard<py::gil_scoped_release>());
}
