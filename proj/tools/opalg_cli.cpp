// opalg: command-line front end. Every command writes one JSON report that
// records the numeric config it ran with.
//
// Exit codes: 0 ok, 1 claim failed (--expect, gallery/suite failures),
// 2 bad input, 3 optimizer did not converge.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include "opalg/algebra.hpp"
#include "opalg/blocks.hpp"
#include "opalg/errors.hpp"
#include "opalg/gallery.hpp"
#include "opalg/io.hpp"
#include "opalg/seminorms.hpp"
#include "opalg/suite.hpp"

namespace {

using opalg::io::Json;

enum Exit { kOk = 0, kClaimFailed = 1, kBadInput = 2, kNoConvergence = 3 };

// full:n, diag:n and scalars:n, or a path to an algebra JSON file.
opalg::MatrixAlgebra load_algebra(const std::string& spec, const opalg::NumericConfig& cfg) {
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string kind = spec.substr(0, colon);
    if (kind == "full" || kind == "diag" || kind == "scalars") {
      int n = 0;
      try {
        std::size_t used = 0;
        n = std::stoi(spec.substr(colon + 1), &used);
        if (used != spec.size() - colon - 1) n = 0;
      } catch (const std::exception&) {
        n = 0;
      }
      if (n <= 0) throw opalg::InvalidInput("bad size in '" + spec + "'");
      if (n > cfg.dim_cap) throw opalg::ResourceError("'" + spec + "' exceeds dim_cap");
      if (kind == "full") return opalg::full_algebra(n);
      if (kind == "diag") return opalg::diagonal_algebra(n);
      return opalg::scalar_algebra(n);
    }
  }
  return opalg::io::algebra_from_json(opalg::io::read_json_file(spec), cfg);
}

opalg::CMatrix load_matrix(const std::string& path) {
  return opalg::io::matrix_from_json(opalg::io::read_json_file(path));
}

// A generator file is either a list of matrices or an algebra object.
std::vector<opalg::CMatrix> load_generators(const std::string& spec, const opalg::NumericConfig& cfg) {
  if (spec.find(':') != std::string::npos) return load_algebra(spec, cfg).basis();
  const Json j = opalg::io::read_json_file(spec);
  if (j.is_array()) return opalg::io::generators_from_json(j);
  return opalg::io::algebra_from_json(j, cfg).basis();
}

void require_same_dim(const opalg::MatrixAlgebra& a, const opalg::MatrixAlgebra& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw opalg::InvalidInput("algebra and ambient have different sizes");
}

struct Options {
  opalg::NumericConfig cfg;
  int samples = 200;
  int jobs = 1;
  std::string expect;
  std::string output = "-";
};

void write_report(const Json& report, const std::string& output) {
  const std::string text = opalg::io::dump(report);
  if (output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(output);
  if (!out) throw opalg::InvalidInput("cannot write '" + output + "'");
  out << text;
}

Json envelope(const std::string& command, const Options& o) {
  Json j;
  j["command"] = command;
  j["cfg"] = opalg::io::config_to_json(o.cfg);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"opalg: finite-dimensional operator algebra toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--tol", o.cfg.eq_tol, "equality tolerance")->capture_default_str();
  app.add_option("--rank-tol", o.cfg.rank_tol, "rank cut-off")->capture_default_str();
  app.add_option("--seed", o.cfg.rng_seed, "RNG seed")->capture_default_str();
  app.add_option("--restarts", o.cfg.opt_restarts, "optimizer restarts")->capture_default_str();
  app.add_option("--max-iters", o.cfg.opt_max_iters, "optimizer iterations per restart")->capture_default_str();
  app.add_option("--samples", o.samples, "samples for kn")->capture_default_str();
  app.add_option("--jobs", o.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--expect", o.expect, "expected outcome: normal | non-normal | pass");
  app.add_option("--output,-o", o.output, "report path, - for stdout")->capture_default_str();

  std::string generators_path, algebra_spec, ambient_spec = "", t_path, space_spec, kind = "hs", gallery_only;
  std::string suite_name;
  std::vector<int> suite_only;
  bool star = false, non_unital = false, manifest = false;

  auto* gen = app.add_subcommand("gen", "algebra generated by a set of matrices");
  gen->add_option("--generators,-g", generators_path, "JSON list of matrices")->required();
  gen->add_flag("--star", star, "also close under adjoint");
  gen->add_flag("--non-unital", non_unital, "do not adjoin the identity");

  auto* comm = app.add_subcommand("commutant", "relative commutant of a set in an ambient algebra");
  comm->add_option("--set,--algebra", generators_path, "matrices or algebra")->required();
  comm->add_option("--ambient", ambient_spec, "ambient algebra")->required();

  auto* bic = app.add_subcommand("bicommutant", "relative double commutant");
  bic->add_option("--algebra", algebra_spec)->required();
  bic->add_option("--ambient", ambient_spec)->required();

  auto* cen = app.add_subcommand("center", "center of an algebra");
  cen->add_option("--algebra", algebra_spec)->required();

  auto* nor = app.add_subcommand("normal", "is the algebra its own relative double commutant");
  nor->add_option("--algebra", algebra_spec)->required();
  nor->add_option("--ambient", ambient_spec)->required();

  auto* wed = app.add_subcommand("wedderburn", "block decomposition of a *-algebra");
  wed->add_option("--algebra", algebra_spec)->required();

  auto* exp = app.add_subcommand("expect", "conditional expectation onto a *-algebra");
  exp->add_option("--t", t_path)->required();
  exp->add_option("--algebra", algebra_spec)->required();
  exp->add_option("--kind", kind, "hs | twirl")->check(CLI::IsMember({"hs", "twirl"}))->capture_default_str();

  auto* dst = app.add_subcommand("dist", "operator-norm distance to a subspace");
  dst->add_option("--t", t_path)->required();
  dst->add_option("--space,--algebra", space_spec)->required();

  auto* dn = app.add_subcommand("dn", "derivation seminorm d_n(T, A, ambient)");
  dn->add_option("--t", t_path)->required();
  dn->add_option("--algebra", algebra_spec)->required();
  dn->add_option("--ambient", ambient_spec)->required();

  auto* kn = app.add_subcommand("kn", "empirical lower bound for the distance constant");
  kn->add_option("--algebra", algebra_spec)->required();
  kn->add_option("--ambient", ambient_spec)->required();

  auto* gal = app.add_subcommand("gallery", "run the example gallery");
  gal->add_option("--only", gallery_only, "single item name");
  gal->add_flag("--manifest", manifest, "list items without running them");

  auto* sui = app.add_subcommand("suite", "run a property suite");
  sui->add_option("name", suite_name)->required()->check(CLI::IsMember({"acceptance", "invariants"}));
  sui->add_option("--only", suite_only, "criterion ids")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    o.cfg.validate();
    if (!o.expect.empty() && o.expect != "normal" && o.expect != "non-normal" && o.expect != "pass") {
      throw opalg::InvalidInput("--expect must be normal, non-normal or pass");
    }
    if (o.samples <= 0) throw opalg::InvalidInput("--samples must be positive");
    const auto& cfg = o.cfg;
    const auto* sub = app.get_subcommands().front();
    Json report = envelope(sub->get_name(), o);
    int code = kOk;

    if (sub == gen) {
      const auto g = load_generators(generators_path, cfg);
      const auto a = opalg::generate_algebra(g, !non_unital, star, cfg);
      report["result"] = {{"dim", a.dim()}, {"algebra", opalg::io::algebra_to_json(a)}};
    } else if (sub == comm) {
      const auto amb = load_algebra(ambient_spec, cfg);
      const auto s = load_generators(generators_path, cfg);
      const auto c = opalg::relative_commutant(s, amb, cfg);
      report["result"] = {{"dim", c.dim()}, {"algebra", opalg::io::algebra_to_json(c)}};
    } else if (sub == bic) {
      const auto a = load_algebra(algebra_spec, cfg);
      const auto amb = load_algebra(ambient_spec, cfg);
      require_same_dim(a, amb);
      const auto b = opalg::double_commutant(a, amb, cfg);
      report["result"] = {{"dim", b.dim()}, {"algebra_dim", a.dim()}, {"algebra", opalg::io::algebra_to_json(b)}};
    } else if (sub == cen) {
      const auto a = load_algebra(algebra_spec, cfg);
      const auto z = opalg::center(a, cfg);
      report["result"] = {{"dim", z.dim()}, {"algebra", opalg::io::algebra_to_json(z)}};
    } else if (sub == nor) {
      const auto a = load_algebra(algebra_spec, cfg);
      const auto amb = load_algebra(ambient_spec, cfg);
      require_same_dim(a, amb);
      const auto r = opalg::is_normal(a, amb, cfg);
      report["result"] = {{"normal", r.normal},
                          {"algebra_dim", a.dim()},
                          {"bicommutant_dim", r.bicommutant.dim()},
                          {"witness", r.witness ? opalg::io::matrix_to_json(*r.witness) : Json(nullptr)},
                          {"witness_distance", r.witness_distance}};
      if ((o.expect == "normal" && !r.normal) || (o.expect == "non-normal" && r.normal)) code = kClaimFailed;
    } else if (sub == wed) {
      const auto a = load_algebra(algebra_spec, cfg);
      report["result"] = opalg::io::block_structure_to_json(opalg::wedderburn(a, cfg));
    } else if (sub == exp) {
      const auto t = load_matrix(t_path);
      const auto a = load_algebra(algebra_spec, cfg);
      if (t.rows() != a.ambient_dim()) throw opalg::InvalidInput("T and algebra have different sizes");
      const auto e = kind == "hs" ? opalg::hs_conditional_expectation(t, a) : opalg::twirl_expectation(t, a, cfg);
      report["result"] = {{"kind", kind}, {"expectation", opalg::io::matrix_to_json(e)}};
    } else if (sub == dst) {
      const auto t = load_matrix(t_path);
      const auto v = load_algebra(space_spec, cfg);
      if (t.rows() != v.ambient_dim()) throw opalg::InvalidInput("T and space have different sizes");
      const auto r = opalg::dist_opnorm(t, v.space, cfg);
      report["result"] = opalg::io::distance_report_to_json(r);
      if (!r.converged) code = kNoConvergence;
    } else if (sub == dn) {
      const auto t = load_matrix(t_path);
      const auto a = load_algebra(algebra_spec, cfg);
      const auto amb = load_algebra(ambient_spec, cfg);
      require_same_dim(a, amb);
      if (t.rows() != a.ambient_dim()) throw opalg::InvalidInput("T and algebra have different sizes");
      const auto r = opalg::d_n(t, a, amb, cfg);
      report["result"] = opalg::io::derivation_report_to_json(r);
      if (!r.report.converged) code = kNoConvergence;
    } else if (sub == kn) {
      const auto a = load_algebra(algebra_spec, cfg);
      const auto amb = load_algebra(ambient_spec, cfg);
      require_same_dim(a, amb);
      report["samples"] = o.samples;
      report["result"] = opalg::io::kn_estimate_to_json(opalg::kn_lower_estimate(a, amb, o.samples, cfg, o.jobs));
    } else if (sub == gal) {
      if (manifest) {
        report["result"] = opalg::io::gallery_manifest();
      } else {
        std::vector<opalg::gallery::GalleryItem> items;
        if (gallery_only.empty()) {
          items = opalg::gallery::run_gallery(cfg, o.jobs);
        } else {
          items.push_back(opalg::gallery::run_item(gallery_only, cfg));
        }
        Json list = Json::array();
        bool all = true;
        for (const auto& it : items) {
          list.push_back(opalg::io::gallery_item_to_json(it, true));
          all = all && it.pass;
        }
        report["result"] = {{"items", std::move(list)}, {"pass", all}};
        if (!all) code = kClaimFailed;
      }
    } else if (sub == sui) {
      const auto r = suite_name == "acceptance" ? opalg::suite::run_acceptance(cfg, o.jobs, suite_only)
                                                : opalg::suite::run_invariants(cfg, o.jobs);
      report["result"] = opalg::suite::suite_to_json(r);
      for (const auto& c : r.criteria) {
        std::cerr << (c.pass ? "PASS " : "FAIL ") << c.id << " " << c.name << " measured=" << c.measured << " "
                  << c.relation << " " << c.bound << "\n";
      }
      if (!r.pass()) code = kClaimFailed;
    }

    write_report(report, o.output);
    return code;
  } catch (const opalg::InvalidInput& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kBadInput;
  } catch (const opalg::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kBadInput;
  } catch (const opalg::StructuralError& e) {
    std::cerr << "structural error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
}
