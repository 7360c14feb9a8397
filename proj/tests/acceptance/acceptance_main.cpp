// Acceptance runner: one line per criterion, exit 0 iff every criterion passes.
// Usage: opalg_acceptance [--seed S] [--jobs J] [--json PATH] [--only i,j,...]
//        [--allow-fail i,j,...]
// --allow-fail lists criteria known to be unattainable; they still print FAIL
// but do not change the exit code.

#include <CLI11.hpp>
#include <cstdio>
#include <algorithm>
#include <fstream>
#include <iostream>

#include "opalg/errors.hpp"
#include "opalg/io.hpp"
#include "opalg/suite.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  opalg::NumericConfig cfg;
  int jobs = 1;
  std::string json_path;
  std::vector<int> only;
  std::vector<int> allow_fail;
  app.add_option("--seed", cfg.rng_seed, "RNG seed");
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--json", json_path, "write the JSON report here");
  app.add_option("--only", only, "criterion ids")->delimiter(',');
  app.add_option("--allow-fail", allow_fail, "criteria allowed to fail")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  try {
    const auto report = opalg::suite::run_acceptance(cfg, jobs, only);
    double total = 0.0;
    int failed = 0;
    int blocking = 0;
    for (const auto& c : report.criteria) {
      const bool slow = c.runtime_limit > 0.0 && c.seconds > c.runtime_limit;
      const bool allowed = std::find(allow_fail.begin(), allow_fail.end(), c.id) != allow_fail.end();
      std::printf("[%s] %2d %-26s measured=%-12.6g %s %-10.6g  %.2fs%s%s\n", c.pass ? "PASS" : "FAIL", c.id,
                  c.name.c_str(), c.measured, c.relation.c_str(), c.bound, c.seconds,
                  slow ? " (over runtime target)" : "", !c.pass && allowed ? " (known failure)" : "");
      total += c.seconds;
      if (!c.pass) {
        ++failed;
        if (!allowed) ++blocking;
      }
    }
    std::printf("%s: %zu criteria, %d failed (%d not allowed), %.1fs total\n", failed == 0 ? "ALL PASS" : "FAILURES",
                report.criteria.size(), failed, blocking, total);
    if (!json_path.empty()) {
      std::ofstream(json_path) << opalg::io::dump(opalg::suite::suite_to_json(report));
    }
    return blocking == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
