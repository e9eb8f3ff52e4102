// Run a small verification pass through the library API (no CLI) and print
// the machine-readable report for the theta-core suite.

#include <cstdio>
#include <iostream>

#include "ellfuse/ellfuse.hpp"

int main() {
  ellfuse::SuiteConfig cfg;
  cfg.points = 4;
  cfg.suites = {"theta-core", "vertex-unitarity"};

  const ellfuse::RunResult result = ellfuse::run_verification(cfg);
  std::cout << ellfuse::reports_to_json(result.reports, /*stable=*/true)
            << "\n";
  std::fprintf(stderr, "all pass: %s (evaluated %ld, excluded %ld)\n",
               result.all_pass() ? "yes" : "no", result.evaluated,
               result.excluded);
  return result.all_pass() ? 0 : 1;
}
