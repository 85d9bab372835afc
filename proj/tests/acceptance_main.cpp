// Runs the acceptance criteria and prints one line per criterion.
#include <cstdio>
#include <vector>

#include "CLI11.hpp"
#include "qedbounds/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> ids;
  std::uint64_t seed = 1;
  app.add_option("--criterion", ids, "criterion ids (default: all)")->check(CLI::Range(1, 12));
  app.add_option("--seed", seed, "master seed");
  CLI11_PARSE(app, argc, argv);

  qb::AcceptanceOptions opts;
  opts.seed = seed;
  opts.criteria = ids;
  bool all = true;
  for (const auto& r : qb::run_acceptance(opts)) {
    std::printf("criterion %2d: %s  measured: %s | expected: %s | tolerance: %s | %.2f s\n", r.id,
                r.passed ? "PASS" : "FAIL", r.measured.c_str(), r.expected.c_str(),
                r.tolerance.c_str(), r.runtime_s);
    all = all && r.passed;
  }
  return all ? 0 : 1;
}
