#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qedbounds/qedbounds.h"

int main(int argc, char** argv) {
  CLI::App app{"Bounds and oracles for the self-energy of electrons coupled to a cutoff field"};
  std::string task, config, out;
  std::uint64_t seed = 0;
  int threads = 1;
  app.add_option("task", task, "bounds | a2 | oracle | rel | lt | fit | accept")->required();
  app.add_option("--config", config, "JSON configuration file")->required();
  auto* out_opt = app.add_option("--out", out, "output path (QEDBOUNDS_OUT_DIR prefixes relative paths)");
  auto* seed_opt = app.add_option("--seed", seed, "master seed");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.set_version_flag("--version", std::string(qb_version()));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  (void)out_opt;

  std::ifstream f(config, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot read config '" << config << "'\n";
    return 2;
  }
  std::stringstream ss;
  ss << f.rdbuf();

  qb_run_options opts{};
  opts.task = task.c_str();
  opts.out_path = out.c_str();
  opts.seed = seed;
  opts.has_seed = seed_opt->count() > 0;
  opts.threads = threads;
  qb_result* res = nullptr;
  const qb_status st = qb_run(ss.str().c_str(), &opts, &res);
  if (st != QB_OK) {
    std::cerr << "error (" << qb_status_name(st) << "): " << qb_last_error() << '\n';
    return st == QB_CONFIG || st == QB_INVALID_INPUT ? 2 : 1;
  }
  const int code = qb_result_exit_code(res);
  if (task == "accept" || task == "fit") std::cout << qb_result_text(res);
  std::cerr << "wrote " << qb_result_output_path(res);
  if (task != "accept" && task != "fit") std::cerr << " (" << qb_result_row_count(res) << " rows)";
  std::cerr << ", exit " << code << '\n';
  qb_result_destroy(res);
  return code;
}
