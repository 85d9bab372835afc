#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "qedbounds/harness.hpp"

using namespace qb;
namespace fs = std::filesystem;

namespace {

ErrorCode config_code(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Degenerate;  // marker: no error
}

fs::path scratch_dir(const std::string& name) {
  auto d = fs::temp_directory_path() / ("qedbounds_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = parse_config(
      R"({"task":"bounds","grid":{"alpha":[1,2],"lambda":[10],"n":[1,3]},"constants":{"c_lt":0.002},
          "tolerances":{"quadrature":1e-8},"seed":42})");
  CHECK(c.task == "bounds");
  CHECK(c.alpha.size() == 2);
  CHECK(c.n == std::vector<int>{1, 3});
  CHECK(c.constants.get("c_lt") == 0.002);
  CHECK(c.constants.entry("c_lt").provenance == Provenance::User);
  CHECK(c.tol.quadrature == 1e-8);
  CHECK(c.seed == 42);
  CHECK(config_code(R"({"task":"bounds","grid":{"alpha":[],"lambda":[1]}})") == ErrorCode::Configuration);
  CHECK(config_code(R"({"task":"bounds","grid":{"lambda":[1]}})") == ErrorCode::Configuration);
  CHECK(config_code(R"({"task":"bounds","grid":{"alpha":[1],"lambda":[1]},"colour":1})") ==
        ErrorCode::Configuration);
  CHECK(config_code(R"({"task":"bounds","grid":{"alpha":[1],"lambda":[1]},"constants":{"c_x":1}})") ==
        ErrorCode::Configuration);
  CHECK(config_code(R"({"task":"nope"})") == ErrorCode::Configuration);
  CHECK(config_code(R"({"grid":{}})") == ErrorCode::Configuration);
  CHECK(config_code(R"({"task":"rel","grid":{"alpha":[1],"lambda":[1]},"seed":-3})") ==
        ErrorCode::Configuration);
  CHECK(config_code("{not json") == ErrorCode::Configuration);
  CHECK(config_code(R"({"task":"fit"})") == ErrorCode::Configuration);
  CHECK_THROWS_AS(parse_config(R"({"task":"rel","grid":{"alpha":[1],"lambda":[1]}})", "bounds"), Error);
  CHECK(parse_config(R"({"grid":{"alpha":[1],"lambda":[1]}})", "rel").task == "rel");
}

TEST_CASE("CSV round trip") {
  ResultRow a;
  a.task = "bounds";
  a.model = "nonrel";
  a.statistics = "single";
  a.side = "lower";
  a.alpha = 1.0 / 3.0;
  a.lambda = 1e7;
  a.value = -1.0499736403202411;
  a.seed = 18446744073709551615ULL;
  ResultRow b = a;
  b.box_side = 2 * kPi;
  b.aux_name = "K_star";
  b.aux_value = 0.1 + 0.2;
  b.value = std::nan("");
  b.status = "numerical-failure";
  ResultRow c = a;
  c.value = std::numeric_limits<double>::infinity();
  const std::vector<ResultRow> rows{a, b, c};
  const auto doc = csv_document(rows);
  CHECK(doc.rfind("# ", 0) == 0);
  CHECK(doc.find(std::string("\n") + kCsvHeader + "\n") != std::string::npos);
  CHECK(parse_csv(doc) == rows);
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK_THROWS_AS(parse_csv("a,b\n"), Error);
}

TEST_CASE("bounds task rows") {
  const auto c = parse_config(R"({"task":"bounds","grid":{"alpha":[1],"lambda":[1]}})");
  const auto out = run(c);
  REQUIRE(!out.rows.empty());
  CHECK(out.rows[0].model == "nonrel");
  CHECK(out.rows[0].side == "lower");
  CHECK(out.rows[0].value == doctest::Approx(-1.04996).epsilon(1e-5));
  CHECK(out.exit_code == 0);
  CHECK(out.output_path.empty());
}

TEST_CASE("determinism across worker counts") {
  const auto c = parse_config(
      R"({"task":"lt","grid":{"box_side":[1,2],"n":[2,3]},"options":{"samples":300,"burn_in":50},"seed":9})");
  const auto a = csv_body(run(c, 1).rows);
  CHECK(a == csv_body(run(c, 4).rows));
  CHECK(a == csv_body(run(c, 2).rows));
  auto c2 = c;
  c2.seed = 10;
  CHECK(a != csv_body(run(c2, 1).rows));
  CHECK(derive_seed(9, 0) != derive_seed(9, 1));
}

TEST_CASE("power-law fit") {
  std::vector<double> x, y;
  for (int i = 0; i < 10; ++i) {
    x.push_back(std::pow(10.0, i / 4.5));
    y.push_back(7 * std::pow(x.back(), 1.5));
  }
  auto f = fit_powerlaw(x, y);
  CHECK(std::abs(f.exponent - 1.5) < 1e-12);
  CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.prefactor == doctest::Approx(7.0).epsilon(1e-10));

  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd(0.0, 0.01);
  x.clear();
  y.clear();
  for (int i = 0; i < 20; ++i) {
    x.push_back(std::pow(10.0, 2.0 * i / 19));
    y.push_back(3 * std::pow(x.back(), 12.0 / 7) * (1 + nd(rng)));
  }
  f = fit_powerlaw(x, y);
  CHECK(std::abs(f.exponent - 12.0 / 7) < 0.02);
  CHECK(f.n_points == 20);

  f = fit_powerlaw({1, 2, 3, 4, 5}, {1, -2, 3, 4, 5});
  CHECK(f.dropped == 1);
  CHECK(f.n_points == 4);
  try {
    fit_powerlaw({1, 2, 3}, {1, -2, -3});
    FAIL("expected insufficient data");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientData);
  }
}

TEST_CASE("fit task reads a CSV") {
  const auto dir = scratch_dir("fit");
  const auto rows = run(parse_config(R"({"task":"rel","grid":{"alpha":[0.5],"lambda":[10,20,40,80]}})")).rows;
  {
    std::ofstream f(dir / "rel.csv");
    f << csv_document(rows);
  }
  auto c = parse_config(R"({"task":"fit","options":{"input":")" + (dir / "rel.csv").string() +
                        R"(","x_field":"lambda","y_field":"value","filter":{"side":"upper"}}})");
  const auto out = run(c);
  const auto rep = nlohmann::json::parse(out.report_json);
  CHECK(rep["exponent"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep["n_points"].get<int>() == 4);
}

TEST_CASE("output location and failure exits") {
  const auto dir = scratch_dir("out");
  setenv("QEDBOUNDS_OUT_DIR", dir.c_str(), 1);
  auto c = parse_config(R"({"task":"rel","grid":{"alpha":[1],"lambda":[3]},"output":"sub/r.csv"})");
  const auto out = run(c);
  CHECK(fs::exists(dir / "sub" / "r.csv"));
  CHECK(parse_csv(slurp(dir / "sub" / "r.csv")) == out.rows);
  unsetenv("QEDBOUNDS_OUT_DIR");

  const auto cap = run(parse_config(
      R"({"task":"oracle","grid":{"alpha":[1],"lambda":[3],"box_side":[6.283185307179586]},"options":{"caps":[12]}})"));
  CHECK(cap.exit_code == 1);
  REQUIRE(cap.rows.size() == 1);
  CHECK(cap.rows[0].status == "capacity");

  const auto bad = run(parse_config(R"({"task":"rel","grid":{"alpha":[0,1],"lambda":[3]}})"));
  CHECK(bad.exit_code == 2);  // alpha = 0 has no admissible rel_lower grid
  CHECK(bad.rows.size() == 3);
}

TEST_CASE("acceptance report with a perturbed constant") {
  auto c = parse_config(R"({"task":"accept","constants":{"c_rel_upper":0.3},"options":{"criteria":[1,9]}})");
  const auto out = run(c);
  CHECK(out.exit_code == 1);
  const auto rep = nlohmann::json::parse(out.report_json);
  REQUIRE(rep.size() == 2);
  CHECK(rep[0]["criterion_id"] == 1);
  CHECK(rep[0]["status"] == "fail");
  CHECK(rep[1]["status"] == "pass");
  CHECK(rep[0]["tool_version"] == kToolVersion);
  CHECK(rep[0].contains("seed"));
}
