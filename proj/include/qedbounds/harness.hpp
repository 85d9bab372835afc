#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qedbounds/bounds.hpp"

namespace qb {

inline constexpr const char* kToolVersion = QB_VERSION;

struct Tolerances {
  double quadrature = 1e-9;
  double eig = 1e-10;
  double fit = 0.03;
};

// Task-specific knobs with defaults; all optional in the JSON document.
struct TaskOptions {
  std::vector<int> caps{2, 3};         // oracle
  std::string coupling = "minimal";    // oracle: minimal | a2 | density
  int q = 2;                           // lt
  std::vector<double> r_fraction{0.125, 0.25};  // lt: R / L
  std::size_t samples = 10000;         // lt
  std::size_t burn_in = 1000;          // lt
  std::string input;                   // fit: CSV path
  std::string x_field = "lambda";      // fit
  std::string y_field = "value";       // fit
  std::map<std::string, std::string> filter;  // fit: column -> required text
  std::vector<int> criteria;           // accept: empty = all
};

struct SweepConfig {
  std::string task;
  std::vector<double> alpha;
  std::vector<double> lambda;
  std::vector<double> box_side;  // empty: continuum only
  std::vector<int> n{1};
  ConstantsSet constants = ConstantsSet::defaults();
  Tolerances tol;
  std::uint64_t seed = 1;
  std::string output;
  TaskOptions options;
};

const std::vector<std::string>& known_tasks();

// Parses and validates a JSON config. `task_override`, when non-empty, must
// agree with a task given in the document. Throws Configuration errors.
SweepConfig parse_config(const std::string& json_text, const std::string& task_override = {});

struct ResultRow {
  std::string task;
  std::string model;
  std::string statistics;
  std::string side;
  double alpha = 0.0;
  double lambda = 0.0;
  std::optional<double> box_side;
  int n = 1;
  double value = 0.0;
  std::string aux_name;
  double aux_value = 0.0;  // meaningful only when aux_name is set
  std::uint64_t seed = 0;
  std::string status = "ok";
  std::string tool_version = kToolVersion;

  bool operator==(const ResultRow& o) const;
};

inline constexpr const char* kCsvHeader =
    "task,model,statistics,side,alpha,lambda,box_side,n,value,aux_name,aux_value,seed,status,"
    "tool_version";

std::string format_double(double v);  // 17 significant digits
std::string csv_body(const std::vector<ResultRow>& rows);  // header + rows
std::string csv_document(const std::vector<ResultRow>& rows);  // timestamp comment + body
std::vector<ResultRow> parse_csv(const std::string& text);

// Per-row seed from the master seed and the grid index.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

struct RunOutcome {
  std::vector<ResultRow> rows;
  std::string report_json;  // accept task only
  int exit_code = 0;        // 0 ok, 1 numerical or capacity failure, 2 configuration
  std::string output_path;  // where the result was written, if anywhere
};

// Runs one configured task with `threads` workers. Rows come back in grid
// order regardless of the worker count.
RunOutcome run(const SweepConfig& config, int threads = 1);

// Resolves the output location: QEDBOUNDS_OUT_DIR prefixes relative paths.
std::string resolve_output_path(const std::string& path, const std::string& task);

struct PowerLawFit {
  double exponent = 0.0;
  double stderr_exponent = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
  int n_points = 0;
  int dropped = 0;  // rows filtered for nonpositive x or y
};

PowerLawFit fit_powerlaw(const std::vector<double>& x, const std::vector<double>& y);
PowerLawFit fit_powerlaw(const std::vector<ResultRow>& rows, const std::string& x_field,
                         const std::string& y_field,
                         const std::map<std::string, std::string>& filter = {});

struct CriterionResult {
  int id = 0;
  bool passed = false;
  std::string measured;
  std::string expected;
  std::string tolerance;
  double runtime_s = 0.0;
  double budget_s = 0.0;
};

struct AcceptanceOptions {
  ConstantsSet constants = ConstantsSet::defaults();
  std::uint64_t seed = 1;
  std::vector<int> criteria;  // empty = all twelve
};

CriterionResult run_criterion(int id, const AcceptanceOptions& opts);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts);
std::string acceptance_report_json(const std::vector<CriterionResult>& results,
                                   const AcceptanceOptions& opts);

}  // namespace qb
