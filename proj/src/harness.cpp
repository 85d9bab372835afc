#include "qedbounds/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qedbounds/fock.hpp"
#include "qedbounds/lt_checker.hpp"
#include "qedbounds/quad_solver.hpp"

namespace qb {

using nlohmann::json;

const std::vector<std::string>& known_tasks() {
  static const std::vector<std::string> t = {"bounds", "a2", "oracle", "rel", "lt", "fit", "accept"};
  return t;
}

namespace {

[[noreturn]] void config_error(const std::string& what) { fail(ErrorCode::Configuration, what); }

template <class T>
std::vector<T> read_list(const json& j, const char* key) {
  if (!j.is_array()) config_error(std::string("grid.") + key + " must be an array");
  std::vector<T> out;
  for (const auto& v : j) {
    if (!v.is_number()) config_error(std::string("grid.") + key + " must hold numbers");
    if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) config_error(std::string("grid.") + key + " must hold integers");
      out.push_back(v.get<T>());
    } else {
      out.push_back(v.get<double>());
    }
  }
  if (out.empty()) config_error(std::string("grid.") + key + " is empty");
  return out;
}

void check_keys(const json& j, const std::vector<std::string>& allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      config_error("unknown key '" + it.key() + "' in " + where);
}

}  // namespace

SweepConfig parse_config(const std::string& json_text, const std::string& task_override) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    config_error(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) config_error("config must be a JSON object");
  check_keys(doc, {"task", "grid", "constants", "tolerances", "seed", "output", "options"}, "config");

  SweepConfig c;
  if (doc.contains("task")) {
    if (!doc["task"].is_string()) config_error("task must be a string");
    c.task = doc["task"].get<std::string>();
  }
  if (!task_override.empty()) {
    if (!c.task.empty() && c.task != task_override)
      config_error("task '" + task_override + "' conflicts with config task '" + c.task + "'");
    c.task = task_override;
  }
  const auto& tasks = known_tasks();
  if (std::find(tasks.begin(), tasks.end(), c.task) == tasks.end())
    config_error("unknown or missing task '" + c.task + "'");

  if (doc.contains("grid")) {
    const auto& g = doc["grid"];
    if (!g.is_object()) config_error("grid must be an object");
    check_keys(g, {"alpha", "lambda", "box_side", "n"}, "grid");
    if (g.contains("alpha")) c.alpha = read_list<double>(g["alpha"], "alpha");
    if (g.contains("lambda")) c.lambda = read_list<double>(g["lambda"], "lambda");
    if (g.contains("box_side")) c.box_side = read_list<double>(g["box_side"], "box_side");
    if (g.contains("n")) c.n = read_list<int>(g["n"], "n");
  }
  auto require = [&](bool ok, const char* what) {
    if (!ok) config_error(std::string("task '") + c.task + "' needs grid." + what);
  };
  if (c.task == "bounds" || c.task == "rel" || c.task == "a2" || c.task == "oracle") {
    require(!c.alpha.empty(), "alpha");
    require(!c.lambda.empty(), "lambda");
  }
  if (c.task == "a2" || c.task == "oracle" || c.task == "lt") require(!c.box_side.empty(), "box_side");
  for (double a : c.alpha)
    if (!(a >= 0.0) || !finite(a)) config_error("grid.alpha entries must be >= 0");
  for (double l : c.lambda)
    if (!(l > 0.0) || !finite(l)) config_error("grid.lambda entries must be > 0");
  for (double b : c.box_side)
    if (!(b > 0.0) || !finite(b)) config_error("grid.box_side entries must be > 0");
  for (int n : c.n)
    if (n < 1) config_error("grid.n entries must be >= 1");

  if (doc.contains("constants")) {
    const auto& k = doc["constants"];
    if (!k.is_object()) config_error("constants must be an object");
    for (auto it = k.begin(); it != k.end(); ++it) {
      if (!it.value().is_number()) config_error("constant '" + it.key() + "' must be a number");
      c.constants.set(it.key(), it.value().get<double>(), Provenance::User, "config override");
    }
  }
  if (doc.contains("tolerances")) {
    const auto& t = doc["tolerances"];
    if (!t.is_object()) config_error("tolerances must be an object");
    check_keys(t, {"quadrature", "eig", "fit"}, "tolerances");
    auto get = [&](const char* key, double& dst) {
      if (!t.contains(key)) return;
      if (!t[key].is_number() || !(t[key].get<double>() > 0.0))
        config_error(std::string("tolerances.") + key + " must be a positive number");
      dst = t[key].get<double>();
    };
    get("quadrature", c.tol.quadrature);
    get("eig", c.tol.eig);
    get("fit", c.tol.fit);
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer())
      config_error("seed must be a nonnegative integer");
    if (doc["seed"].is_number_integer() && doc["seed"].get<long long>() < 0)
      config_error("seed must be a nonnegative integer");
    c.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("output")) {
    if (!doc["output"].is_string()) config_error("output must be a string");
    c.output = doc["output"].get<std::string>();
  }
  if (doc.contains("options")) {
    const auto& o = doc["options"];
    if (!o.is_object()) config_error("options must be an object");
    check_keys(o, {"caps", "coupling", "q", "r_fraction", "samples", "burn_in", "input", "x_field",
                   "y_field", "filter", "criteria"},
               "options");
    try {
      auto& t = c.options;
      if (o.contains("caps")) t.caps = o["caps"].get<std::vector<int>>();
      if (o.contains("coupling")) t.coupling = o["coupling"].get<std::string>();
      if (o.contains("q")) t.q = o["q"].get<int>();
      if (o.contains("r_fraction")) t.r_fraction = o["r_fraction"].get<std::vector<double>>();
      if (o.contains("samples")) t.samples = o["samples"].get<std::size_t>();
      if (o.contains("burn_in")) t.burn_in = o["burn_in"].get<std::size_t>();
      if (o.contains("input")) t.input = o["input"].get<std::string>();
      if (o.contains("x_field")) t.x_field = o["x_field"].get<std::string>();
      if (o.contains("y_field")) t.y_field = o["y_field"].get<std::string>();
      if (o.contains("filter")) t.filter = o["filter"].get<std::map<std::string, std::string>>();
      if (o.contains("criteria")) t.criteria = o["criteria"].get<std::vector<int>>();
    } catch (const json::exception& e) {
      config_error(std::string("bad option value: ") + e.what());
    }
    if (c.options.caps.empty()) config_error("options.caps is empty");
    if (c.options.r_fraction.empty()) config_error("options.r_fraction is empty");
    if (c.options.coupling != "minimal" && c.options.coupling != "a2" &&
        c.options.coupling != "density")
      config_error("options.coupling must be minimal, a2 or density");
  }
  if (c.task == "fit" && c.options.input.empty()) config_error("task 'fit' needs options.input");
  return c;
}

// ---------------------------------------------------------------- CSV

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {
bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }
}  // namespace

bool ResultRow::operator==(const ResultRow& o) const {
  const bool box = box_side.has_value() == o.box_side.has_value() &&
                   (!box_side || same(*box_side, *o.box_side));
  return task == o.task && model == o.model && statistics == o.statistics && side == o.side &&
         same(alpha, o.alpha) && same(lambda, o.lambda) && box && n == o.n &&
         same(value, o.value) && aux_name == o.aux_name &&
         (aux_name.empty() || same(aux_value, o.aux_value)) && seed == o.seed &&
         status == o.status && tool_version == o.tool_version;
}

std::string csv_body(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.task << ',' << r.model << ',' << r.statistics << ',' << r.side << ','
       << format_double(r.alpha) << ',' << format_double(r.lambda) << ','
       << (r.box_side ? format_double(*r.box_side) : "") << ',' << r.n << ','
       << format_double(r.value) << ',' << r.aux_name << ','
       << (r.aux_name.empty() ? "" : format_double(r.aux_value)) << ',' << r.seed << ','
       << r.status << ',' << r.tool_version << '\n';
  }
  return os.str();
}

std::string csv_document(const std::vector<ResultRow>& rows) {
  char ts[32];
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(ts, sizeof ts, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return std::string("# qedbounds ") + kToolVersion + " generated " + ts + "\n" + csv_body(rows);
}

std::vector<ResultRow> parse_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  bool header = false;
  std::vector<ResultRow> rows;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != kCsvHeader) fail(ErrorCode::InvalidInput, "unexpected CSV header");
      header = true;
      continue;
    }
    std::vector<std::string> f;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.push_back("");
    if (f.size() != 14) fail(ErrorCode::InvalidInput, "CSV row has " + std::to_string(f.size()) + " fields");
    auto num = [&](const std::string& s) {
      char* end = nullptr;
      const double v = std::strtod(s.c_str(), &end);
      if (s.empty() || *end) fail(ErrorCode::InvalidInput, "bad number '" + s + "' in CSV");
      return v;
    };
    ResultRow r;
    r.task = f[0];
    r.model = f[1];
    r.statistics = f[2];
    r.side = f[3];
    r.alpha = num(f[4]);
    r.lambda = num(f[5]);
    if (!f[6].empty()) r.box_side = num(f[6]);
    r.n = static_cast<int>(num(f[7]));
    r.value = num(f[8]);
    r.aux_name = f[9];
    if (!f[10].empty()) r.aux_value = num(f[10]);
    r.seed = std::strtoull(f[11].c_str(), nullptr, 10);
    r.status = f[12];
    r.tool_version = f[13];
    rows.push_back(std::move(r));
  }
  if (!header) fail(ErrorCode::InvalidInput, "CSV header missing");
  return rows;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finalizer over the combined word
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string resolve_output_path(const std::string& path, const std::string& task) {
  std::filesystem::path p = path.empty() ? std::filesystem::path(task == "accept" || task == "fit"
                                                                     ? task + ".json"
                                                                     : task + ".csv")
                                         : std::filesystem::path(path);
  if (const char* dir = std::getenv("QEDBOUNDS_OUT_DIR"); dir && *dir && p.is_relative())
    p = std::filesystem::path(dir) / p;
  return p.string();
}

// ---------------------------------------------------------------- fitting

PowerLawFit fit_powerlaw(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) fail(ErrorCode::InvalidInput, "x and y differ in length");
  std::vector<double> lx, ly;
  PowerLawFit out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0 && finite(x[i]) && finite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    } else {
      ++out.dropped;
    }
  }
  if (out.dropped > 0)
    std::cerr << "warning: fit dropped " << out.dropped << " nonpositive points\n";
  const std::size_t n = lx.size();
  if (n < 3) fail(ErrorCode::InsufficientData, "power-law fit needs at least 3 positive points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) fail(ErrorCode::InsufficientData, "all x values coincide");
  out.exponent = sxy / sxx;
  out.prefactor = std::exp(my - out.exponent * mx);
  double ssr = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = ly[i] - (my + out.exponent * (lx[i] - mx));
    ssr += e * e;
  }
  out.stderr_exponent = std::sqrt(ssr / double(n - 2) / sxx);
  out.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
  out.n_points = static_cast<int>(n);
  return out;
}

namespace {

double numeric_field(const ResultRow& r, const std::string& f) {
  if (f == "alpha") return r.alpha;
  if (f == "lambda") return r.lambda;
  if (f == "box_side") return r.box_side ? *r.box_side : std::nan("");
  if (f == "n") return r.n;
  if (f == "value") return r.value;
  if (f == "aux_value") return r.aux_value;
  fail(ErrorCode::Configuration, "field '" + f + "' is not numeric");
}

std::string text_field(const ResultRow& r, const std::string& f) {
  if (f == "task") return r.task;
  if (f == "model") return r.model;
  if (f == "statistics") return r.statistics;
  if (f == "side") return r.side;
  if (f == "aux_name") return r.aux_name;
  if (f == "status") return r.status;
  if (f == "tool_version") return r.tool_version;
  return format_double(numeric_field(r, f));
}

}  // namespace

PowerLawFit fit_powerlaw(const std::vector<ResultRow>& rows, const std::string& x_field,
                         const std::string& y_field,
                         const std::map<std::string, std::string>& filter) {
  std::vector<double> x, y;
  for (const auto& r : rows) {
    bool keep = true;
    for (const auto& [k, v] : filter) keep = keep && text_field(r, k) == v;
    if (!keep) continue;
    x.push_back(numeric_field(r, x_field));
    y.push_back(numeric_field(r, y_field));
  }
  return fit_powerlaw(x, y);
}

// ---------------------------------------------------------------- tasks

namespace {

using Job = std::function<std::vector<ResultRow>()>;

ResultRow from_record(const std::string& task, const BoundRecord& b, std::uint64_t seed) {
  ResultRow r;
  r.task = task;
  r.model = to_string(b.model);
  r.statistics = to_string(b.statistics);
  r.side = to_string(b.side);
  r.alpha = b.alpha;
  r.lambda = b.lambda_uv;
  r.box_side = b.box_side;
  r.n = b.n_particles;
  r.value = b.value;
  if (!b.aux_name.empty()) {
    r.aux_name = b.aux_name;
    r.aux_value = b.aux_value;
  }
  r.seed = seed;
  if (b.degenerate) r.status = "degenerate";
  return r;
}

ResultRow error_row(const std::string& task, double alpha, double lambda,
                    std::optional<double> box, int n, std::uint64_t seed, const Error& e) {
  ResultRow r;
  r.task = task;
  r.alpha = alpha;
  r.lambda = lambda;
  r.box_side = box;
  r.n = n;
  r.value = std::nan("");
  r.seed = seed;
  r.status = error_code_name(e.code());
  std::cerr << "error [" << task << " alpha=" << format_double(alpha)
            << " lambda=" << format_double(lambda) << "]: " << e.what() << '\n';
  return r;
}

// Wraps a job so module errors turn into one status row.
Job guarded(const std::string& task, double alpha, double lambda, std::optional<double> box, int n,
            std::uint64_t seed, std::function<std::vector<ResultRow>()> body) {
  return [=]() -> std::vector<ResultRow> {
    try {
      return body();
    } catch (const Error& e) {
      return {error_row(task, alpha, lambda, box, n, seed, e)};
    } catch (const std::bad_alloc&) {
      return {error_row(task, alpha, lambda, box, n, seed,
                        Error(ErrorCode::Capacity, "out of memory"))};
    }
  };
}

std::vector<Job> bounds_jobs(const SweepConfig& c) {
  std::vector<Job> jobs;
  const bool have_pauli = c.constants.has("c_pauli_upper") &&
                          c.constants.has("c_pauli_lower_small") &&
                          c.constants.has("c_pauli_lower_large");
  const bool have_relf = c.constants.has("c_rel_lower_small") && c.constants.has("c_rel_lower_large");
  for (double a : c.alpha)
    for (double l : c.lambda)
      for (int n : c.n) {
        const ConstantsSet k = c.constants;
        const std::uint64_t seed = c.seed;
        const std::vector<double> boxes = c.box_side;
        jobs.push_back(guarded("bounds", a, l, std::nullopt, n, seed, [=]() {
          std::vector<ResultRow> rows;
          const std::string t = "bounds";
          rows.push_back(from_record(t, commutator_lower_bound(a, l), seed));
          for (double L : boxes) {
            PhysParams p;
            p.alpha = a;
            p.lambda_uv = l;
            p.box_side = L;
            p.validate();
            ModeLattice lat(p);
            rows.push_back(from_record(t, commutator_lower_bound(a, l, &lat), seed));
          }
          for (auto st : {Statistics::Boson, Statistics::Fermion}) {
            auto pr = nonrel_theorem_bounds(n, a, l, k, st);
            rows.push_back(from_record(t, pr.lower, seed));
            rows.push_back(from_record(t, pr.upper, seed));
          }
          rows.push_back(from_record(t, rel_upper(a, l, k), seed));
          if (a > 0.0) {
            auto w = binding_window(a, l, k);
            ResultRow r;
            r.task = t;
            r.model = "nonrel";
            r.statistics = "boson";
            r.side = "upper";
            r.alpha = a;
            r.lambda = l;
            r.n = n;
            r.value = w.delta_E(double(n)).second;
            r.aux_name = "N_star";
            r.aux_value = double(w.N_star);
            r.seed = seed;
            rows.push_back(r);
          }
          if (have_relf)
            for (const auto& b : rel_fermion_bounds(n, a, l, k)) rows.push_back(from_record(t, b, seed));
          if (have_pauli)
            for (const auto& b : pauli_bounds(a, l, n, k)) rows.push_back(from_record(t, b, seed));
          return rows;
        }));
      }
  return jobs;
}

std::vector<Job> a2_jobs(const SweepConfig& c) {
  std::vector<Job> jobs;
  for (double a : c.alpha)
    for (double l : c.lambda)
      for (double L : c.box_side) {
        const std::uint64_t seed = c.seed;
        jobs.push_back(guarded("a2", a, l, L, 1, seed, [=]() {
          PhysParams p;
          p.alpha = a;
          p.lambda_uv = l;
          p.box_side = L;
          p.validate();
          ModeLattice lat(p);
          auto opt = optimize_K(lat, a);
          ResultRow up;
          up.task = "a2";
          up.model = "a2";
          up.statistics = "single";
          up.side = "upper";
          up.alpha = a;
          up.lambda = l;
          up.box_side = L;
          up.value = opt.energy.total;
          up.aux_name = "K_star";
          up.aux_value = opt.K_star;
          up.seed = seed;
          auto lo = from_record("a2", a2_lower_bound(a, l), seed);
          return std::vector<ResultRow>{up, lo};
        }));
      }
  return jobs;
}

std::vector<Job> oracle_jobs(const SweepConfig& c) {
  std::vector<Job> jobs;
  for (double a : c.alpha)
    for (double l : c.lambda)
      for (double L : c.box_side) {
        const std::uint64_t seed = c.seed;
        const auto opts = c.options;
        const double tol = c.tol.eig;
        jobs.push_back(guarded("oracle", a, l, L, 1, seed, [=]() {
          PhysParams p;
          p.alpha = a;
          p.lambda_uv = l;
          p.box_side = L;
          p.validate();
          ModeLattice lat(p);
          ModelSpec m;
          if (opts.coupling == "a2") m.kind = CouplingModel::A2Only;
          if (opts.coupling == "density") {
            m.kind = CouplingModel::DensityCoupled;
            m.density = DensityTable::uniform(lat);
          }
          auto tr = convergence_study(lat, a, m, opts.caps, tol);
          const auto& last = tr.entries.back();
          ResultRow r;
          r.task = "oracle";
          r.model = m.kind == CouplingModel::MinimalCoupling ? "nonrel" : "a2";
          r.statistics = "single";
          r.side = "upper";
          r.alpha = a;
          r.lambda = l;
          r.box_side = L;
          r.value = last.E0;
          r.aux_name = "residual";
          r.aux_value = last.residual;
          r.seed = seed;
          return std::vector<ResultRow>{r};
        }));
      }
  return jobs;
}

std::vector<Job> rel_jobs(const SweepConfig& c) {
  std::vector<Job> jobs;
  for (double a : c.alpha)
    for (double l : c.lambda) {
      const std::uint64_t seed = c.seed;
      const ConstantsSet k = c.constants;
      const double tol = c.tol.quadrature;
      jobs.push_back(guarded("rel", a, l, std::nullopt, 1, seed, [=]() {
        std::vector<ResultRow> rows;
        rows.push_back(from_record("rel", rel_upper(a, l, k), seed));
        RelLowerOptions o;
        o.tol = tol;
        rows.push_back(from_record("rel", rel_lower(a, l, o), seed));
        return rows;
      }));
    }
  return jobs;
}

std::vector<Job> lt_jobs(const SweepConfig& c) {
  std::vector<Job> jobs;
  std::uint64_t idx = 0;
  for (double L : c.box_side)
    for (int n : c.n) {
      const std::uint64_t seed = derive_seed(c.seed, idx++);
      const auto opts = c.options;
      jobs.push_back(guarded("lt", 0.0, 0.0, L, n, seed, [=]() {
        const auto orb = free_fermion_orbitals(n, opts.q, L);
        const auto run = sample_slater(orb, opts.samples, opts.burn_in, seed);
        std::vector<ResultRow> rows;
        for (double f : opts.r_fraction)
          for (auto mode : {LtMode::Nonrel, LtMode::Rel}) {
            const auto res = lt_ratio_from_samples(orb, run, f * L, mode);
            ResultRow r;
            r.task = "lt";
            r.model = mode == LtMode::Nonrel ? "nonrel" : "rel";
            r.statistics = "fermion";
            r.side = "lower";
            r.box_side = L;
            r.n = n;
            r.value = res.ratio;
            r.aux_name = "stderr_R" + format_double(f) + "L";
            r.aux_value = res.stderr_ratio;
            r.seed = seed;
            rows.push_back(r);
          }
        return rows;
      }));
    }
  return jobs;
}

std::vector<ResultRow> run_pool(const std::vector<Job>& jobs, int threads) {
  std::vector<std::vector<ResultRow>> out(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) out[i] = jobs[i]();
  };
  const int t = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < t; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  std::vector<ResultRow> rows;
  for (auto& v : out)
    for (auto& r : v) rows.push_back(std::move(r));
  return rows;
}

int exit_code_for(const std::vector<ResultRow>& rows) {
  int code = 0;
  for (const auto& r : rows) {
    if (r.status == "ok" || r.status == "degenerate") continue;
    if (r.status == "configuration" || r.status == "invalid-input")
      code = std::max(code, 2);
    else
      code = std::max(code, 1);
  }
  return code == 2 ? 2 : code;
}

void write_file(const std::string& path, const std::string& text) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::Configuration, "cannot open output '" + path + "'");
  f << text;
}

}  // namespace

RunOutcome run(const SweepConfig& config, int threads) {
  RunOutcome out;
  const std::string& t = config.task;
  if (t == "accept") {
    AcceptanceOptions ao;
    ao.constants = config.constants;
    ao.seed = config.seed;
    ao.criteria = config.options.criteria;
    auto res = run_acceptance(ao);
    out.report_json = acceptance_report_json(res, ao);
    bool all = true;
    for (const auto& r : res) all = all && r.passed;
    out.exit_code = all ? 0 : 1;
  } else if (t == "fit") {
    std::ifstream f(config.options.input, std::ios::binary);
    if (!f) fail(ErrorCode::Configuration, "cannot read fit input '" + config.options.input + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    const auto rows = parse_csv(ss.str());
    json rep;
    try {
      const auto fit = fit_powerlaw(rows, config.options.x_field, config.options.y_field,
                                    config.options.filter);
      rep = {{"exponent", fit.exponent},       {"stderr", fit.stderr_exponent},
             {"r_squared", fit.r_squared},     {"n_points", fit.n_points},
             {"prefactor", fit.prefactor},     {"dropped", fit.dropped},
             {"status", "ok"}};
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Configuration) throw;
      rep = {{"status", error_code_name(e.code())}, {"message", e.what()}};
      out.exit_code = 1;
    }
    rep["x_field"] = config.options.x_field;
    rep["y_field"] = config.options.y_field;
    rep["filter"] = config.options.filter;
    rep["tool_version"] = kToolVersion;
    out.report_json = rep.dump(2) + "\n";
  } else {
    std::vector<Job> jobs;
    if (t == "bounds") jobs = bounds_jobs(config);
    else if (t == "a2") jobs = a2_jobs(config);
    else if (t == "oracle") jobs = oracle_jobs(config);
    else if (t == "rel") jobs = rel_jobs(config);
    else if (t == "lt") jobs = lt_jobs(config);
    else fail(ErrorCode::Configuration, "unknown task '" + t + "'");
    out.rows = run_pool(jobs, threads);
    out.exit_code = exit_code_for(out.rows);
  }
  if (!config.output.empty()) {
    out.output_path = resolve_output_path(config.output, t);
    write_file(out.output_path, out.report_json.empty() ? csv_document(out.rows) : out.report_json);
  }
  return out;
}

}  // namespace qb
