#include "qedbounds/qedbounds.h"

#include <memory>
#include <new>
#include <string>

#include "qedbounds/bounds.hpp"
#include "qedbounds/fock.hpp"
#include "qedbounds/harness.hpp"
#include "qedbounds/quad_solver.hpp"

struct qb_lattice {
  qb::ModeLattice lattice;
};

struct qb_result {
  qb::RunOutcome outcome;
  std::string text;
};

namespace {

thread_local std::string g_last_error;

qb_status to_status(qb::ErrorCode c) {
  switch (c) {
    case qb::ErrorCode::InvalidInput: return QB_INVALID_INPUT;
    case qb::ErrorCode::Numerical: return QB_NUMERICAL;
    case qb::ErrorCode::Capacity: return QB_CAPACITY;
    case qb::ErrorCode::Configuration: return QB_CONFIG;
    case qb::ErrorCode::Degenerate: return QB_DEGENERATE;
    case qb::ErrorCode::InsufficientData: return QB_INSUFFICIENT_DATA;
  }
  return QB_INTERNAL;
}

template <class F>
qb_status guard(F&& f) {
  try {
    g_last_error.clear();
    f();
    return QB_OK;
  } catch (const qb::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QB_CAPACITY;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QB_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) qb::fail(qb::ErrorCode::InvalidInput, std::string(what) + " is null");
}

}  // namespace

extern "C" {

const char* qb_version(void) { return qb::kToolVersion; }

const char* qb_status_name(qb_status s) {
  switch (s) {
    case QB_OK: return "ok";
    case QB_INVALID_INPUT: return "invalid-input";
    case QB_NUMERICAL: return "numerical-failure";
    case QB_CAPACITY: return "capacity";
    case QB_CONFIG: return "configuration";
    case QB_DEGENERATE: return "degenerate";
    case QB_INSUFFICIENT_DATA: return "insufficient-data";
    case QB_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* qb_last_error(void) { return g_last_error.c_str(); }

qb_status qb_rel_upper(double alpha, double lambda_uv, double* value) {
  return guard([&] {
    need(value, "value");
    *value = qb::rel_upper(alpha, lambda_uv).value;
  });
}

qb_status qb_commutator_lower(double alpha, double lambda_uv, double* value) {
  return guard([&] {
    need(value, "value");
    *value = qb::commutator_lower_bound(alpha, lambda_uv).value;
  });
}

qb_status qb_a2_lower(double alpha, double lambda_uv, double* value, double* r_star) {
  return guard([&] {
    need(value, "value");
    const auto r = qb::a2_lower_bound(alpha, lambda_uv);
    *value = r.value;
    if (r_star) *r_star = r.aux_value;
  });
}

qb_status qb_k_ell(double alpha, double ell, double tol, double* k_value, double* k_single_bound) {
  return guard([&] {
    need(k_value, "k_value");
    const auto k = qb::k_ell(alpha, ell, tol);
    *k_value = k.K_value;
    if (k_single_bound) *k_single_bound = k.K_single_integral_bound;
  });
}

qb_status qb_rel_lower(double alpha, double lambda_uv, double* value, double* ell_star) {
  return guard([&] {
    need(value, "value");
    const auto r = qb::rel_lower(alpha, lambda_uv);
    *value = r.value;
    if (ell_star) *ell_star = r.aux_value;
  });
}

qb_status qb_per_particle_min(double c_kin, double c_field, long long* n_star, double* value) {
  return guard([&] {
    need(value, "value");
    const auto r = qb::per_particle_min(c_kin, c_field);
    *value = r.value;
    if (n_star) *n_star = r.n_star;
  });
}

qb_status qb_lattice_create(double alpha, double lambda_uv, double box_side, qb_lattice** out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    qb::PhysParams p;
    p.alpha = alpha;
    p.lambda_uv = lambda_uv;
    p.box_side = box_side;
    p.validate();
    *out = new qb_lattice{qb::ModeLattice(p)};
  });
}

void qb_lattice_destroy(qb_lattice* lat) { delete lat; }

size_t qb_lattice_mode_count(const qb_lattice* lat) { return lat ? lat->lattice.mode_count() : 0; }

qb_status qb_lattice_vacuum_a2(const qb_lattice* lat, double* value) {
  return guard([&] {
    need(lat, "lattice");
    need(value, "value");
    *value = qb::vacuum_A2(lat->lattice);
  });
}

qb_status qb_lattice_commutator_lower(const qb_lattice* lat, double* value) {
  return guard([&] {
    need(lat, "lattice");
    need(value, "value");
    const auto& l = lat->lattice;
    *value = qb::commutator_lower_bound(l.params().alpha, l.lambda_uv(), &l).value;
  });
}

qb_status qb_lattice_optimize_k(const qb_lattice* lat, double* k_star, double* energy) {
  return guard([&] {
    need(lat, "lattice");
    need(energy, "energy");
    const auto r = qb::optimize_K(lat->lattice, lat->lattice.params().alpha);
    *energy = r.energy.total;
    if (k_star) *k_star = r.K_star;
  });
}

qb_status qb_lattice_oracle_energy(const qb_lattice* lat, qb_coupling coupling, int cap,
                                   double* energy) {
  return guard([&] {
    need(lat, "lattice");
    need(energy, "energy");
    qb::ModelSpec m;
    switch (coupling) {
      case QB_MINIMAL: m.kind = qb::CouplingModel::MinimalCoupling; break;
      case QB_A2_ONLY: m.kind = qb::CouplingModel::A2Only; break;
      case QB_DENSITY_UNIFORM:
        m.kind = qb::CouplingModel::DensityCoupled;
        m.density = qb::DensityTable::uniform(lat->lattice);
        break;
      default: qb::fail(qb::ErrorCode::InvalidInput, "unknown coupling");
    }
    auto basis = qb::enumerate_basis(lat->lattice, cap, cap);
    auto h = qb::assemble_hamiltonian(basis, lat->lattice.params().alpha, m);
    *energy = qb::ground_energy(h, 1e-10).E0;
  });
}

qb_status qb_run(const char* config_json, const qb_run_options* opts, qb_result** out) {
  return guard([&] {
    need(config_json, "config_json");
    need(out, "out");
    *out = nullptr;
    auto cfg = qb::parse_config(config_json, opts && opts->task ? opts->task : "");
    int threads = 1;
    if (opts) {
      if (opts->has_seed) cfg.seed = opts->seed;
      // "" keeps the document's output, falling back to the task default
      if (opts->out_path && *opts->out_path) cfg.output = opts->out_path;
      if (opts->out_path && cfg.output.empty())
        cfg.output = cfg.task + (cfg.task == "accept" || cfg.task == "fit" ? ".json" : ".csv");
      if (opts->threads > 0) threads = opts->threads;
    }
    auto r = std::make_unique<qb_result>();
    r->outcome = qb::run(cfg, threads);
    r->text = r->outcome.report_json.empty() ? qb::csv_body(r->outcome.rows) : r->outcome.report_json;
    *out = r.release();
  });
}

void qb_result_destroy(qb_result* r) { delete r; }
const char* qb_result_text(const qb_result* r) { return r ? r->text.c_str() : ""; }
size_t qb_result_row_count(const qb_result* r) { return r ? r->outcome.rows.size() : 0; }
int qb_result_exit_code(const qb_result* r) { return r ? r->outcome.exit_code : 2; }
const char* qb_result_output_path(const qb_result* r) {
  return r ? r->outcome.output_path.c_str() : "";
}

}  // extern "C"
