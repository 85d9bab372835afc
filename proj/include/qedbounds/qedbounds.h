/* C interface to the qedbounds library. All handles are opaque; every call
 * returns a qb_status and reports details through qb_last_error(). */
#ifndef QEDBOUNDS_H
#define QEDBOUNDS_H

#include <stddef.h>
#include <stdint.h>

#if defined(QB_BUILDING_LIBRARY)
#define QB_API __attribute__((visibility("default")))
#else
#define QB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qb_status {
  QB_OK = 0,
  QB_INVALID_INPUT = 1,
  QB_NUMERICAL = 2,
  QB_CAPACITY = 3,
  QB_CONFIG = 4,
  QB_DEGENERATE = 5,
  QB_INSUFFICIENT_DATA = 6,
  QB_INTERNAL = 99
} qb_status;

typedef enum qb_coupling { QB_MINIMAL = 0, QB_A2_ONLY = 1, QB_DENSITY_UNIFORM = 2 } qb_coupling;

typedef struct qb_lattice qb_lattice;
typedef struct qb_result qb_result;

QB_API const char* qb_version(void);
QB_API const char* qb_status_name(qb_status s);
/* Message of the last failing call on this thread; empty after success. */
QB_API const char* qb_last_error(void);

/* Closed-form and quadrature evaluators. */
QB_API qb_status qb_rel_upper(double alpha, double lambda_uv, double* value);
QB_API qb_status qb_commutator_lower(double alpha, double lambda_uv, double* value);
QB_API qb_status qb_a2_lower(double alpha, double lambda_uv, double* value, double* r_star);
QB_API qb_status qb_k_ell(double alpha, double ell, double tol, double* k_value,
                          double* k_single_bound);
QB_API qb_status qb_rel_lower(double alpha, double lambda_uv, double* value, double* ell_star);
QB_API qb_status qb_per_particle_min(double c_kin, double c_field, long long* n_star,
                                     double* value);

/* Photon mode lattice for a box of side box_side. */
QB_API qb_status qb_lattice_create(double alpha, double lambda_uv, double box_side,
                                   qb_lattice** out);
QB_API void qb_lattice_destroy(qb_lattice* lat);
QB_API size_t qb_lattice_mode_count(const qb_lattice* lat);
QB_API qb_status qb_lattice_vacuum_a2(const qb_lattice* lat, double* value);
QB_API qb_status qb_lattice_commutator_lower(const qb_lattice* lat, double* value);
QB_API qb_status qb_lattice_optimize_k(const qb_lattice* lat, double* k_star, double* energy);
QB_API qb_status qb_lattice_oracle_energy(const qb_lattice* lat, qb_coupling coupling, int cap,
                                          double* energy);

/* Configuration-driven task run. task may be NULL to use the document's task;
 * out_path may be NULL to skip writing; seed is used when has_seed != 0. */
typedef struct qb_run_options {
  const char* task;
  const char* out_path;
  uint64_t seed;
  int has_seed;
  int threads;
} qb_run_options;

QB_API qb_status qb_run(const char* config_json, const qb_run_options* opts, qb_result** out);
QB_API void qb_result_destroy(qb_result* r);
/* CSV body (header and rows) for sweep tasks, JSON report for fit/accept. */
QB_API const char* qb_result_text(const qb_result* r);
QB_API size_t qb_result_row_count(const qb_result* r);
/* 0 ok, 1 numerical or capacity failure, 2 configuration error. */
QB_API int qb_result_exit_code(const qb_result* r);
QB_API const char* qb_result_output_path(const qb_result* r);

#ifdef __cplusplus
}
#endif

#endif
