/* Exercises the C interface from plain C. */
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "qedbounds/qedbounds.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

int main(void) {
  double v = 0.0, aux = 0.0, kb = 0.0;
  long long n = 0;
  const double pi = 3.14159265358979323846;

  EXPECT(strlen(qb_version()) > 0);
  EXPECT(strcmp(qb_status_name(QB_CAPACITY), "capacity") == 0);

  EXPECT(qb_rel_upper(1.0, 10.0, &v) == QB_OK && v > 0.0);
  EXPECT(qb_rel_upper(-1.0, 10.0, &v) == QB_INVALID_INPUT);
  EXPECT(strlen(qb_last_error()) > 0);
  EXPECT(qb_commutator_lower(1.0, 1.0, &v) == QB_OK);
  EXPECT(strlen(qb_last_error()) == 0);
  EXPECT(qb_a2_lower(1.0, 100.0, &v, &aux) == QB_OK && v > 0.0 && aux > 0.0);
  EXPECT(qb_k_ell(1.0, 10.0, 1e-9, &v, &kb) == QB_OK);
  EXPECT(fabs(v - 0.756377826823) < 1e-8);
  EXPECT(qb_k_ell(1.0, 0.0, 1e-9, &v, &kb) == QB_INVALID_INPUT);
  EXPECT(qb_rel_lower(0.1, 10.0, &v, &aux) == QB_OK && v > 0.0 && aux > 0.0);
  EXPECT(qb_per_particle_min(1e-4, 1.0, &n, &v) == QB_OK && n >= 1);
  EXPECT(qb_rel_upper(1.0, 1.0, NULL) == QB_INVALID_INPUT);

  qb_lattice* lat = NULL;
  EXPECT(qb_lattice_create(1.0, 1.5, 2.0 * pi, &lat) == QB_OK && lat != NULL);
  if (lat) {
    double a2 = 0.0, cl = 0.0, ks = 0.0, e = 0.0, eo = 0.0;
    EXPECT(qb_lattice_mode_count(lat) > 0);
    EXPECT(qb_lattice_vacuum_a2(lat, &a2) == QB_OK && a2 > 0.0);
    EXPECT(qb_lattice_commutator_lower(lat, &cl) == QB_OK);
    EXPECT(qb_lattice_optimize_k(lat, &ks, &e) == QB_OK && ks > 0.0);
    EXPECT(qb_lattice_oracle_energy(lat, QB_MINIMAL, 2, &eo) == QB_OK);
    EXPECT(qb_lattice_oracle_energy(lat, QB_MINIMAL, 12, &eo) == QB_CAPACITY);
    qb_lattice_destroy(lat);
  }
  EXPECT(qb_lattice_create(1.0, 1.5, -1.0, &lat) == QB_INVALID_INPUT);
  qb_lattice_destroy(NULL);

  qb_result* r = NULL;
  qb_run_options o = {0};
  o.threads = 2;
  EXPECT(qb_run("{\"task\":\"bounds\",\"grid\":{\"alpha\":[1],\"lambda\":[1,2]}}", &o, &r) == QB_OK);
  if (r) {
    EXPECT(qb_result_exit_code(r) == 0);
    EXPECT(qb_result_row_count(r) > 0);
    EXPECT(strncmp(qb_result_text(r), "task,model", 10) == 0);
    qb_result_destroy(r);
    r = NULL;
  }
  EXPECT(qb_run("{\"task\":\"bounds\",\"grid\":{\"alpha\":[],\"lambda\":[1]}}", &o, &r) ==
         QB_CONFIG);
  EXPECT(r == NULL);
  o.task = "rel";
  EXPECT(qb_run("{\"task\":\"bounds\",\"grid\":{\"alpha\":[1],\"lambda\":[1]}}", &o, &r) ==
         QB_CONFIG);
  EXPECT(qb_run(NULL, &o, &r) == QB_INVALID_INPUT);

  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  puts("C API checks passed");
  return 0;
}
