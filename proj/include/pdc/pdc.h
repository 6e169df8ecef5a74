/* SPDX-License-Identifier: Apache-2.0 */
/*
 * C interface to the down-conversion simulator.
 *
 * Objects are opaque handles. Every fallible call returns a pdc_status; on
 * failure pdc_last_error() gives a message for the calling thread. Strings
 * returned through char** are owned by the caller and released with
 * pdc_string_free.
 */
#ifndef PDC_PDC_H
#define PDC_PDC_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(PDC_BUILDING_LIBRARY)
#    define PDC_API __declspec(dllexport)
#  else
#    define PDC_API __declspec(dllimport)
#  endif
#else
#  define PDC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pdc_status {
  PDC_OK = 0,
  PDC_ERR_CONFIG = 1,
  PDC_ERR_TRUNCATION = 2,
  PDC_ERR_INTEGRATION = 3,
  PDC_ERR_INTEGRITY = 4,
  PDC_ERR_DOMAIN = 5,
  PDC_ERR_BASIS_TOO_SMALL = 6,
  PDC_ERR_IO = 7,
  PDC_ERR_ARGUMENT = 8,
  PDC_ERR_SYMMETRY = 9,
  PDC_ERR_INTERNAL = 99
} pdc_status;

typedef struct pdc_config pdc_config;
typedef struct pdc_trajectory pdc_trajectory;

typedef struct pdc_observables {
  double t_scaled;
  double n1, n2;
  double re_a1, im_a1;
  double re_a2, im_a2;
  double re_a1sq, im_a1sq;
  double var_x1, var_p1, var_x2, var_p2;
  double norm2;
  double manley_rowe;
} pdc_observables;

typedef struct pdc_features {
  double max_conversion_efficiency;
  double t_of_max_conversion;
  double min_var_p1;
  double t_of_min_var_p1;
  double max_var_x2;
  double t_of_max_var_x2;
  double pump_amplitude_min;
  double t_of_pump_amplitude_min;
  double var_x2_at_max_conversion;
  double manley_rowe_drift;
  int boundary_warnings;
} pdc_features;

PDC_API const char* pdc_version(void);
PDC_API const char* pdc_last_error(void);
PDC_API const char* pdc_status_name(pdc_status s);
PDC_API void pdc_string_free(char* s);

PDC_API pdc_status pdc_config_create(pdc_config** out);
PDC_API pdc_status pdc_config_load_file(const char* path, pdc_config** out);
PDC_API pdc_status pdc_config_load_json(const char* json, pdc_config** out);
/* Dotted key, e.g. "n2_0" or "propagator.method". */
PDC_API pdc_status pdc_config_set(pdc_config* cfg, const char* key, const char* value);
PDC_API pdc_status pdc_config_to_json(const pdc_config* cfg, char** out);
PDC_API void pdc_config_destroy(pdc_config* cfg);

PDC_API pdc_status pdc_run(const pdc_config* cfg, pdc_trajectory** out);
PDC_API size_t pdc_trajectory_size(const pdc_trajectory* traj);
PDC_API pdc_status pdc_trajectory_get(const pdc_trajectory* traj, size_t index, pdc_observables* out);
PDC_API pdc_status pdc_trajectory_features(const pdc_trajectory* traj, pdc_features* out);
PDC_API pdc_status pdc_trajectory_csv(const pdc_trajectory* traj, char** out);
PDC_API pdc_status pdc_trajectory_features_json(const pdc_trajectory* traj, char** out);
PDC_API void pdc_trajectory_destroy(pdc_trajectory* traj);

/* methods: comma-separated list such as "meanfield,exact". */
PDC_API pdc_status pdc_compare(const pdc_config* cfg, const char* methods, char** csv_out, char** report_out);
PDC_API pdc_status pdc_sweep(const pdc_config* cfg, const double* n2_values, size_t count, char** csv_out);
/* passed is set to 1 when every phase-insensitive observable agrees within tol. */
PDC_API pdc_status pdc_gauge_check(const pdc_config* cfg, double phase, double tol, double* max_deviation,
                                   int* passed);
/* One line per check; failures receives the number of failed checks. */
PDC_API pdc_status pdc_selftest(char** report_out, int* failures);

#ifdef __cplusplus
}
#endif

#endif
