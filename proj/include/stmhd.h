/* C interface to the space-time MHD solver library. */
#ifndef STMHD_H
#define STMHD_H

#include <stddef.h>

#if defined(STMHD_BUILDING_LIBRARY)
#define STMHD_API __attribute__((visibility("default")))
#else
#define STMHD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum stmhd_status {
  STMHD_OK = 0,
  STMHD_ERR_CONFIG = 1,
  STMHD_ERR_IO = 2,
  STMHD_ERR_SINGULAR = 3,
  STMHD_ERR_BREAKDOWN = 4,
  STMHD_ERR_INVALID_ARGUMENT = 5,
  STMHD_ERR_INTERNAL = 6
} stmhd_status;

typedef struct stmhd_config stmhd_config;
typedef struct stmhd_results stmhd_results;

/* One CSV row. String pointers stay valid until the results handle is freed.
   Optional numeric fields carry a has_* flag. */
typedef struct stmhd_row {
  const char* problem;
  double dx, dt, T;
  int nt;
  const char* mode;
  int newton;
  double avg_gmres;
  int has_effective_steps;
  int effective_steps;
  int has_ratios;
  double newton_ratio, gmres_ratio;
  const char* status;
  int converged;
  int has_wall_s;
  double wall_s;
} stmhd_row;

typedef void (*stmhd_line_callback)(const char* line, void* user);

/* Message of the last failed call on this thread ("" if none). */
STMHD_API const char* stmhd_last_error(void);
STMHD_API const char* stmhd_version(void);

STMHD_API stmhd_status stmhd_config_from_file(const char* path, stmhd_config** out);
STMHD_API stmhd_status stmhd_config_from_string(const char* text, stmhd_config** out);
/* Overrides one key with the same syntax as the configuration file. */
STMHD_API stmhd_status stmhd_config_set(stmhd_config* cfg, const char* key, const char* value);
STMHD_API stmhd_status stmhd_config_validate(const stmhd_config* cfg);
/* Output path from the "out" key, or "" when unset. */
STMHD_API const char* stmhd_config_output_path(const stmhd_config* cfg);
STMHD_API void stmhd_config_free(stmhd_config* cfg);

STMHD_API stmhd_status stmhd_run_sweep(const stmhd_config* cfg, stmhd_results** out);
STMHD_API size_t stmhd_results_count(const stmhd_results* res);
STMHD_API stmhd_status stmhd_results_get(const stmhd_results* res, size_t index, stmhd_row* row);
/* 1 when every row converged. */
STMHD_API int stmhd_results_all_converged(const stmhd_results* res);
STMHD_API stmhd_status stmhd_results_write_csv(const stmhd_results* res, const char* path);
/* CSV text owned by the results handle. */
STMHD_API const char* stmhd_results_csv(const stmhd_results* res);
STMHD_API void stmhd_results_free(stmhd_results* res);

/* Runs the built-in oracle battery; one line per check goes to `cb`. */
STMHD_API stmhd_status stmhd_verify(stmhd_line_callback cb, void* user, int* failures);

#ifdef __cplusplus
}
#endif

#endif
