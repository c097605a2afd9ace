/* ptower — p-adic cyclotomic tower computer algebra.
 *
 * C interface of the shared library.  All state lives behind opaque handles;
 * every call returns a status code, with results delivered through out
 * parameters.  Strings returned through char** are heap-allocated and must be
 * released with ptw_buffer_free.
 *
 * The command layer exchanges JSON documents; the schemas are described in
 * the repository README.  Reports are byte-deterministic for equal inputs.
 */
#ifndef PTOWER_H
#define PTOWER_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ptw_status {
  PTW_OK = 0,
  PTW_ERR_DOMAIN = 1,
  PTW_ERR_NOT_INVERTIBLE = 2,
  PTW_ERR_PRECISION = 3,
  PTW_ERR_LEVEL_MISMATCH = 4,
  PTW_ERR_DIVERGENCE = 5,
  PTW_ERR_NOT_PSI_ZERO = 6,
  PTW_ERR_CAP_EXCEEDED = 7,
  PTW_ERR_PARSE = 8,
  PTW_ERR_CHECK_FAILED = 9,
  PTW_ERR_INVALID_ARGUMENT = 10,
  PTW_ERR_INTERNAL = 11
} ptw_status;

const char* ptw_status_name(ptw_status s);
const char* ptw_version(void);
void ptw_buffer_free(char* buf);

/* ---- command layer: JSON in, JSON (or CSV) out --------------------- */

/* Runs one batch command.  On success *out receives the report.  A failing
 * check yields PTW_ERR_CHECK_FAILED with the report still written to *out;
 * parse/domain errors yield the corresponding status with *out carrying the
 * error message. */
ptw_status ptw_run_solve(const char* instance_json, char** out);
ptw_status ptw_run_qsystem(const char* instance_json, char** out);
ptw_status ptw_run_wach(const char* instance_json, char** out);
ptw_status ptw_run_lemmas(const char* request_json, char** out);
ptw_status ptw_run_mellin(const char* request_json, char** out);
ptw_status ptw_run_bounds(const char* request_json, char** out);
ptw_status ptw_run_bounds_csv(const char* request_json, char** out);

/* ---- object layer: contexts and truncated series ------------------- */

typedef struct ptw_context ptw_context;
typedef struct ptw_series ptw_series;

/* u = 0 and caps = 0 select defaults (u = 1+p, degree 3p^3, p-based tower). */
ptw_status ptw_context_create(int64_t p, int precision, int degree_cap, uint64_t u,
                              int nu, ptw_context** out);
void ptw_context_destroy(ptw_context* ctx);

/* series wire format: JSON array of scalars, constant term first */
ptw_status ptw_series_parse(ptw_context* ctx, const char* json, int cap,
                            ptw_series** out);
ptw_status ptw_series_write(const ptw_series* f, char** json_out);
void ptw_series_destroy(ptw_series* f);

/* op is one of "phi", "psi", "partial", "log", "cyclo_q", "mu";
 * arg is the iteration count or level where applicable */
ptw_status ptw_series_op(ptw_context* ctx, const ptw_series* in, const char* op,
                         int arg, ptw_series** out);
/* evaluation at zeta_{p^level} - 1; *json_out receives the residue polynomial */
ptw_status ptw_series_eval_level(ptw_context* ctx, const ptw_series* f, int level,
                                 char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* PTOWER_H */
