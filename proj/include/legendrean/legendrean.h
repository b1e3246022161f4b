/* SPDX-License-Identifier: Apache-2.0 */
#ifndef LEGENDREAN_LEGENDREAN_H
#define LEGENDREAN_LEGENDREAN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LEG_API __declspec(dllexport)
#else
#define LEG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum leg_status {
  LEG_OK = 0,
  LEG_ERR_INVALID_ARGUMENT = 1, /* null pointer, bad enum, buffer too small */
  LEG_ERR_CONFIG = 2,           /* malformed config or request */
  LEG_ERR_SYNTAX = 3,           /* expression parse failure */
  LEG_ERR_VALIDATION = 4,       /* structure failed validation at a probe point */
  LEG_ERR_SINGULARITY = 5,
  LEG_ERR_ORDER_EXCEEDED = 6,
  LEG_ERR_SHAPE = 7,
  LEG_ERR_DEGENERATE_FRAME = 8,
  LEG_ERR_NOT_CONTACT = 9,
  LEG_ERR_NON_INVOLUTIVE = 10,
  LEG_ERR_PRECONDITION = 11,
  LEG_ERR_INTERNAL = 12
} leg_status;

typedef enum leg_format { LEG_FORMAT_TEXT = 0, LEG_FORMAT_JSON = 1 } leg_format;

/* A validated contact structure with its Legendrean splitting and test sections. */
typedef struct leg_structure leg_structure;

typedef struct leg_verify_options {
  const char* suite; /* NULL means "all" */
  size_t points;
  uint64_t seed;
  int order;
  int has_tol; /* when nonzero, tol replaces every non-margin tolerance */
  double tol;
  int timing; /* when nonzero, report wall-clock duration */
} leg_verify_options;

typedef struct leg_eval_request {
  const char* op;
  const char* u;
  const char* rho;
  const char* t;
  const char* eta;
  int dir;
  const char* at;
  int order;
} leg_eval_request;

LEG_API const char* leg_version(void);
LEG_API const char* leg_status_string(leg_status status);
/* Message of the most recent failure on the calling thread ("" if none). */
LEG_API const char* leg_last_error(void);
/* Config line of the most recent LEG_ERR_CONFIG, 0 if unknown. */
LEG_API size_t leg_last_error_line(void);

/* Strings returned through char** outputs are owned by the caller. */
LEG_API void leg_string_free(char* s);

LEG_API leg_status leg_structure_load_file(const char* path, leg_structure** out);
LEG_API leg_status leg_structure_load_text(const char* text, leg_structure** out);
LEG_API leg_status leg_structure_load_example(const char* name, leg_structure** out);
LEG_API void leg_structure_free(leg_structure* s);
LEG_API leg_status leg_structure_dim(const leg_structure* s, size_t* dim);

/* Newline-separated names. */
LEG_API leg_status leg_examples_list(char** out);
LEG_API leg_status leg_example_text(const char* name, char** out);
LEG_API leg_status leg_suites_list(char** out);

LEG_API void leg_verify_options_init(leg_verify_options* opts);
/* *passed is set to 1 when every property passes. */
LEG_API leg_status leg_verify(const leg_structure* s, const leg_verify_options* opts,
                              leg_format format, char** report, int* passed);

LEG_API void leg_eval_request_init(leg_eval_request* req);
LEG_API leg_status leg_eval(const leg_structure* s, const leg_eval_request* req, leg_format format,
                            char** out);

/* Value of the Reeb field at a point: `out` receives dim doubles. */
LEG_API leg_status leg_reeb(const leg_structure* s, const double* point, size_t dim, double* out);
/* D(rho) at a point for the Q-section with theta-coefficient `rho_expr`; `out`
   receives n*n doubles in row-major order. */
LEG_API leg_status leg_bgg_d(const leg_structure* s, const char* rho_expr, const double* point,
                             size_t dim, double* out, size_t out_len);

#ifdef __cplusplus
}
#endif

#endif
