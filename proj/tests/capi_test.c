/* SPDX-License-Identifier: Apache-2.0 */
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "legendrean/legendrean.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

int main(void) {
  leg_structure* s = NULL;
  char* out = NULL;
  size_t dim = 0;
  double p[3] = {0.5, 0.2, 0.1};
  double r[3];
  double d[1];

  EXPECT(strcmp(leg_version(), "0.1.0") == 0);
  EXPECT(leg_structure_load_example("darboux3", &s) == LEG_OK);
  EXPECT(leg_structure_dim(s, &dim) == LEG_OK && dim == 3);

  EXPECT(leg_reeb(s, p, 3, r) == LEG_OK);
  EXPECT(fabs(r[0]) < 1e-12 && fabs(r[1]) < 1e-12 && fabs(r[2] - 1.0) < 1e-12);
  EXPECT(leg_reeb(s, p, 2, r) == LEG_ERR_INVALID_ARGUMENT);

  EXPECT(leg_bgg_d(s, "x^2", p, 3, d, 1) == LEG_OK);
  EXPECT(fabs(d[0] - 2.0) < 1e-10);
  EXPECT(leg_bgg_d(s, "x^2", p, 3, d, 0) == LEG_ERR_INVALID_ARGUMENT);
  EXPECT(leg_bgg_d(s, "x^", p, 3, d, 1) == LEG_ERR_SYNTAX);
  EXPECT(strlen(leg_last_error()) > 0);

  {
    leg_verify_options o;
    int passed = 0;
    leg_verify_options_init(&o);
    o.suite = "structure";
    o.points = 10;
    EXPECT(leg_verify(s, &o, LEG_FORMAT_JSON, &out, &passed) == LEG_OK);
    EXPECT(passed == 1);
    EXPECT(out && strncmp(out, "{\"suite\":\"structure\"", 20) == 0);
    leg_string_free(out);
    out = NULL;
    o.suite = "bogus";
    EXPECT(leg_verify(s, &o, LEG_FORMAT_TEXT, &out, &passed) == LEG_ERR_CONFIG);
    EXPECT(leg_verify(s, &o, (leg_format)7, &out, &passed) == LEG_ERR_INVALID_ARGUMENT);
  }

  {
    leg_eval_request req;
    leg_eval_request_init(&req);
    req.op = "upsilon";
    req.u = "x";
    req.at = "x=0.5,y=0.2,z=0.1";
    EXPECT(leg_eval(s, &req, LEG_FORMAT_TEXT, &out) == LEG_OK);
    EXPECT(out && strstr(out, "upsilon = (0, -1, 0)") != NULL);
    leg_string_free(out);
    out = NULL;
  }

  leg_structure_free(s);
  s = NULL;

  EXPECT(leg_structure_load_text("[bogus]\nk = 1\n", &s) == LEG_ERR_CONFIG);
  EXPECT(leg_last_error_line() == 1);
  EXPECT(s == NULL);
  EXPECT(leg_structure_load_example("nope", &s) == LEG_ERR_CONFIG);
  EXPECT(leg_structure_load_example(NULL, &s) == LEG_ERR_INVALID_ARGUMENT);
  EXPECT(leg_structure_load_file("/nonexistent.cfg", &s) == LEG_ERR_CONFIG);

  EXPECT(leg_examples_list(&out) == LEG_OK);
  EXPECT(out && strcmp(out, "darboux3\ndarboux5\ntwisted5\n") == 0);
  leg_string_free(out);
  EXPECT(leg_suites_list(&out) == LEG_OK);
  EXPECT(out && strstr(out, "bgg\nall\n") != NULL);
  leg_string_free(out);
  EXPECT(strcmp(leg_status_string(LEG_ERR_NON_INVOLUTIVE), "distribution not involutive") == 0);

  if (failures) fprintf(stderr, "%d failure(s)\n", failures);
  return failures ? 1 : 0;
}
