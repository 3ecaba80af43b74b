/* Exercises the C API from plain C. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "anitm/anitm.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static void test_gauge(void) {
  anitm_gauge* g = NULL;
  double kappa = 0.0, lambda = 0.0, f = 0.0;
  const double x[2] = {3.0, 4.0};
  EXPECT(anitm_gauge_from_json("{\"kind\":\"euclidean\"}", 2, &g) == ANITM_OK);
  EXPECT(anitm_gauge_dimension(g) == 2);
  EXPECT(anitm_gauge_kappa(g, &kappa) == ANITM_OK && fabs(kappa - M_PI) < 1e-10);
  EXPECT(anitm_gauge_sharp_constant(g, &lambda) == ANITM_OK && fabs(lambda - 4.0 * M_PI) < 1e-9);
  EXPECT(anitm_gauge_eval(g, x, &f) == ANITM_OK && fabs(f - 5.0) < 1e-14);
  anitm_gauge_free(g);

  g = NULL;
  EXPECT(anitm_gauge_from_json("{\"kind\":\"ellipse\",\"matrix\":[[4,0],[0,1]]}", 2, &g) == ANITM_OK);
  EXPECT(anitm_gauge_kappa(g, &kappa) == ANITM_OK && fabs(kappa - 2.0 * M_PI) < 1e-6);
  EXPECT(anitm_gauge_eval_polar(g, x, &f) == ANITM_OK && fabs(f - sqrt(9.0 / 4.0 + 16.0)) < 1e-12);
  anitm_gauge_free(g);
}

static void test_errors(void) {
  anitm_gauge* g = NULL;
  EXPECT(anitm_gauge_from_json("{\"kind\":\"pnorm\"}", 2, &g) == ANITM_ERR_VALIDATION);
  EXPECT(g == NULL);
  EXPECT(strstr(anitm_last_error(), "gauge.p") != NULL);
  EXPECT(anitm_gauge_from_json("{not json", 2, &g) == ANITM_ERR_VALIDATION);
  EXPECT(anitm_gauge_kappa(NULL, NULL) == ANITM_ERR_VALIDATION);
  {
    anitm_grid* u = NULL;
    EXPECT(anitm_grid_load("/nonexistent/grid.txt", &u) == ANITM_ERR_IO);
    EXPECT(strstr(anitm_last_error(), "/nonexistent/grid.txt") != NULL);
  }
  {
    anitm_gauge* e = NULL;
    anitm_params p;
    anitm_profile* prof = NULL;
    const double r[2] = {0.0, 1.0}, v[2] = {1.0, 0.0};
    double out = 0.0;
    anitm_gauge_from_json("{\"kind\":\"euclidean\"}", 2, &e);
    anitm_params_default(&p);
    p.lambda = 13.0;
    anitm_profile_create(r, v, 2, &prof);
    EXPECT(anitm_ratio_functional(prof, &p, e, &out) == ANITM_ERR_VALIDATION);
    EXPECT(strstr(anitm_last_error(), "lambda_N") != NULL);
    anitm_profile_free(prof);
    anitm_gauge_free(e);
  }
  EXPECT(anitm_run_command("nope", "", NULL, NULL) == ANITM_ERR_VALIDATION);
}

static void test_profile(void) {
  anitm_gauge* g = NULL;
  anitm_profile* cone = NULL;
  anitm_profile* unit = NULL;
  anitm_params p;
  double r[33], v[33], before = 0.0, after = 0.0;
  int k;
  for (k = 0; k <= 32; ++k) {
    r[k] = k / 32.0;
    v[k] = 0.5 * (1.0 - r[k]);
  }
  anitm_gauge_from_json("{\"kind\":\"euclidean\"}", 2, &g);
  EXPECT(anitm_profile_create(r, v, 33, &cone) == ANITM_OK);
  EXPECT(anitm_profile_size(cone) == 33);
  EXPECT(anitm_profile_radii(cone)[32] == 1.0);
  anitm_params_default(&p);
  p.beta = 0.5;
  p.lambda = 2.0 * M_PI;
  EXPECT(anitm_normalize_sphere(cone, p.q, g, &unit) == ANITM_OK);
  EXPECT(anitm_ratio_functional(cone, &p, g, &before) == ANITM_OK);
  EXPECT(anitm_ratio_functional(unit, &p, g, &after) == ANITM_OK);
  EXPECT(isfinite(before) && after >= before * (1.0 - 1e-12));
  EXPECT(anitm_critical_value(unit, &p, g, &after) == ANITM_OK && after > 0.0);
  anitm_profile_free(unit);
  anitm_profile_free(cone);
  anitm_gauge_free(g);
}

static void test_grid(void) {
  anitm_gauge* g = NULL;
  anitm_grid* u = NULL;
  anitm_grid* us = NULL;
  const int m = 64;
  const double half = 1.5, h = 2.0 * half / m;
  double* values = malloc(sizeof(double) * m * m);
  double residual = 1.0;
  int i, j;
  for (i = 0; i < m; ++i)
    for (j = 0; j < m; ++j) {
      const double x = -half + (i + 0.5) * h, y = -half + (j + 0.5) * h;
      values[i * m + j] = (fabs(x) <= 1.0 && fabs(y) <= 1.0) ? 1.0 : 0.0;
    }
  anitm_gauge_from_json("{\"kind\":\"euclidean\"}", 2, &g);
  EXPECT(anitm_grid_create(2, half, m, values, &u) == ANITM_OK);
  EXPECT(anitm_grid_size(u) == (size_t)(m * m));
  EXPECT(anitm_grid_symmetrize(u, g, &us) == ANITM_OK);
  EXPECT(anitm_grid_symmetry_residual(us, g, &residual) == ANITM_OK && residual <= h);
  {
    double sum_u = 0.0, sum_us = 0.0;
    const double* a = anitm_grid_values(u);
    const double* b = anitm_grid_values(us);
    for (i = 0; i < m * m; ++i) {
      sum_u += a[i];
      sum_us += b[i];
    }
    EXPECT(fabs(sum_u - sum_us) <= 1e-9 * sum_u);
  }
  anitm_grid_free(us);
  anitm_grid_free(u);
  anitm_gauge_free(g);
  free(values);
}

static void test_estimate(void) {
  anitm_gauge* g = NULL;
  anitm_params p;
  anitm_search s;
  anitm_profile* w = NULL;
  double value = 0.0, spread = -1.0, check = 0.0;
  anitm_gauge_from_json("{\"kind\":\"euclidean\"}", 2, &g);
  anitm_params_default(&p);
  p.beta = 0.5;
  p.lambda = 2.0 * M_PI;
  anitm_search_default(&s);
  s.knots = 16;
  s.restarts = 2;
  s.budget = 800;
  EXPECT(anitm_estimate_f(&p, g, &s, &value, &spread, &w) == ANITM_OK);
  EXPECT(value > 0.0 && spread >= 0.0);
  EXPECT(anitm_ratio_functional(w, &p, g, &check) == ANITM_OK);
  EXPECT(fabs(check - value) <= 1e-9 * value);
  anitm_profile_free(w);
  anitm_gauge_free(g);
}

static void test_command(void) {
  char* summary = NULL;
  anitm_command_options o;
  anitm_command_options_default(&o);
  o.out_dir = "capi_test_out";
  EXPECT(anitm_run_command("geometry", "{\"gauge\":{\"kind\":\"euclidean\"}}", &o, &summary) == ANITM_OK);
  EXPECT(summary != NULL && strstr(summary, "kappa") != NULL);
  anitm_string_free(summary);
  EXPECT(anitm_run_command("geometry", "{\"gauge\":{\"kind\":\"euclidean\"},\"extra\":1}", &o, &summary) ==
         ANITM_ERR_VALIDATION);
  EXPECT(summary == NULL);
}

int main(void) {
  EXPECT(strlen(anitm_version()) > 0);
  test_gauge();
  test_errors();
  test_profile();
  test_grid();
  test_estimate();
  test_command();
  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  printf("capi: all tests passed\n");
  return 0;
}
