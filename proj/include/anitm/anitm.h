#ifndef ANITM_H
#define ANITM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ANITM_API __declspec(dllexport)
#else
#define ANITM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Return codes. The nonzero error codes match the CLI exit codes. */
enum {
  ANITM_OK = 0,
  ANITM_CHECK_FAILED = 1,
  ANITM_ERR_VALIDATION = 2,
  ANITM_ERR_OVERFLOW = 3,
  ANITM_ERR_IO = 4,
  ANITM_ERR_DOMAIN = 5,
  ANITM_ERR_INTERNAL = 6
};

enum { ANITM_EXP_POWER = 0, ANITM_PHI_SERIES = 1 };

typedef struct anitm_gauge anitm_gauge;
typedef struct anitm_grid anitm_grid;
typedef struct anitm_profile anitm_profile;

typedef struct {
  int n;
  double q;
  double p;
  double beta;
  double lambda;
  double a;
  double b;
  int variant;
} anitm_params;

typedef struct {
  int knots;
  double radius;
  double r_min;
  int restarts;
  int budget;
  uint64_t seed;
  int threads;
} anitm_search;

typedef struct {
  const char* out_dir;       /* NULL: config "output" or "." */
  const char* input;         /* symmetrize input grid */
  const char* second_input;  /* optional second grid */
  int has_seed;
  uint64_t seed;
  int threads;
  const int* only;           /* check ids, NULL for all */
  size_t only_count;
} anitm_command_options;

ANITM_API const char* anitm_version(void);
/* Message of the last failed call on this thread; empty when none. */
ANITM_API const char* anitm_last_error(void);

ANITM_API void anitm_params_default(anitm_params* out);
ANITM_API void anitm_search_default(anitm_search* out);
ANITM_API void anitm_command_options_default(anitm_command_options* out);

/* Gauge from a JSON spec such as {"kind":"ellipse","matrix":[[4,0],[0,1]]}. */
ANITM_API int anitm_gauge_from_json(const char* spec, int dimension, anitm_gauge** out);
ANITM_API void anitm_gauge_free(anitm_gauge* g);
ANITM_API int anitm_gauge_dimension(const anitm_gauge* g);
ANITM_API int anitm_gauge_kappa(const anitm_gauge* g, double* out);
ANITM_API int anitm_gauge_sharp_constant(const anitm_gauge* g, double* out);
ANITM_API int anitm_gauge_eval(const anitm_gauge* g, const double* x, double* out);
ANITM_API int anitm_gauge_eval_polar(const anitm_gauge* g, const double* x, double* out);

ANITM_API int anitm_grid_create(int dimension, double half_width, int resolution, const double* values,
                                anitm_grid** out);
ANITM_API int anitm_grid_load(const char* path, anitm_grid** out);
ANITM_API int anitm_grid_save(const anitm_grid* u, const char* path);
ANITM_API void anitm_grid_free(anitm_grid* u);
ANITM_API size_t anitm_grid_size(const anitm_grid* u);
ANITM_API const double* anitm_grid_values(const anitm_grid* u);
ANITM_API int anitm_grid_symmetrize(const anitm_grid* u, const anitm_gauge* g, anitm_grid** out);
ANITM_API int anitm_grid_symmetry_residual(const anitm_grid* u, const anitm_gauge* g, double* out);

ANITM_API int anitm_profile_create(const double* radii, const double* values, size_t count, anitm_profile** out);
ANITM_API int anitm_profile_load(const char* path, anitm_profile** out, int* dimension);
ANITM_API int anitm_profile_save(const anitm_profile* g, int dimension, const char* path);
ANITM_API void anitm_profile_free(anitm_profile* g);
ANITM_API size_t anitm_profile_size(const anitm_profile* g);
ANITM_API const double* anitm_profile_radii(const anitm_profile* g);
ANITM_API const double* anitm_profile_values(const anitm_profile* g);

ANITM_API int anitm_ratio_functional(const anitm_profile* g, const anitm_params* p, const anitm_gauge* gauge,
                                     double* out);
ANITM_API int anitm_critical_value(const anitm_profile* g, const anitm_params* p, const anitm_gauge* gauge,
                                   double* out);
ANITM_API int anitm_normalize_sphere(const anitm_profile* g, double q, const anitm_gauge* gauge, anitm_profile** out);
ANITM_API int anitm_estimate_f(const anitm_params* p, const anitm_gauge* gauge, const anitm_search* search,
                               double* value, double* spread, anitm_profile** witness);

/* Runs a CLI subcommand. `summary` (may be NULL) receives text to free with anitm_string_free. */
ANITM_API int anitm_run_command(const char* name, const char* config_json, const anitm_command_options* options,
                                char** summary);
ANITM_API void anitm_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
