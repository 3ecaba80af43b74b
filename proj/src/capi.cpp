#include "anitm/anitm.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <span>
#include <string>
#include <vector>

#include "anitm/commands.hpp"
#include "anitm/config.hpp"
#include "anitm/errors.hpp"
#include "anitm/grid.hpp"
#include "anitm/maximize.hpp"
#include "anitm/rearrange.hpp"

struct anitm_gauge {
  anitm::Anisotropy aniso;
};

struct anitm_grid {
  anitm::GridFunction u;
};

struct anitm_profile {
  anitm::RadialProfile g;
};

namespace {

thread_local std::string last_error;

template <class Fn>
int guarded(Fn&& fn) {
  try {
    last_error.clear();
    return fn();
  } catch (const anitm::Error& e) {
    last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return ANITM_ERR_INTERNAL;
}

void require(const void* p, const char* what) {
  if (!p) throw anitm::ValidationError(std::string("null argument: ") + what);
}

anitm::FunctionalParams to_params(const anitm_params* p) {
  require(p, "params");
  anitm::FunctionalParams out;
  out.n = p->n;
  out.q = p->q;
  out.p = p->p;
  out.beta = p->beta;
  out.lambda = p->lambda;
  out.a = p->a;
  out.b = p->b;
  if (p->variant != ANITM_EXP_POWER && p->variant != ANITM_PHI_SERIES)
    throw anitm::ValidationError("params: unknown variant");
  out.variant = p->variant == ANITM_EXP_POWER ? anitm::Variant::exp_power : anitm::Variant::phi_series;
  return out;
}

}  // namespace

extern "C" {

const char* anitm_version(void) { return ANITM_VERSION; }

const char* anitm_last_error(void) { return last_error.c_str(); }

void anitm_params_default(anitm_params* out) {
  if (!out) return;
  const anitm::FunctionalParams p;
  *out = {p.n, p.q, p.p, p.beta, p.lambda, p.a, p.b, ANITM_PHI_SERIES};
}

void anitm_search_default(anitm_search* out) {
  if (!out) return;
  const anitm::SearchConfig c;
  *out = {c.knots, c.radius, c.r_min, c.restarts, c.budget, c.seed, c.threads};
}

void anitm_command_options_default(anitm_command_options* out) {
  if (!out) return;
  *out = {nullptr, nullptr, nullptr, 0, 0, 1, nullptr, 0};
}

int anitm_gauge_from_json(const char* spec, int dimension, anitm_gauge** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    *out = new anitm_gauge{anitm::Anisotropy(anitm::gauge_from_json(spec, dimension))};
    return ANITM_OK;
  });
}

void anitm_gauge_free(anitm_gauge* g) { delete g; }

int anitm_gauge_dimension(const anitm_gauge* g) { return g ? g->aniso.dimension() : 0; }

int anitm_gauge_kappa(const anitm_gauge* g, double* out) {
  return guarded([&] {
    require(g, "gauge");
    require(out, "out");
    *out = g->aniso.kappa();
    return ANITM_OK;
  });
}

int anitm_gauge_sharp_constant(const anitm_gauge* g, double* out) {
  return guarded([&] {
    require(g, "gauge");
    require(out, "out");
    *out = g->aniso.sharp_constant();
    return ANITM_OK;
  });
}

int anitm_gauge_eval(const anitm_gauge* g, const double* x, double* out) {
  return guarded([&] {
    require(g, "gauge");
    require(x, "x");
    require(out, "out");
    *out = g->aniso.gauge()(std::span<const double>(x, g->aniso.dimension()));
    return ANITM_OK;
  });
}

int anitm_gauge_eval_polar(const anitm_gauge* g, const double* x, double* out) {
  return guarded([&] {
    require(g, "gauge");
    require(x, "x");
    require(out, "out");
    *out = g->aniso.polar()(std::span<const double>(x, g->aniso.dimension()));
    return ANITM_OK;
  });
}

int anitm_grid_create(int dimension, double half_width, int resolution, const double* values, anitm_grid** out) {
  return guarded([&] {
    require(values, "values");
    require(out, "out");
    if (dimension != 2 && dimension != 3) throw anitm::ValidationError("grid: dimension must be 2 or 3");
    if (resolution < 3 || resolution > 4096) throw anitm::ValidationError("grid: resolution out of range");
    std::size_t count = 1;
    for (int d = 0; d < dimension; ++d) count *= static_cast<std::size_t>(resolution);
    *out = new anitm_grid{anitm::GridFunction(dimension, half_width, resolution,
                                              std::vector<double>(values, values + count))};
    return ANITM_OK;
  });
}

int anitm_grid_load(const char* path, anitm_grid** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new anitm_grid{anitm::load_grid(path)};
    return ANITM_OK;
  });
}

int anitm_grid_save(const anitm_grid* u, const char* path) {
  return guarded([&] {
    require(u, "grid");
    require(path, "path");
    anitm::save_grid(u->u, path);
    return ANITM_OK;
  });
}

void anitm_grid_free(anitm_grid* u) { delete u; }

size_t anitm_grid_size(const anitm_grid* u) { return u ? u->u.size() : 0; }

const double* anitm_grid_values(const anitm_grid* u) { return u ? u->u.values().data() : nullptr; }

int anitm_grid_symmetrize(const anitm_grid* u, const anitm_gauge* g, anitm_grid** out) {
  return guarded([&] {
    require(u, "grid");
    require(g, "gauge");
    require(out, "out");
    *out = new anitm_grid{anitm::convex_symmetrization(u->u, g->aniso)};
    return ANITM_OK;
  });
}

int anitm_grid_symmetry_residual(const anitm_grid* u, const anitm_gauge* g, double* out) {
  return guarded([&] {
    require(u, "grid");
    require(g, "gauge");
    require(out, "out");
    *out = anitm::symmetry_residual(u->u, g->aniso);
    return ANITM_OK;
  });
}

int anitm_profile_create(const double* radii, const double* values, size_t count, anitm_profile** out) {
  return guarded([&] {
    require(radii, "radii");
    require(values, "values");
    require(out, "out");
    *out = new anitm_profile{
        anitm::RadialProfile(std::vector<double>(radii, radii + count), std::vector<double>(values, values + count))};
    return ANITM_OK;
  });
}

int anitm_profile_load(const char* path, anitm_profile** out, int* dimension) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new anitm_profile{anitm::load_profile(path, dimension)};
    return ANITM_OK;
  });
}

int anitm_profile_save(const anitm_profile* g, int dimension, const char* path) {
  return guarded([&] {
    require(g, "profile");
    require(path, "path");
    anitm::save_profile(g->g, dimension, path);
    return ANITM_OK;
  });
}

void anitm_profile_free(anitm_profile* g) { delete g; }

size_t anitm_profile_size(const anitm_profile* g) { return g ? g->g.radii().size() : 0; }

const double* anitm_profile_radii(const anitm_profile* g) { return g ? g->g.radii().data() : nullptr; }

const double* anitm_profile_values(const anitm_profile* g) { return g ? g->g.values().data() : nullptr; }

int anitm_ratio_functional(const anitm_profile* g, const anitm_params* p, const anitm_gauge* gauge, double* out) {
  return guarded([&] {
    require(g, "profile");
    require(gauge, "gauge");
    require(out, "out");
    const auto params = to_params(p);
    params.validate(gauge->aniso.sharp_constant());
    *out = anitm::ratio_functional(g->g, params, gauge->aniso);
    return ANITM_OK;
  });
}

int anitm_critical_value(const anitm_profile* g, const anitm_params* p, const anitm_gauge* gauge, double* out) {
  return guarded([&] {
    require(g, "profile");
    require(gauge, "gauge");
    require(out, "out");
    const auto params = to_params(p);
    params.validate(gauge->aniso.sharp_constant());
    *out = anitm::critical_value(g->g, params, gauge->aniso);
    return ANITM_OK;
  });
}

int anitm_normalize_sphere(const anitm_profile* g, double q, const anitm_gauge* gauge, anitm_profile** out) {
  return guarded([&] {
    require(g, "profile");
    require(gauge, "gauge");
    require(out, "out");
    *out = new anitm_profile{anitm::normalize_sphere(g->g, q, gauge->aniso)};
    return ANITM_OK;
  });
}

int anitm_estimate_f(const anitm_params* p, const anitm_gauge* gauge, const anitm_search* search, double* value,
                     double* spread, anitm_profile** witness) {
  return guarded([&] {
    require(gauge, "gauge");
    require(search, "search");
    require(value, "value");
    anitm::SearchConfig cfg;
    cfg.knots = search->knots;
    cfg.radius = search->radius;
    cfg.r_min = search->r_min;
    cfg.restarts = search->restarts;
    cfg.budget = search->budget;
    cfg.seed = search->seed;
    cfg.threads = search->threads;
    const anitm::FEstimate e = anitm::estimate_f(to_params(p), gauge->aniso, cfg);
    *value = e.value;
    if (spread) *spread = e.spread;
    if (witness) *witness = new anitm_profile{e.profile};
    return ANITM_OK;
  });
}

int anitm_run_command(const char* name, const char* config_json, const anitm_command_options* options,
                      char** summary) {
  if (summary) *summary = nullptr;
  return guarded([&] {
    require(name, "name");
    anitm::CommandOptions o;
    if (options) {
      if (options->out_dir) o.out_dir = options->out_dir;
      if (options->input) o.input = options->input;
      if (options->second_input) o.second_input = options->second_input;
      if (options->has_seed) o.seed = options->seed;
      o.threads = options->threads;
      if (options->only) o.only.assign(options->only, options->only + options->only_count);
    }
    const anitm::CommandOutcome r = anitm::run_command(name, config_json ? config_json : "", o);
    if (summary) {
      char* s = static_cast<char*>(std::malloc(r.summary.size() + 1));
      if (!s) throw std::bad_alloc();
      std::memcpy(s, r.summary.c_str(), r.summary.size() + 1);
      *summary = s;
    }
    return r.status;
  });
}

void anitm_string_free(char* s) { std::free(s); }

}  // extern "C"
