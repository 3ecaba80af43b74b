#include "anitm/checks.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "anitm/corpus.hpp"
#include "anitm/errors.hpp"
#include "anitm/functional.hpp"
#include "anitm/grid.hpp"
#include "anitm/maximize.hpp"
#include "anitm/rearrange.hpp"

namespace anitm {

namespace {

constexpr double kPi = std::numbers::pi;

// Keeps the worst case per quantity; slack < 0 is a failure.
class Tally {
 public:
  void le(const std::string& key, double value, double limit) { add(key, value, limit, limit - value, "<="); }
  void ge(const std::string& key, double value, double limit) { add(key, value, limit, value - limit, ">="); }
  void truth(const std::string& key, bool ok) { add(key, ok ? 1.0 : 0.0, 1.0, ok ? 0.0 : -1.0, "=="); }

  bool passed() const {
    for (const auto& e : entries_)
      if (!(e.slack >= 0.0)) return false;
    return true;
  }

  std::string detail() const {
    std::string out;
    char buf[160];
    for (const auto& e : entries_) {
      std::snprintf(buf, sizeof buf, "%s%s=%.3e %s %.3e", out.empty() ? "" : "; ", e.key.c_str(), e.value, e.op,
                    e.limit);
      out += buf;
    }
    return out;
  }

 private:
  struct Entry {
    std::string key;
    double value, limit, slack;
    const char* op;
  };

  void add(const std::string& key, double value, double limit, double slack, const char* op) {
    for (auto& e : entries_) {
      if (e.key != key) continue;
      if (!(slack >= e.slack)) e = {key, value, limit, slack, op};
      return;
    }
    entries_.push_back({key, value, limit, slack, op});
  }

  std::vector<Entry> entries_;
};

FinslerNorm ellipse_41() { return FinslerNorm::ellipse(2, {4.0, 0.0, 0.0, 1.0}); }

FunctionalParams reference_params(double beta, double q, const Anisotropy& aniso) {
  FunctionalParams p;
  p.n = aniso.dimension();
  p.q = q;
  p.p = q;
  p.beta = beta;
  p.lambda = 0.5 * aniso.sharp_constant();
  return p;
}

SearchConfig reference_search(const CheckOptions& o, int restarts) {
  SearchConfig c;
  c.restarts = restarts;
  c.seed = o.seed;
  c.threads = o.threads;
  return c;
}

double relative(double a, double b) { return std::abs(a - b) / std::abs(b); }

void geometry_anchors(Tally& t, const CheckOptions&) {
  t.le("kappa_euclidean", std::abs(Anisotropy(FinslerNorm::euclidean(2)).kappa() - kPi), 1e-6);
  t.le("kappa_ellipse_diag41", std::abs(Anisotropy(ellipse_41()).kappa() - 2.0 * kPi), 1e-6);
  t.le("kappa_max_gauge", std::abs(Anisotropy(max_gauge_2d()).kappa() - 2.0), 1e-6);
  t.le("lambda_euclidean", std::abs(Anisotropy(FinslerNorm::euclidean(2)).sharp_constant() - 4.0 * kPi), 1e-6);
}

void gauge_identities(Tally& t, const CheckOptions& o) {
  for (const FinslerNorm& f :
       {FinslerNorm::euclidean(2), FinslerNorm::pnorm(2, 4.0), ellipse_41(), smooth_sampled_gauge_2d()}) {
    const auto r = gauge_identity_residuals(Anisotropy(f), 1000, o.seed);
    t.le("triangle", std::max(r.triangle, r.reverse_triangle), 1e-6);
    t.le("euler", r.euler, 1e-6);
    t.le("sign_symmetry", r.sign_symmetry, 1e-6);
    t.le("dual_unit", r.dual_unit, 1e-6);
    t.le("inverse_map", r.inverse_map, 1e-6);
  }
  for (const FinslerNorm& f : {FinslerNorm::euclidean(2), ellipse_41(), max_gauge_2d()}) {
    const Anisotropy aniso(f);
    for (double r : {0.5, 1.0, 2.0}) t.le("coarea", coarea_surface_check(aniso, r), 1e-5);
  }
}

void symmetrization_suite(Tally& t, const CheckOptions&) {
  const double half = 3.0;
  const int m = 256;
  for (const FinslerNorm& f : {FinslerNorm::euclidean(2), ellipse_41(), max_gauge_2d()}) {
    const Anisotropy aniso(f);
    for (const auto& entry : corpus_2d()) {
      const GridFunction u = sample_2d(entry.f, half, m);
      const double eps = eps_disc(u.cell_size());
      const GridFunction us = convex_symmetrization(u, aniso);
      double gap = 0.0;
      for (double q : {1.0, 2.0, 3.0}) gap = std::max(gap, relative(us.lq_norm(q), u.lq_norm(q)));
      t.le("equimeasurability_over_eps", gap / eps, 1.0);
      const PolyaSzego ps = polya_szego_check(u, aniso);
      t.ge("polya_szego_over_eps", ps.gap / (eps * ps.energy_u), -1.0);
    }
    // Hardy-Littlewood against a non-symmetric and a Wulff-symmetric second argument.
    const GridFunction f1 = sample_2d(corpus_2d()[3].f, half, m);
    const double eps = eps_disc(f1.cell_size());
    const double epsq = eps_quad(f1.cell_size());
    for (const auto& entry : corpus_2d()) {
      const GridFunction g = sample_2d(entry.f, half, m);
      const HardyLittlewood hl = hardy_littlewood_check(f1, g, aniso);
      t.ge("hardy_littlewood_over_eps_quad", hl.gap / (epsq * hl.rhs), -1.0);
    }
    const GridFunction gs = GridFunction::sample(2, half, m, [&](std::span<const double> x) {
      const double r = aniso.polar()(x);
      return r < 1.0 ? std::exp(-r) : 0.0;
    });
    const GridFunction fs = GridFunction::sample(2, half, m, [&](std::span<const double> x) {
      return std::max(0.0, 1.2 - aniso.polar()(x));
    });
    const HardyLittlewood sym = hardy_littlewood_check(fs, gs, aniso);
    t.le("hl_equality_g_residual_over_eps", sym.g_distance_rel / eps, 1.0);
    t.le("hl_equality_gap_over_eps", std::abs(sym.gap) / (eps * sym.rhs), 1.0);
    const HardyLittlewood mixed = hardy_littlewood_check(f1, gs, aniso);
    t.ge("hl_symmetric_g_over_eps_quad", mixed.gap / (epsq * mixed.rhs), -1.0);
  }
}

// Relative gaps between the radial formulas and grid quadrature of u = g(F°).
struct OracleGaps {
  double lq, energy, atmsc;
  double h;
};

OracleGaps radial_grid_gaps(const RadialProfile& g, const Anisotropy& aniso, const FunctionalParams& p, int m) {
  double reach = 0.0;
  for (int i = 0; i < 2; ++i) {
    std::vector<double> e(2, 0.0);
    e[i] = 1.0;
    reach = std::max(reach, aniso.gauge()(e));
  }
  const double half = 1.25 * reach * g.support_radius();
  const GridFunction u = GridFunction::sample(2, half, m, [&](std::span<const double> x) { return g(aniso.polar()(x)); });
  const double cell = u.cell_volume();
  const double c = p.exponent_scale();
  const int j0 = series_start(p).j_start;
  double integral = 0.0;
  std::vector<double> x(2);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] <= 0.0) continue;
    u.center(i, x);
    integral += phi(j0, c * u[i] * u[i]) * std::pow(aniso.polar()(x), -p.beta) * cell;
  }
  return {relative(u.lq_norm(p.q), lq_norm_radial(g, p.q, aniso)),
          relative(grid_dirichlet_energy(u, aniso.gauge()), dirichlet_energy_radial(g, aniso)),
          relative(integral, atmsc_value(g, p, aniso)), u.cell_size()};
}

void radial_grid_oracle(Tally& t, const CheckOptions&) {
  const auto knots = uniform_knots(2048, 1.0);
  const std::vector<RadialProfile> profiles{
      RadialProfile::sample(knots, [](double r) { return 1.0 - r; }),
      RadialProfile::sample(knots, [](double r) { return (1.0 - r * r) * (1.0 - r * r); }),
  };
  for (const FinslerNorm& f : {FinslerNorm::euclidean(2), ellipse_41()}) {
    const Anisotropy aniso(f);
    const FunctionalParams p = reference_params(0.5, 2.0, aniso);
    for (const auto& g : profiles) {
      const OracleGaps a = radial_grid_gaps(g, aniso, p, 256);
      const OracleGaps b = radial_grid_gaps(g, aniso, p, 512);
      const double eps = eps_disc(a.h);
      const double worst256 = std::max({a.lq, a.energy, a.atmsc});
      const double worst512 = std::max({b.lq, b.energy, b.atmsc});
      t.le("gap_over_eps_M256", worst256 / eps, 1.0);
      t.ge("observed_order", std::log2(worst256 / worst512), 1.0);
    }
  }
}

// Random nonincreasing profile with geometric knots on [0, R].
RadialProfile random_profile(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> normal;
  const double radius = 0.5 + 1.5 * unif(rng);
  const auto knots = geometric_knots(24, 1e-3 * radius, radius);
  std::vector<double> v(knots.size(), 0.0);
  for (std::size_t k = knots.size() - 1; k-- > 0;) v[k] = v[k + 1] + std::exp(normal(rng)) * (knots[k + 1] - knots[k]);
  return RadialProfile(knots, std::move(v));
}

void normalization_properties(Tally& t, const CheckOptions& o) {
  const Anisotropy aniso(FinslerNorm::euclidean(2));
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> unif(0.2, 1.0);
  FunctionalParams p = reference_params(0.5, 2.0, aniso);
  for (int i = 0; i < 50; ++i) {
    RadialProfile g = random_profile(rng);
    // Ratio monotonicity under normalization needs ||F grad g||_N <= 1.
    g = g.scaled(unif(rng) / gradient_norm_radial(g, aniso));
    const RadialProfile v = normalize_sphere(g, p.q, aniso);
    t.le("normalized_grad_residual", std::abs(gradient_norm_radial(v, aniso) - 1.0), 1e-10);
    t.le("normalized_q_residual", std::abs(lq_norm_radial(v, p.q, aniso) - 1.0), 1e-10);
    for (Variant variant : {Variant::phi_series, Variant::exp_power}) {
      p.variant = variant;
      const double before = ratio_functional(g, p, aniso);
      t.ge("ratio_increase_rel", (ratio_functional(v, p, aniso) - before) / before, -1e-12);
    }
    p.variant = Variant::phi_series;

    RadialProfile h = random_profile(rng);
    const ConstraintScale first = constraint_scale(h, p.a, p.b, p.q, aniso);
    h = h.scaled(first.c * unif(rng));
    const ConstraintScale cs = constraint_scale(h, p.a, p.b, p.q, aniso);
    t.le("constraint_residual", std::abs(constraint_value(cs.scaled, p.a, p.b, p.q, aniso) - 1.0), 1e-12);
    t.truth("constraint_feasible", cs.feasible);
    const double before = critical_value(h, p, aniso);
    t.ge("critical_increase_rel", (critical_value(cs.scaled, p, aniso) - before) / before, -1e-12);
  }
}

void sweep_consistency(Tally& t, const CheckOptions& o) {
  const Anisotropy aniso(FinslerNorm::euclidean(2));
  const FunctionalParams p = reference_params(0.5, 2.0, aniso);
  const SearchConfig cfg = reference_search(o, 8);
  const SweepResult s = identity_sweep(p, aniso, 24, cfg);
  const MaximizerReport d = direct_critical_max(p, aniso, cfg);
  t.le("sweep_vs_direct_rel", relative(s.g_value, d.value), 0.05);
  const CriticalConstruction c = construct_critical_from_subcritical(s.t_star, s.witnesses[s.star_index], p, aniso);
  t.le("gamma_construction_rel", relative(c.value, s.g_value), 0.01);
  t.le("gamma_constraint_residual", c.constraint_residual, 1e-6);
}

void maximizer_checks(Tally& t, const CheckOptions& o) {
  const Anisotropy aniso(FinslerNorm::euclidean(2));
  const FunctionalParams p = reference_params(0.5, 2.0, aniso);
  const FEstimate e = estimate_f(p, aniso, reference_search(o, 8));
  DiagnosticsConfig dc;
  dc.seed = o.seed;
  const MaximizerReport r = maximizer_diagnostics(e.profile, p, aniso, Objective::subcritical, dc);
  t.le("grad_norm_residual", r.grad_norm_residual, 1e-8);
  t.le("local_optimality_margin_rel", r.local_optimality_margin / r.value, 1e-6);
  t.le("symmetry_residual_over_eps", r.symmetry_residual / r.symmetry_tolerance, 1.0);
}

void endpoint_behaviour(Tally& t, const CheckOptions& o) {
  const Anisotropy aniso(FinslerNorm::euclidean(2));
  const SearchConfig cfg = reference_search(o, 4);
  const int grid = 16;
  const int quarter = grid / 4;
  for (const auto& [beta, q] : std::vector<std::pair<double, double>>{{0.5, 2.0}, {0.0, 2.0}, {0.0, 3.0}}) {
    const FunctionalParams p = reference_params(beta, q, aniso);
    const SweepResult s = identity_sweep(p, aniso, grid, cfg);
    t.truth("decreasing_near_lambda", s.endpoints.decreasing_near_lambda);
    t.le("product_last_over_g", s.endpoints.product_last / s.g_value, 1e-2);
    if (beta > 0.0) {
      t.truth("increasing_near_zero", s.endpoints.increasing_near_zero);
      const double slope = std::log(s.products[1] / s.products[0]) / std::log(s.ts[1] / s.ts[0]);
      t.ge("log_slope_near_zero", slope, 0.1);
      t.le("product_first_over_g", s.endpoints.product_first / s.g_value, 0.1);
    }
    const Threshold th = threshold_check(p);
    if (th.applicable) {
      double head = 0.0;
      for (int k = 0; k < quarter; ++k) head = std::max(head, s.products[k]);
      t.le("products_near_zero_over_threshold", head / th.threshold, 1.05);
    }
  }
}

void continuity_probe(Tally& t, const CheckOptions& o) {
  const Anisotropy aniso(FinslerNorm::euclidean(2));
  FunctionalParams p = reference_params(0.5, 2.0, aniso);
  p.variant = Variant::phi_series;
  const SearchConfig cfg = reference_search(o, 8);
  const double lambda = p.lambda;
  const FEstimate mid = estimate_f(p, aniso, cfg);
  for (double shift : {-0.01, 0.01}) {
    p.lambda = lambda * (1.0 + shift);
    const FEstimate e = estimate_f(p, aniso, cfg);
    const double allowance = 2.0 * std::max(e.spread, mid.spread) + 0.05 * mid.value;
    t.le("continuity_gap_over_allowance", std::abs(e.value - mid.value) / allowance, 1.0);
  }
}

struct CheckDef {
  const char* name;
  double time_limit;
  void (*run)(Tally&, const CheckOptions&);
};

const CheckDef kChecks[] = {
    {"geometry anchors", 1.0, geometry_anchors},
    {"gauge identities", 5.0, gauge_identities},
    {"symmetrization suite", 120.0, symmetrization_suite},
    {"radial-grid oracle", 60.0, radial_grid_oracle},
    {"normalization properties", 30.0, normalization_properties},
    {"sweep consistency", 600.0, sweep_consistency},
    {"maximizer diagnostics", 300.0, maximizer_checks},
    {"endpoint behaviour", 600.0, endpoint_behaviour},
    {"continuity probe", 600.0, continuity_probe},
};

}  // namespace

FinslerNorm max_gauge_2d(int directions) {
  std::vector<double> th, v;
  for (int i = 0; i < directions; ++i) {
    const double a = 2.0 * kPi * i / directions;
    th.push_back(a);
    v.push_back(std::max(std::abs(std::cos(a)), std::abs(std::sin(a))));
  }
  return FinslerNorm::sampled_2d(th, v, Interpolation::polygon);
}

FinslerNorm smooth_sampled_gauge_2d(int directions) {
  std::vector<double> th, v;
  for (int i = 0; i < directions; ++i) {
    const double a = 2.0 * kPi * i / directions;
    const double c = std::cos(a), s = std::sin(a);
    th.push_back(a);
    v.push_back(std::sqrt(2.0 * c * c + s * s) + 0.5 * std::sqrt(c * c + c * s + 2.0 * s * s));
  }
  return FinslerNorm::sampled_2d(th, v, Interpolation::cubic);
}

int check_count() { return static_cast<int>(std::size(kChecks)); }

std::string check_name(int id) {
  if (id < 1 || id > check_count()) throw ValidationError("check id out of range: " + std::to_string(id));
  return kChecks[id - 1].name;
}

CheckResult run_check(int id, const CheckOptions& options) {
  if (id < 1 || id > check_count()) return {id, "", false, "unknown check", 0.0, 0.0};
  const CheckDef& def = kChecks[id - 1];
  CheckResult res{id, def.name, false, "", 0.0, def.time_limit};
  const auto start = std::chrono::steady_clock::now();
  Tally tally;
  try {
    def.run(tally, options);
    res.passed = tally.passed();
    res.detail = tally.detail();
  } catch (const std::exception& e) {
    res.detail = std::string("error: ") + e.what();
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (res.seconds > res.time_limit) {
    res.passed = false;
    res.detail += "; runtime exceeded";
  }
  return res;
}

}  // namespace anitm
