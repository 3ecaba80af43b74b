#include "anitm/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "anitm/checks.hpp"
#include "anitm/config.hpp"
#include "anitm/errors.hpp"
#include "anitm/grid.hpp"
#include "anitm/rearrange.hpp"
#include "anitm/report.hpp"

namespace anitm {

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Run {
  RunConfig config;
  Stamp stamp;
  fs::path dir;
};

Run prepare(const std::string& config_json, const CommandOptions& o) {
  Run r{parse_run_config(config_json), {}, {}};
  if (o.seed) r.config.search.seed = *o.seed;
  r.config.search.threads = std::max(1, o.threads);
  r.stamp = make_stamp(r.config.hash());
  r.dir = !o.out_dir.empty() ? fs::path(o.out_dir) : !r.config.output.empty() ? fs::path(r.config.output) : fs::path(".");
  std::error_code ec;
  fs::create_directories(r.dir, ec);
  if (ec) throw IoError("cannot create output directory " + r.dir.string() + ": " + ec.message());
  return r;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failed: " + path.string());
}

ordered_json stamp_json(const Stamp& s) { return {{"version", s.version}, {"config_hash", s.config_hash}}; }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

CommandOutcome geometry(const Run& run) {
  const Anisotropy aniso(run.config.gauge);
  ordered_json j = stamp_json(run.stamp);
  j["gauge"] = run.config.gauge.describe();
  j["dimension"] = aniso.dimension();
  j["kappa"] = aniso.kappa();
  j["lambda_N"] = aniso.sharp_constant();
  j["norm_bounds"] = {run.config.gauge.lower_bound(), run.config.gauge.upper_bound()};
  j["bipolar_residual"] = bipolar_residual(run.config.gauge, 1000, run.config.search.seed);
  ordered_json coarea = ordered_json::object();
  for (double r : {0.5, 1.0, 2.0}) coarea[fmt(r)] = coarea_surface_check(aniso, r);
  j["coarea_residuals"] = coarea;
  write_file(run.dir / "geometry.json", j.dump(2) + "\n");
  return {0, "kappa = " + fmt(aniso.kappa()) + "\nlambda_N = " + fmt(aniso.sharp_constant()) + "\nwrote " +
                 (run.dir / "geometry.json").string() + "\n"};
}

CommandOutcome symmetrize(const Run& run, const CommandOptions& o) {
  if (o.input.empty()) throw ValidationError("symmetrize: an input grid file is required");
  const Anisotropy aniso(run.config.gauge);
  const GridFunction u = load_grid(o.input);
  if (u.dimension() != aniso.dimension())
    throw ValidationError("symmetrize: grid dimension " + std::to_string(u.dimension()) +
                          " does not match params.n = " + std::to_string(aniso.dimension()));
  const double h = u.cell_size();
  const double eps = eps_disc(h);
  const GridFunction us = convex_symmetrization(u, aniso);
  const RadialProfile g = profile_of(us, aniso);

  ordered_json j = stamp_json(run.stamp);
  j["eps_disc"] = eps;
  j["eps_quad"] = eps_quad(h);
  ordered_json eq = ordered_json::object();
  double worst = 0.0;
  for (double q : {1.0, 2.0, 3.0}) {
    const double a = u.lq_norm(q), b = us.lq_norm(q);
    const double gap = a > 0.0 ? std::abs(a - b) / a : std::abs(b);
    worst = std::max(worst, gap);
    eq["lq_gap_q" + fmt(q)] = gap;
  }
  eq["max_gap"] = worst;
  eq["within_eps"] = worst <= eps;
  j["equimeasurability"] = eq;
  const PolyaSzego ps = polya_szego_check(u, aniso);
  const double ps_rel = ps.energy_u > 0.0 ? ps.gap / ps.energy_u : 0.0;
  j["polya_szego"] = {{"energy_u", ps.energy_u},
                      {"energy_ustar", ps.energy_ustar},
                      {"gap", ps.gap},
                      {"relative_gap", ps_rel},
                      {"within_eps", ps_rel >= -eps}};
  const double residual = symmetry_residual(u, aniso);
  j["symmetry_residual"] = residual;
  j["fixed_point"] = residual <= eps;
  if (!o.second_input.empty()) {
    const GridFunction v = load_grid(o.second_input);
    if (!v.same_grid(u)) throw ValidationError("symmetrize: second grid differs from the first");
    const HardyLittlewood hl = hardy_littlewood_check(u, v, aniso);
    const double rel = hl.rhs > 0.0 ? hl.gap / hl.rhs : 0.0;
    j["hardy_littlewood"] = {{"lhs", hl.lhs},
                             {"rhs", hl.rhs},
                             {"gap", hl.gap},
                             {"relative_gap", rel},
                             {"within_eps_quad", rel >= -eps_quad(h)},
                             {"second_symmetry_residual", hl.g_distance_rel},
                             {"second_is_symmetric", hl.g_distance_rel <= eps}};
  }
  write_file(run.dir / "u_star.txt", stamp_line(run.stamp) + write_grid_text(us));
  write_file(run.dir / "profile.txt", stamp_line(run.stamp) + write_profile_text(g, aniso.dimension()));
  write_file(run.dir / "checks.json", j.dump(2) + "\n");
  std::string s = "equimeasurability gap = " + fmt(worst) + " (eps_disc = " + fmt(eps) + ")\n";
  s += "polya-szego relative gap = " + fmt(ps_rel) + "\n";
  s += std::string("fixed point: ") + (residual <= eps ? "true" : "false") + "\n";
  s += "wrote " + run.dir.string() + "/{u_star.txt,profile.txt,checks.json}\n";
  return {0, s};
}

CommandOutcome maximize(const Run& run) {
  const Anisotropy aniso(run.config.gauge);
  const FunctionalParams& p = run.config.params;
  DiagnosticsConfig dc;
  dc.grid_resolution = aniso.dimension() <= 3 ? run.config.grid_m : 0;
  dc.perturbations = run.config.perturbations;
  dc.seed = run.config.search.seed;
  const MaximizerReport rep = [&] {
    if (run.config.objective == Objective::critical) return direct_critical_max(p, aniso, run.config.search, dc);
    const FEstimate e = estimate_f(p, aniso, run.config.search);
    MaximizerReport r = maximizer_diagnostics(e.profile, p, aniso, Objective::subcritical, dc);
    r.value = e.value;
    r.restart_values = e.restart_values;
    r.spread = e.spread;
    return r;
  }();
  write_file(run.dir / "maximizer.json", maximizer_json(rep, p, run.stamp));
  write_file(run.dir / "profile.txt", stamp_line(run.stamp) + write_profile_text(rep.profile, aniso.dimension()));
  write_file(run.dir / "restarts.csv", restarts_csv(rep.restart_values, run.stamp));
  std::string s = "value = " + fmt(rep.value) + " (restart spread " + fmt(rep.spread) + ")\n";
  s += "grad_norm_residual = " + fmt(rep.grad_norm_residual) + "\n";
  s += "local_optimality_margin = " + fmt(rep.local_optimality_margin) + "\n";
  s += "wrote " + run.dir.string() + "/{maximizer.json,profile.txt,restarts.csv}\n";
  return {0, s};
}

CommandOutcome sweep(const Run& run) {
  const Anisotropy aniso(run.config.gauge);
  const FunctionalParams& p = run.config.params;
  const SweepResult r = identity_sweep(p, aniso, run.config.grid_size, run.config.search);
  const Threshold th = threshold_check(p);
  const std::string verdict = attainment_verdict(p, r.g_value);
  std::string line = "verdict: " + verdict + " (g_value = " + fmt(r.g_value);
  line += th.applicable ? ", threshold = " + fmt(th.threshold) + ")" : ", threshold not applicable)";
  write_file(run.dir / "sweep.json", sweep_json(r, p, run.stamp));
  write_file(run.dir / "sweep.csv", sweep_csv(r, run.stamp));
  write_file(run.dir / "verdict.txt", stamp_line(run.stamp) + line + "\n");
  std::string s = "t_star = " + fmt(r.t_star) + "\n" + line + "\n";
  s += "wrote " + run.dir.string() + "/{sweep.json,sweep.csv,verdict.txt}\n";
  return {0, s};
}

CommandOutcome check(const std::string& config_json, const CommandOptions& o) {
  CheckOptions co;
  co.threads = std::max(1, o.threads);
  std::string hash = "none";
  fs::path dir = o.out_dir.empty() ? fs::path(".") : fs::path(o.out_dir);
  if (!config_json.empty()) {
    const Run run = prepare(config_json, o);
    co.seed = run.config.search.seed;
    hash = run.stamp.config_hash;
    dir = run.dir;
  } else {
    if (o.seed) co.seed = *o.seed;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  }
  std::vector<int> ids = o.only;
  if (ids.empty())
    for (int i = 1; i <= check_count(); ++i) ids.push_back(i);
  for (int id : ids)
    if (id < 1 || id > check_count()) throw ValidationError("check: unknown check id " + std::to_string(id));

  ordered_json j = stamp_json(make_stamp(hash));
  j["seed"] = co.seed;
  j["checks"] = ordered_json::array();
  std::string s;
  int status = 0;
  for (int id : ids) {
    const CheckResult r = run_check(id, co);
    if (!r.passed) status = 1;
    j["checks"].push_back({{"id", r.id},
                           {"name", r.name},
                           {"passed", r.passed},
                           {"seconds", r.seconds},
                           {"time_limit", r.time_limit},
                           {"detail", r.detail}});
    char head[128];
    std::snprintf(head, sizeof head, "[%s] %d %s (%.1f s): ", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                  r.seconds);
    s += head + r.detail + "\n";
  }
  write_file(dir / "check.json", j.dump(2) + "\n");
  return {status, s};
}

}  // namespace

std::vector<std::string> command_names() { return {"geometry", "symmetrize", "maximize", "sweep", "check"}; }

CommandOutcome run_command(const std::string& name, const std::string& config_json, const CommandOptions& options) {
  if (name == "check") return check(config_json, options);
  if (name == "geometry") return geometry(prepare(config_json, options));
  if (name == "symmetrize") return symmetrize(prepare(config_json, options), options);
  if (name == "maximize") return maximize(prepare(config_json, options));
  if (name == "sweep") return sweep(prepare(config_json, options));
  throw ValidationError("unknown command: " + name);
}

}  // namespace anitm
