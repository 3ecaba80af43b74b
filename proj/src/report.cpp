#include "anitm/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace anitm {

namespace {

using nlohmann::ordered_json;

// NaN and infinities become null in JSON.
ordered_json num(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json nums(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

ordered_json profile_json(const RadialProfile& g) {
  return {{"radii", nums(g.radii())}, {"values", nums(g.values())}};
}

ordered_json params_json(const FunctionalParams& p) {
  return {{"n", p.n},       {"q", p.q}, {"p", p.p}, {"beta", p.beta}, {"lambda", p.lambda},
          {"a", p.a},       {"b", p.b}, {"variant", to_string(p.variant)}};
}

ordered_json stamp_json(const Stamp& s) { return {{"version", s.version}, {"config_hash", s.config_hash}}; }

}  // namespace

Stamp make_stamp(const std::string& config_hash) { return {ANITM_VERSION, config_hash}; }

std::string stamp_line(const Stamp& s) { return "# anitm " + s.version + " config " + s.config_hash + "\n"; }

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sweep_json(const SweepResult& r, const FunctionalParams& params, const Stamp& s) {
  const Threshold th = threshold_check(params);
  ordered_json j = stamp_json(s);
  j["params"] = params_json(params);
  j["lambda"] = r.lambda;
  j["t"] = nums(r.ts);
  j["bracket"] = nums(r.brackets);
  j["f"] = nums(r.f_estimates);
  j["f_spread"] = nums(r.f_spreads);
  j["product"] = nums(r.products);
  j["star_index"] = r.star_index;
  j["t_star"] = r.t_star;
  j["g_value"] = r.g_value;
  j["witness"] = profile_json(r.witnesses[r.star_index]);
  j["endpoints"] = {{"bracket_last_over_mid", num(r.endpoints.bracket_last_over_mid)},
                    {"product_first", num(r.endpoints.product_first)},
                    {"product_last", num(r.endpoints.product_last)},
                    {"decreasing_near_lambda", r.endpoints.decreasing_near_lambda},
                    {"increasing_near_zero", r.endpoints.increasing_near_zero}};
  j["threshold"] = {{"applicable", th.applicable}, {"value", num(th.threshold)}};
  j["verdict"] = attainment_verdict(params, r.g_value);
  return j.dump(2) + "\n";
}

std::string sweep_csv(const SweepResult& r, const Stamp& s) {
  std::ostringstream os;
  os << stamp_line(s) << "t,bracket,f,product\n";
  for (std::size_t k = 0; k < r.ts.size(); ++k)
    os << format_number(r.ts[k]) << ',' << format_number(r.brackets[k]) << ',' << format_number(r.f_estimates[k])
       << ',' << format_number(r.products[k]) << '\n';
  return os.str();
}

std::string maximizer_json(const MaximizerReport& r, const FunctionalParams& params, const Stamp& s) {
  ordered_json j = stamp_json(s);
  j["params"] = params_json(params);
  j["value"] = num(r.value);
  j["grad_norm"] = num(r.grad_norm);
  j["q_norm"] = num(r.q_norm);
  j["grad_norm_residual"] = num(r.grad_norm_residual);
  j["q_norm_residual"] = num(r.q_norm_residual);
  j["constraint_residual"] = num(r.constraint_residual);
  j["symmetry_residual"] = num(r.symmetry_residual);
  j["symmetry_tolerance"] = num(r.symmetry_tolerance);
  j["local_optimality_margin"] = num(r.local_optimality_margin);
  j["restart_values"] = nums(r.restart_values);
  j["spread"] = num(r.spread);
  j["profile"] = profile_json(r.profile);
  return j.dump(2) + "\n";
}

std::string restarts_csv(const std::vector<double>& values, const Stamp& s) {
  std::ostringstream os;
  os << stamp_line(s) << "restart,value\n";
  for (std::size_t i = 0; i < values.size(); ++i) os << i << ',' << format_number(values[i]) << '\n';
  return os.str();
}

}  // namespace anitm
