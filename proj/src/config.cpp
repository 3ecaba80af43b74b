#include "anitm/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "anitm/errors.hpp"

namespace anitm {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ValidationError("config: " + field + ": " + what);
}

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) fail(where.empty() ? it.key() : where + "." + it.key(), "unknown field");
  }
}

const json& object_at(const json& j, const char* key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_object()) fail(where, "expected an object");
  return v;
}

double number(const json& j, const char* key, const std::string& where, double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) fail(where + "." + key, "expected a number");
  return v.get<double>();
}

long long integer(const json& j, const char* key, const std::string& where, long long fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer() && !v.is_number_unsigned()) fail(where + "." + key, "expected an integer");
  return v.get<long long>();
}

std::vector<double> numbers(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) fail(where, "expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

FinslerNorm gauge_from(const json& g, int dimension) {
  if (!g.is_object()) fail("gauge", "expected an object");
  if (!g.contains("kind") || !g.at("kind").is_string()) fail("gauge.kind", "missing or not a string");
  const std::string kind = g.at("kind").get<std::string>();
  if (g.contains("dimension") && integer(g, "dimension", "gauge", 0) != dimension)
    fail("gauge.dimension", "does not match params.n = " + std::to_string(dimension));
  try {
    if (kind == "euclidean") {
      check_keys(g, "gauge", {"kind", "dimension"});
      return FinslerNorm::euclidean(dimension);
    }
    if (kind == "pnorm") {
      check_keys(g, "gauge", {"kind", "dimension", "p"});
      if (!g.contains("p")) fail("gauge.p", "missing");
      return FinslerNorm::pnorm(dimension, number(g, "p", "gauge", 0.0));
    }
    if (kind == "ellipse") {
      check_keys(g, "gauge", {"kind", "dimension", "matrix"});
      if (!g.contains("matrix") || !g.at("matrix").is_array()) fail("gauge.matrix", "missing or not an array");
      const json& rows = g.at("matrix");
      if (static_cast<int>(rows.size()) != dimension) fail("gauge.matrix", "expected " + std::to_string(dimension) + " rows");
      std::vector<double> m;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto row = numbers(rows[i], "gauge.matrix[" + std::to_string(i) + "]");
        if (static_cast<int>(row.size()) != dimension)
          fail("gauge.matrix[" + std::to_string(i) + "]", "expected " + std::to_string(dimension) + " entries");
        m.insert(m.end(), row.begin(), row.end());
      }
      return FinslerNorm::ellipse(dimension, std::move(m));
    }
    if (kind == "sampled") {
      if (dimension == 2) {
        check_keys(g, "gauge", {"kind", "dimension", "thetas", "values", "interpolation"});
        if (!g.contains("thetas")) fail("gauge.thetas", "missing");
        if (!g.contains("values")) fail("gauge.values", "missing");
        Interpolation rule = Interpolation::cubic;
        if (g.contains("interpolation")) {
          const json& r = g.at("interpolation");
          if (r == "cubic")
            rule = Interpolation::cubic;
          else if (r == "polygon")
            rule = Interpolation::polygon;
          else
            fail("gauge.interpolation", "expected \"cubic\" or \"polygon\"");
        }
        return FinslerNorm::sampled_2d(numbers(g.at("thetas"), "gauge.thetas"), numbers(g.at("values"), "gauge.values"),
                                       rule);
      }
      check_keys(g, "gauge", {"kind", "dimension", "n_theta", "n_phi", "values"});
      if (!g.contains("values")) fail("gauge.values", "missing");
      return FinslerNorm::sampled_3d(static_cast<int>(integer(g, "n_theta", "gauge", 0)),
                                     static_cast<int>(integer(g, "n_phi", "gauge", 0)),
                                     numbers(g.at("values"), "gauge.values"));
    }
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    if (what.rfind("config: ", 0) == 0) throw;
    fail("gauge", what);
  }
  fail("gauge.kind", "unknown kind \"" + kind + "\" (expected euclidean, pnorm, ellipse or sampled)");
}

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

FinslerNorm gauge_from_json(const std::string& json_text, int dimension) {
  return gauge_from(parse_json(json_text, "gauge json"), dimension);
}

RunConfig parse_run_config(const std::string& json_text) {
  const json root = parse_json(json_text, "config");
  if (!root.is_object()) fail("(root)", "expected an object");
  check_keys(root, "", {"gauge", "params", "grid", "search", "output"});
  RunConfig c;

  const json empty = json::object();
  const json& p = root.contains("params") ? object_at(root, "params", "params") : empty;
  check_keys(p, "params", {"n", "q", "p", "beta", "lambda", "lambda_fraction", "a", "b", "variant"});
  FunctionalParams& fp = c.params;
  fp.n = static_cast<int>(integer(p, "n", "params", 2));
  if (fp.n != 2 && fp.n != 3) fail("params.n", "must be 2 or 3");
  fp.q = number(p, "q", "params", 2.0);
  fp.p = number(p, "p", "params", fp.q);
  fp.beta = number(p, "beta", "params", 0.0);
  fp.a = number(p, "a", "params", 2.0);
  fp.b = number(p, "b", "params", 2.0);
  if (p.contains("variant")) {
    if (!p.at("variant").is_string()) fail("params.variant", "expected a string");
    try {
      fp.variant = variant_from_string(p.at("variant").get<std::string>());
    } catch (const ValidationError& e) {
      fail("params.variant", e.what());
    }
  }

  if (!root.contains("gauge")) fail("gauge", "missing");
  c.gauge = gauge_from(root.at("gauge"), fp.n);
  c.gauge_json = root.at("gauge").dump();
  const Anisotropy aniso(c.gauge);

  if (p.contains("lambda") && p.contains("lambda_fraction")) fail("params.lambda", "give lambda or lambda_fraction, not both");
  if (p.contains("lambda_fraction")) {
    c.lambda_fraction = number(p, "lambda_fraction", "params", 0.0);
    if (!(c.lambda_fraction >= 0.0 && c.lambda_fraction < 1.0)) fail("params.lambda_fraction", "must lie in [0, 1)");
    fp.lambda = c.lambda_fraction * aniso.sharp_constant();
  } else {
    fp.lambda = number(p, "lambda", "params", 0.5 * aniso.sharp_constant());
  }
  try {
    fp.validate(aniso.sharp_constant());
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }

  if (root.contains("grid")) {
    const json& g = object_at(root, "grid", "grid");
    check_keys(g, "grid", {"l", "m"});
    c.grid_l = number(g, "l", "grid", c.grid_l);
    c.grid_m = static_cast<int>(integer(g, "m", "grid", c.grid_m));
    if (!(c.grid_l > 0.0)) fail("grid.l", "must be positive");
    if (c.grid_m < 0 || c.grid_m > 4096) fail("grid.m", "must lie in [0, 4096]");
  }

  if (root.contains("search")) {
    const json& s = object_at(root, "search", "search");
    check_keys(s, "search",
               {"knots", "radius", "r_min", "restarts", "budget", "seed", "grid_size", "perturbations", "objective"});
    SearchConfig& sc = c.search;
    sc.knots = static_cast<int>(integer(s, "knots", "search", sc.knots));
    sc.radius = number(s, "radius", "search", sc.radius);
    sc.r_min = number(s, "r_min", "search", sc.r_min);
    sc.restarts = static_cast<int>(integer(s, "restarts", "search", sc.restarts));
    sc.budget = static_cast<int>(integer(s, "budget", "search", sc.budget));
    if (s.contains("seed")) {
      if (!s.at("seed").is_number_unsigned() && !s.at("seed").is_number_integer()) fail("search.seed", "expected an integer");
      sc.seed = s.at("seed").get<std::uint64_t>();
    }
    c.grid_size = static_cast<int>(integer(s, "grid_size", "search", c.grid_size));
    c.perturbations = static_cast<int>(integer(s, "perturbations", "search", c.perturbations));
    if (s.contains("objective")) {
      const json& o = s.at("objective");
      if (o == "subcritical")
        c.objective = Objective::subcritical;
      else if (o == "critical")
        c.objective = Objective::critical;
      else
        fail("search.objective", "expected \"subcritical\" or \"critical\"");
    }
    try {
      sc.validate();
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("config: ") + e.what());
    }
    if (c.grid_size < 8) fail("search.grid_size", "must be >= 8");
    if (c.perturbations < 0) fail("search.perturbations", "must be >= 0");
  }

  if (root.contains("output")) {
    if (!root.at("output").is_string()) fail("output", "expected a string");
    c.output = root.at("output").get<std::string>();
  }
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

std::string RunConfig::canonical_json() const {
  json j;
  j["gauge"] = json::parse(gauge_json);
  j["params"] = {{"n", params.n},       {"q", params.q}, {"p", params.p}, {"beta", params.beta},
                 {"lambda", params.lambda}, {"a", params.a}, {"b", params.b}, {"variant", to_string(params.variant)}};
  j["grid"] = {{"l", grid_l}, {"m", grid_m}};
  j["search"] = {{"knots", search.knots},     {"radius", search.radius}, {"r_min", search.r_min},
                 {"restarts", search.restarts}, {"budget", search.budget}, {"seed", search.seed},
                 {"grid_size", grid_size},     {"perturbations", perturbations},
                 {"objective", objective == Objective::subcritical ? "subcritical" : "critical"}};
  return j.dump();
}

std::string RunConfig::hash() const { return fnv1a_hex(canonical_json()); }

}  // namespace anitm
