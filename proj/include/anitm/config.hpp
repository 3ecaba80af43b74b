#pragma once

#include <cstdint>
#include <string>

#include "anitm/finsler.hpp"
#include "anitm/functional.hpp"
#include "anitm/maximize.hpp"

namespace anitm {

/// Parsed run configuration. All fields are optional in the JSON document except the gauge.
///
///   {
///     "gauge":  {"kind": "ellipse", "matrix": [[4, 0], [0, 1]]},
///     "params": {"n": 2, "q": 2, "p": 2, "beta": 0.5, "lambda_fraction": 0.5, "a": 2, "b": 2,
///                "variant": "phi_series"},
///     "grid":   {"l": 3.0, "m": 256},
///     "search": {"knots": 64, "radius": 1.0, "r_min": 0.001, "restarts": 8, "budget": 6000,
///                "seed": 1, "grid_size": 24, "perturbations": 200, "objective": "subcritical"},
///     "output": "runs/demo"
///   }
///
/// `lambda` is absolute; `lambda_fraction` is relative to lambda_N of the gauge. Exactly one
/// of them may be given.
struct RunConfig {
  std::string gauge_json;  // canonical dump of the gauge block
  FinslerNorm gauge = FinslerNorm::euclidean(2);
  FunctionalParams params;
  double lambda_fraction = 0.0;  // > 0 when lambda was given relative to lambda_N
  double grid_l = 3.0;
  int grid_m = 256;
  SearchConfig search;
  int grid_size = 24;
  int perturbations = 200;
  Objective objective = Objective::subcritical;
  std::string output;

  /// Canonical JSON of the effective configuration (threads excluded).
  std::string canonical_json() const;
  /// FNV-1a of canonical_json(), as 16 hex digits.
  std::string hash() const;
};

/// Throws ValidationError naming the offending field, e.g. "config: params.q: ...".
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

/// Gauge from its JSON spec: {"kind": "euclidean" | "pnorm" | "ellipse" | "sampled", ...}.
FinslerNorm gauge_from_json(const std::string& json_text, int dimension);

std::string fnv1a_hex(const std::string& text);

}  // namespace anitm
