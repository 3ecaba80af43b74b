#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anitm/finsler.hpp"
#include "anitm/functional.hpp"
#include "anitm/profile.hpp"

namespace anitm {

struct SearchConfig {
  int knots = 64;             // profile intervals M
  double radius = 1.0;        // support radius R of the base knot grid
  double r_min = 1e-3;        // first nonzero knot, relative to R
  int restarts = 8;
  int budget = 6000;          // objective evaluations per restart
  std::uint64_t seed = 1;
  int threads = 1;
  std::vector<RadialProfile> extra_initializers;  // warm starts, tried after the built-in ones

  void validate() const;
  std::vector<double> base_knots() const;
};

/// Built-in initializers on the base knots, supported in [0, R/2]: cone, bump and a
/// ladder of Moser-type profiles min(1, log(R/2r) / log(R/2r_k)).
std::vector<RadialProfile> default_initializers(const SearchConfig& config);

struct FEstimate {
  double value;                        // sup over restarts
  RadialProfile profile;               // witness, both norms 1
  std::vector<double> restart_values;  // per restart, in restart order
  double spread;                       // max - min of restart_values
  long evaluations;
};

/// Maximizes the subcritical functional (params.variant) at lambda = params.lambda over
/// nonincreasing profiles with ||F grad g||_N = ||g||_q = 1.
FEstimate estimate_f(const FunctionalParams& params, const Anisotropy& aniso, const SearchConfig& config);

/// ((1 - s^{a(N-1)/N}) / s^{b(N-1)/N})^{(q/b)(1-beta/N)}, s = t / lambda.
double sweep_bracket(const FunctionalParams& params, double t);

struct EndpointDiagnostics {
  double bracket_last_over_mid;  // bracket at the largest t / bracket at t = lambda/2
  double product_first;          // product at the smallest t
  double product_last;           // product at the largest t
  bool decreasing_near_lambda;   // products decrease over the last quarter of the grid
  bool increasing_near_zero;     // products increase over the first quarter of the grid
};

struct SweepResult {
  double lambda;
  std::vector<double> ts;
  std::vector<double> f_estimates;
  std::vector<double> f_spreads;
  std::vector<double> brackets;
  std::vector<double> products;
  std::vector<RadialProfile> witnesses;  // realizes f_estimates[k] at ts[k]
  std::size_t star_index;
  double t_star;
  double g_value;
  EndpointDiagnostics endpoints;
};

/// Samples t on a grid uniform in log(s / (1 - s)), s = t / lambda, between 1e-6 and the s
/// where the bracket has dropped below 1e-4 of its value at s = 1/2, estimates f at each
/// point, and then re-evaluates every witness at every t.
SweepResult identity_sweep(const FunctionalParams& params, const Anisotropy& aniso, int grid_size,
                           const SearchConfig& config);

struct MaximizerReport {
  RadialProfile profile;
  double value;
  double grad_norm;              // ||F grad g||_N
  double q_norm;                 // ||g||_q
  double grad_norm_residual;     // | ||F grad g||_N - 1 |
  double q_norm_residual;        // | ||g||_q - 1 |
  double constraint_residual;    // | ||F grad g||^a + ||g||_q^b - 1 |
  double symmetry_residual;      // NaN when no grid representative was built
  double symmetry_tolerance;     // eps_disc of that grid
  double local_optimality_margin;  // max increase over random feasible perturbations
  std::vector<double> restart_values;
  double spread;
};

struct DiagnosticsConfig {
  int grid_resolution = 256;   // 0 skips the grid representative
  int perturbations = 200;
  double perturbation_size = 1e-3;
  std::uint64_t seed = 1;
};

/// Maximizes critical_value over nonincreasing profiles on ||F grad g||^a + ||g||_q^b = 1.
MaximizerReport direct_critical_max(const FunctionalParams& params, const Anisotropy& aniso,
                                    const SearchConfig& config, const DiagnosticsConfig& diagnostics = {});

struct CriticalConstruction {
  RadialProfile profile;    // v(r) = s^{(N-1)/N} u(gamma r)
  double gamma;
  double constraint_residual;
  double value;             // critical_value(v)
  double expected;          // bracket(t) * functional(u) at lambda = t
  double relative_gap;      // |value - expected| / expected
};

/// Maps a normalized maximizer u at level t in (0, lambda) onto the constraint sphere.
CriticalConstruction construct_critical_from_subcritical(double t, const RadialProfile& u,
                                                         const FunctionalParams& params, const Anisotropy& aniso);

struct Threshold {
  double threshold;  // lambda^m / m!, m = q(N-1)/N; NaN when not applicable
  bool applicable;   // beta = 0 and m integral
};

Threshold threshold_check(const FunctionalParams& params);
/// "attainment guaranteed" or "inconclusive".
std::string attainment_verdict(const FunctionalParams& params, double g_value);

enum class Objective { subcritical, critical };

/// Fills the report fields for a candidate maximizer of the given objective.
MaximizerReport maximizer_diagnostics(const RadialProfile& g, const FunctionalParams& params, const Anisotropy& aniso,
                                      Objective objective, const DiagnosticsConfig& config);

/// Re-evaluates the objective exactly as the search does (normalize or constraint-scale first).
double objective_value(const RadialProfile& g, const FunctionalParams& params, const Anisotropy& aniso,
                       Objective objective);

}  // namespace anitm
