#pragma once

#include <span>
#include <string>
#include <vector>

#include "anitm/finsler.hpp"
#include "anitm/profile.hpp"

namespace anitm {

enum class Variant { exp_power, phi_series };

struct FunctionalParams {
  int n = 2;
  double q = 2.0;
  double p = 2.0;
  double beta = 0.0;
  double lambda = 1.0;
  double a = 2.0;
  double b = 2.0;
  Variant variant = Variant::phi_series;

  /// Throws ValidationError unless 0 <= beta < N, 0 <= lambda < lambda_N, q > 1, a, b > 0,
  /// and (exp_power only) p > q(1 - beta/N) for beta > 0, p >= q for beta = 0.
  void validate(double sharp_constant) const;
  /// lambda (1 - beta/N)
  double exponent_scale() const { return lambda * (1.0 - beta / n); }
  /// q (1 - beta/N)
  double ratio_power() const { return q * (1.0 - beta / n); }
};

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

struct SeriesIndex {
  int j_start;
  bool strict;  // defining inequality j > x (beta > 0) rather than j >= x
};

SeriesIndex series_start(int n, double q, double beta);
SeriesIndex series_start(const FunctionalParams& params);

/// sum_{j >= j_start} t^j / j!
double phi(int j_start, double t);
double phi(const FunctionalParams& params, double t);

/// Gauss-Legendre nodes on every interval of a knot set, with the radial weight
/// r^{N-1-beta} folded into the weights. For beta > N-1 each interval is mapped through
/// r = rho^{1/(N-beta)}, which turns the weight into the constant 1/(N-beta).
class RadialRule {
 public:
  RadialRule(const std::vector<double>& radii, int n, double beta, int order = 8);

  struct Node {
    int interval;
    double theta;   // position within the interval, value = (1-theta) g_k + theta g_{k+1}
    double radius;
    double weight;
  };

  const std::vector<Node>& nodes() const { return nodes_; }

  /// sum_i w_i h(g(r_i)) for knot values `values`. Throws OverflowError when an integrand
  /// value exceeds 1e300 or is not finite.
  template <class H>
  double integrate(std::span<const double> values, H&& h) const {
    double sum = 0.0;
    for (const Node& nd : nodes_) {
      const double gv = values[nd.interval] + nd.theta * (values[nd.interval + 1] - values[nd.interval]);
      const double hv = h(gv);
      if (!(hv <= 1e300)) overflow(nd, hv);
      sum += nd.weight * hv;
    }
    return sum;
  }

 private:
  [[noreturn]] static void overflow(const Node& nd, double value);
  std::vector<Node> nodes_;
};

/// (N kappa int_0^R g^q r^{N-1} dr)^{1/q}
double lq_norm_radial(const RadialProfile& g, double q, const Anisotropy& aniso);
/// N kappa int_0^R |g'|^N r^{N-1} dr, exact for piecewise-linear g.
double dirichlet_energy_radial(const RadialProfile& g, const Anisotropy& aniso);
/// ||F(grad u)||_N for u = g(F°).
double gradient_norm_radial(const RadialProfile& g, const Anisotropy& aniso);

/// Subcritical integral N kappa int exp(c g^{N/(N-1)}) g^p r^{N-1-beta} dr (exp_power) or
/// with phi(c g^{N/(N-1)}) (phi_series), c = lambda (1 - beta/N).
double atmsc_value(const RadialProfile& g, const FunctionalParams& params, const Anisotropy& aniso);
/// atmsc_value / ||g||_q^{q(1-beta/N)}
double ratio_functional(const RadialProfile& g, const FunctionalParams& params, const Anisotropy& aniso);

/// v(r) = g(t r) / ||F grad g||_N with t = (||g||_q / ||F grad g||_N)^{q/N}, so that both
/// norms of v equal 1. Throws DomainError for a zero profile.
RadialProfile normalize_sphere(const RadialProfile& g, double q, const Anisotropy& aniso);

/// Critical integrand N kappa int phi(c g^{N/(N-1)}) r^{N-1-beta} dr.
double critical_value(const RadialProfile& g, const FunctionalParams& params, const Anisotropy& aniso);
/// ||F grad g||_N^a + ||g||_q^b
double constraint_value(const RadialProfile& g, double a, double b, double q, const Anisotropy& aniso);

struct ConstraintScale {
  double c;
  RadialProfile scaled;
  bool feasible;      // constraint value of the input was <= 1, so c >= 1
  double residual;    // |constraint(c g) - 1|
};

/// Solves c^a X + c^b Y = 1 with X = ||F grad g||_N^a, Y = ||g||_q^b by bisection.
ConstraintScale constraint_scale(const RadialProfile& g, double a, double b, double q, const Anisotropy& aniso);
/// The scalar solve behind constraint_scale.
double solve_constraint_scale(double a, double b, double x, double y);

}  // namespace anitm
