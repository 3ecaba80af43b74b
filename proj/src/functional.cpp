#include "anitm/functional.hpp"

#include <cmath>
#include <sstream>

#include "anitm/errors.hpp"
#include "anitm/quadrature.hpp"

namespace anitm {

namespace {

// Integers computed from real parameters are snapped when within this distance.
constexpr double kIntegerSnap = 1e-12;

double snap(double x) {
  const double r = std::round(x);
  return std::abs(x - r) < kIntegerSnap ? r : x;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

}  // namespace

void FunctionalParams::validate(double sharp_constant) const {
  if (n < 2) throw ValidationError("params: N must be an integer >= 2");
  if (!std::isfinite(q) || !(q > 1.0)) throw ValidationError("params: q must be > 1 (got " + fmt(q) + ")");
  if (!std::isfinite(beta) || beta < 0.0 || beta >= n)
    throw ValidationError("params: beta must satisfy 0 <= beta < N (got " + fmt(beta) + ")");
  if (!std::isfinite(lambda) || lambda < 0.0 || lambda >= sharp_constant)
    throw ValidationError("params: lambda must satisfy 0 <= lambda < lambda_N = " + fmt(sharp_constant) +
                          " (got " + fmt(lambda) + ")");
  if (!std::isfinite(a) || !(a > 0.0)) throw ValidationError("params: a must be > 0");
  if (!std::isfinite(b) || !(b > 0.0)) throw ValidationError("params: b must be > 0");
  if (variant == Variant::exp_power) {
    if (!std::isfinite(p)) throw ValidationError("params: p must be finite");
    if (beta > 0.0 && !(p > ratio_power()))
      throw ValidationError("params: exp_power with beta > 0 needs p > q(1-beta/N) = " + fmt(ratio_power()));
    if (beta == 0.0 && !(p >= q)) throw ValidationError("params: exp_power with beta = 0 needs p >= q");
  }
}

std::string to_string(Variant v) { return v == Variant::exp_power ? "exp_power" : "phi_series"; }

Variant variant_from_string(const std::string& s) {
  if (s == "exp_power") return Variant::exp_power;
  if (s == "phi_series") return Variant::phi_series;
  throw ValidationError("params: variant must be \"exp_power\" or \"phi_series\" (got \"" + s + "\")");
}

SeriesIndex series_start(int n, double q, double beta) {
  const double x = snap(q * (n - 1.0) / n * (1.0 - beta / n));
  if (beta > 0.0) return {static_cast<int>(std::floor(x)) + 1, true};
  return {static_cast<int>(std::ceil(x)), false};
}

SeriesIndex series_start(const FunctionalParams& params) { return series_start(params.n, params.q, params.beta); }

double phi(int j_start, double t) {
  if (!(t >= 0.0)) throw DomainError("phi: argument must be >= 0");
  if (t == 0.0) return j_start <= 0 ? 1.0 : 0.0;
  if (j_start <= 0) return std::exp(t);
  if (t >= j_start + 10.0) {
    // e^t dominates the head here, so the subtraction loses no relative accuracy.
    double head = 0.0, term = 1.0;
    for (int j = 0; j < j_start; ++j) {
      head += term;
      term *= t / (j + 1);
    }
    return std::exp(t) - head;
  }
  double term = std::exp(j_start * std::log(t) - std::lgamma(j_start + 1.0));
  double sum = 0.0;
  for (int j = j_start; term > 1e-18 * sum || j < t; ++j) {
    sum += term;
    term *= t / (j + 1);
  }
  return sum;
}

double phi(const FunctionalParams& params, double t) { return phi(series_start(params).j_start, t); }

RadialRule::RadialRule(const std::vector<double>& radii, int n, double beta, int order) {
  const GaussRule& gl = gauss_legendre(order);
  const double power = n - 1.0 - beta;
  const bool mapped = power < 0.0;
  const double mu = n - beta;
  nodes_.reserve((radii.size() - 1) * gl.nodes.size());
  for (std::size_t k = 0; k + 1 < radii.size(); ++k) {
    const double r0 = radii[k], r1 = radii[k + 1];
    if (mapped) {
      const double p0 = std::pow(r0, mu), p1 = std::pow(r1, mu);
      const double half = 0.5 * (p1 - p0), mid = 0.5 * (p1 + p0);
      for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double r = std::pow(mid + half * gl.nodes[i], 1.0 / mu);
        nodes_.push_back({static_cast<int>(k), (r - r0) / (r1 - r0), r, gl.weights[i] * half / mu});
      }
    } else {
      const double half = 0.5 * (r1 - r0), mid = 0.5 * (r1 + r0);
      for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double r = mid + half * gl.nodes[i];
        nodes_.push_back({static_cast<int>(k), (r - r0) / (r1 - r0), r, gl.weights[i] * half * std::pow(r, power)});
      }
    }
  }
}

void RadialRule::overflow(const Node& nd, double value) {
  std::ostringstream os;
  os.precision(10);
  os << "integrand overflow (" << value << ") on interval " << nd.interval << " at r = " << nd.radius;
  throw OverflowError(os.str());
}

double lq_norm_radial(const RadialProfile& g, double q, const Anisotropy& aniso) {
  if (!(q >= 1.0)) throw ValidationError("lq_norm_radial: q must be >= 1");
  if (g.is_zero()) return 0.0;
  const int n = aniso.dimension();
  const RadialRule rule(g.radii(), n, 0.0);
  const double s = rule.integrate(g.values(), [q](double v) { return std::pow(v, q); });
  return std::pow(n * aniso.kappa() * s, 1.0 / q);
}

double dirichlet_energy_radial(const RadialProfile& g, const Anisotropy& aniso) {
  const int n = aniso.dimension();
  const auto& r = g.radii();
  double s = 0.0;
  for (int k = 0; k < g.intervals(); ++k) {
    const double sl = std::abs(g.slope(k));
    if (sl == 0.0) continue;
    s += std::pow(sl, n) * (std::pow(r[k + 1], n) - std::pow(r[k], n));
  }
  return aniso.kappa() * s;
}

double gradient_norm_radial(const RadialProfile& g, const Anisotropy& aniso) {
  return std::pow(dirichlet_energy_radial(g, aniso), 1.0 / aniso.dimension());
}

double atmsc_value(const RadialProfile& g, const FunctionalParams& params, const Anisotropy& aniso) {
  const int n = aniso.dimension();
  if (params.n != n) throw ValidationError("atmsc_value: params N does not match the gauge dimension");
  if (g.is_zero()) return 0.0;
  const RadialRule rule(g.radii(), n, params.beta);
  const double c = params.exponent_scale();
  const double e = n / (n - 1.0);
  double s;
  if (params.variant == Variant::exp_power) {
    const double p = params.p;
    s = rule.integrate(g.values(), [=](double v) { return v == 0.0 ? 0.0 : std::exp(c * std::pow(v, e)) * std::pow(v, p); });
  } else {
    const int j = series_start(params).j_start;
    s = rule.integrate(g.values(), [=](double v) { return phi(j, c * std::pow(v, e)); });
  }
  return n * aniso.kappa() * s;
}

double ratio_functional(const RadialProfile& g, const FunctionalParams& params, const Anisotropy& aniso) {
  if (g.is_zero()) throw DomainError("ratio_functional: zero profile");
  const double norm = lq_norm_radial(g, params.q, aniso);
  return atmsc_value(g, params, aniso) / std::pow(norm, params.ratio_power());
}

RadialProfile normalize_sphere(const RadialProfile& g, double q, const Anisotropy& aniso) {
  if (g.is_zero()) throw DomainError("normalize_sphere: zero profile");
  const double e = gradient_norm_radial(g, aniso);
  if (!(e > 0.0)) throw DomainError("normalize_sphere: zero gradient energy");
  const double nq = lq_norm_radial(g, q, aniso);
  const double t = std::pow(nq / e, q / aniso.dimension());
  return g.dilated(t).scaled(1.0 / e);
}

double critical_value(const RadialProfile& g, const FunctionalParams& params, const Anisotropy& aniso) {
  FunctionalParams phi_params = params;
  phi_params.variant = Variant::phi_series;
  return atmsc_value(g, phi_params, aniso);
}

double constraint_value(const RadialProfile& g, double a, double b, double q, const Anisotropy& aniso) {
  return std::pow(gradient_norm_radial(g, aniso), a) + std::pow(lq_norm_radial(g, q, aniso), b);
}

double solve_constraint_scale(double a, double b, double x, double y) {
  if (!(x >= 0.0) || !(y >= 0.0) || !(x + y > 0.0))
    throw DomainError("constraint_scale: constraint value is zero");
  const auto h = [=](double c) { return std::pow(c, a) * x + std::pow(c, b) * y; };
  double lo = 1.0, hi = 1.0;
  if (h(1.0) <= 1.0) {
    while (h(hi) < 1.0) hi *= 2.0;
    lo = hi == 1.0 ? 1.0 : 0.5 * hi;
  } else {
    while (h(lo) > 1.0) lo *= 0.5;
    hi = 2.0 * lo;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) < 1.0 ? lo : hi) = mid;
  }
  return std::abs(h(lo) - 1.0) <= std::abs(h(hi) - 1.0) ? lo : hi;
}

ConstraintScale constraint_scale(const RadialProfile& g, double a, double b, double q, const Anisotropy& aniso) {
  if (!(a > 0.0) || !(b > 0.0)) throw ValidationError("constraint_scale: a and b must be > 0");
  const double x = std::pow(gradient_norm_radial(g, aniso), a);
  const double y = std::pow(lq_norm_radial(g, q, aniso), b);
  const double c = solve_constraint_scale(a, b, x, y);
  RadialProfile scaled = g.scaled(c);
  const double residual = std::abs(constraint_value(scaled, a, b, q, aniso) - 1.0);
  return {c, std::move(scaled), x + y <= 1.0, residual};
}

}  // namespace anitm
