#pragma once

#include <vector>

#include "anitm/finsler.hpp"
#include "anitm/grid.hpp"
#include "anitm/profile.hpp"

namespace anitm {

/// Right-continuous nonincreasing step function of the measure variable:
/// value s_k on [t_{k-1}, t_k), zero from t_K on.
class StepRearrangement {
 public:
  StepRearrangement(std::vector<double> breakpoints, std::vector<double> levels);

  const std::vector<double>& breakpoints() const { return breakpoints_; }  // t_0 = 0, ..., t_K
  const std::vector<double>& levels() const { return levels_; }            // s_1 > ... > s_K > 0
  double operator()(double t) const;
  /// Measure of the support, t_K.
  double support_measure() const { return breakpoints_.back(); }
  /// sum (t_k - t_{k-1}) s_k^q
  double lq_power(double q) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> levels_;
};

/// h^N * #{cells with value >= s}
double distribution_function(const GridFunction& u, double s);

/// Sorts cell values descending (ties by cell index) and merges equal values into levels.
StepRearrangement decreasing_rearrangement(const GridFunction& u);

/// u*(x) = u#(kappa F°(x)^N) at every cell center. Throws ValidationError when u* does not
/// vanish on the boundary layer of the box.
GridFunction convex_symmetrization(const GridFunction& u, const Anisotropy& aniso);

/// Discretization allowance C h for grid-level comparisons.
double eps_disc(double h);
/// Quadrature allowance C h for midpoint-rule product integrals.
double eps_quad(double h);

/// ||u - u*||_1 / ||u||_1 (0 for u = 0).
double symmetry_residual(const GridFunction& u, const Anisotropy& aniso);

/// g(r) = u#(kappa r^N) on uniform knots up to the support radius (m / kappa)^{1/N}.
RadialProfile profile_from_rearrangement(const StepRearrangement& us, const Anisotropy& aniso, double spacing);

/// Extracts g with u*(x) = g(F°(x)). Throws ValidationError when u_star is not Wulff
/// symmetric within eps_disc.
RadialProfile profile_of(const GridFunction& u_star, const Anisotropy& aniso);

struct HardyLittlewood {
  double lhs;           // int f g
  double rhs;           // int f* g*
  double gap;           // rhs - lhs
  double g_distance;    // ||g - g*||_1
  double g_distance_rel;  // ||g - g*||_1 / ||g||_1
};

HardyLittlewood hardy_littlewood_check(const GridFunction& f, const GridFunction& g, const Anisotropy& aniso);

struct PolyaSzego {
  double energy_u;
  double energy_ustar;
  double gap;  // energy_u - energy_ustar
};

/// Grid energy of u against the radial energy of u* built from u#.
PolyaSzego polya_szego_check(const GridFunction& u, const Anisotropy& aniso);

}  // namespace anitm
