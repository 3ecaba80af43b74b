#include "anitm/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "anitm/errors.hpp"
#include "anitm/functional.hpp"

namespace anitm {

namespace {

// Calibrated on the Euclidean cone (1 - |x|)_+ over M = 64..512; see tests/test_rearrange.cpp.
constexpr double kDiscConstant = 1.0;
constexpr double kQuadConstant = 1.0;
// Knot spacing of extracted profiles, in cells.
constexpr double kProfileSpacing = 2.0;

}  // namespace

StepRearrangement::StepRearrangement(std::vector<double> breakpoints, std::vector<double> levels)
    : breakpoints_(std::move(breakpoints)), levels_(std::move(levels)) {
  if (breakpoints_.empty() || breakpoints_.front() != 0.0)
    throw ValidationError("rearrangement: breakpoints must start at 0");
  if (breakpoints_.size() != levels_.size() + 1)
    throw ValidationError("rearrangement: need one more breakpoint than levels");
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    if (!(breakpoints_[k + 1] > breakpoints_[k]))
      throw ValidationError("rearrangement: breakpoints must be strictly increasing");
    if (!(levels_[k] > 0.0) || (k > 0 && !(levels_[k] < levels_[k - 1])))
      throw ValidationError("rearrangement: levels must be positive and strictly decreasing");
  }
}

double StepRearrangement::operator()(double t) const {
  if (t < 0.0) return levels_.empty() ? 0.0 : levels_.front();
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  if (it == breakpoints_.end()) return 0.0;
  return levels_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

double StepRearrangement::lq_power(double q) const {
  double s = 0.0;
  for (std::size_t k = 0; k < levels_.size(); ++k)
    s += (breakpoints_[k + 1] - breakpoints_[k]) * std::pow(levels_[k], q);
  return s;
}

double distribution_function(const GridFunction& u, double s) {
  if (!(s >= 0.0)) throw ValidationError("distribution_function: level must be >= 0");
  std::size_t count = 0;
  for (double v : u.values()) count += v >= s;
  return count * u.cell_volume();
}

StepRearrangement decreasing_rearrangement(const GridFunction& u) {
  std::vector<double> sorted;
  sorted.reserve(u.size());
  for (double v : u.values())
    if (v > 0.0) sorted.push_back(v);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const double cell = u.cell_volume();
  std::vector<double> breakpoints{0.0}, levels;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    levels.push_back(sorted[i]);
    breakpoints.push_back(j * cell);
    i = j;
  }
  return StepRearrangement(std::move(breakpoints), std::move(levels));
}

GridFunction convex_symmetrization(const GridFunction& u, const Anisotropy& aniso) {
  const int n = u.dimension();
  if (aniso.dimension() != n) throw ValidationError("convex_symmetrization: gauge dimension mismatch");
  const StepRearrangement us = decreasing_rearrangement(u);
  const double kappa = aniso.kappa();
  const FinslerNorm& polar = aniso.polar();
  std::vector<double> values(u.size(), 0.0);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < values.size(); ++i) {
    u.center(i, x);
    const double t = kappa * std::pow(polar(x), n);
    values[i] = us(t);
    if (values[i] != 0.0 && u.on_boundary(i))
      throw ValidationError("convex_symmetrization: support of u* exceeds the box; enlarge L");
  }
  return GridFunction(n, u.half_width(), u.resolution(), std::move(values));
}

double eps_disc(double h) { return kDiscConstant * h; }
double eps_quad(double h) { return kQuadConstant * h; }

double symmetry_residual(const GridFunction& u, const Anisotropy& aniso) {
  const double norm = u.integral();
  if (norm == 0.0) return 0.0;
  return u.l1_distance(convex_symmetrization(u, aniso)) / norm;
}

RadialProfile profile_from_rearrangement(const StepRearrangement& us, const Anisotropy& aniso, double spacing) {
  if (!(spacing > 0.0)) throw ValidationError("profile: knot spacing must be positive");
  const int n = aniso.dimension();
  const double kappa = aniso.kappa();
  const double m = us.support_measure();
  if (m == 0.0) return RadialProfile::zero(spacing);
  const double radius = std::pow(m / kappa, 1.0 / n);
  const int k = std::max(1, static_cast<int>(std::ceil(radius / spacing)));
  return RadialProfile::sample(uniform_knots(k, radius), [&](double r) { return us(kappa * std::pow(r, n)); });
}

RadialProfile profile_of(const GridFunction& u_star, const Anisotropy& aniso) {
  const double h = u_star.cell_size();
  const double residual = symmetry_residual(u_star, aniso);
  if (residual > eps_disc(h))
    throw ValidationError("profile_of: input is not Wulff symmetric (residual " + std::to_string(residual) +
                          " > " + std::to_string(eps_disc(h)) + ")");
  return profile_from_rearrangement(decreasing_rearrangement(u_star), aniso, kProfileSpacing * h);
}

HardyLittlewood hardy_littlewood_check(const GridFunction& f, const GridFunction& g, const Anisotropy& aniso) {
  if (!f.same_grid(g)) throw ValidationError("hardy_littlewood_check: functions live on different grids");
  const GridFunction fs = convex_symmetrization(f, aniso);
  const GridFunction gs = convex_symmetrization(g, aniso);
  double lhs = 0.0, rhs = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    lhs += f[i] * g[i];
    rhs += fs[i] * gs[i];
  }
  lhs *= f.cell_volume();
  rhs *= f.cell_volume();
  const double dist = g.l1_distance(gs);
  const double gn = g.integral();
  return {lhs, rhs, rhs - lhs, dist, gn > 0.0 ? dist / gn : 0.0};
}

PolyaSzego polya_szego_check(const GridFunction& u, const Anisotropy& aniso) {
  const double eu = grid_dirichlet_energy(u, aniso.gauge());
  const RadialProfile g =
      profile_from_rearrangement(decreasing_rearrangement(u), aniso, kProfileSpacing * u.cell_size());
  const double es = dirichlet_energy_radial(g, aniso);
  return {eu, es, eu - es};
}

}  // namespace anitm
