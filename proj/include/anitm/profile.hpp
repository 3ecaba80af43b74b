#pragma once

#include <functional>
#include <string>
#include <vector>

namespace anitm {

/// Nonincreasing, compactly supported piecewise-linear profile g(r) on knots
/// 0 = r_0 < r_1 < ... < r_M = R with g_M = 0. Represents u(x) = g(F°(x)).
class RadialProfile {
 public:
  RadialProfile(std::vector<double> radii, std::vector<double> values);

  /// Zero profile on [0, R] with a single interval.
  static RadialProfile zero(double radius = 1.0);
  /// Samples `g` at the given knots; the last value is forced to zero.
  static RadialProfile sample(std::vector<double> radii, const std::function<double(double)>& g);

  const std::vector<double>& radii() const { return radii_; }
  const std::vector<double>& values() const { return values_; }
  /// Number of intervals M.
  int intervals() const { return static_cast<int>(radii_.size()) - 1; }
  double support_radius() const { return radii_.back(); }
  double peak() const { return values_.front(); }
  bool is_zero() const { return values_.front() == 0.0; }

  /// Piecewise-linear value; zero for r >= R.
  double operator()(double r) const;
  /// Slope on interval k (between knots k and k+1).
  double slope(int k) const;

  /// r -> c * g(r)
  RadialProfile scaled(double c) const;
  /// r -> g(s * r); knots become r_k / s.
  RadialProfile dilated(double s) const;

 private:
  std::vector<double> radii_;
  std::vector<double> values_;
};

/// Knots 0, r_min, ..., R with geometric spacing after the first (M intervals).
std::vector<double> geometric_knots(int intervals, double r_min, double radius);
std::vector<double> uniform_knots(int intervals, double radius);

/// Text format: header `N R M`, then M+1 lines `r g`.
RadialProfile read_profile_text(const std::string& text, int* dimension = nullptr);
std::string write_profile_text(const RadialProfile& g, int dimension);
RadialProfile load_profile(const std::string& path, int* dimension = nullptr);
void save_profile(const RadialProfile& g, int dimension, const std::string& path);

}  // namespace anitm
