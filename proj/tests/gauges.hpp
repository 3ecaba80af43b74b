#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "anitm/finsler.hpp"

namespace anitm::testing {

// l^inf gauge sampled on 720 directions; its polar is the l^1 norm.
inline FinslerNorm max_gauge(int directions = 720) {
  std::vector<double> th, v;
  for (int i = 0; i < directions; ++i) {
    const double t = 2.0 * std::numbers::pi * i / directions;
    th.push_back(t);
    v.push_back(std::max(std::abs(std::cos(t)), std::abs(std::sin(t))));
  }
  return FinslerNorm::sampled_2d(th, v, Interpolation::polygon);
}

// Smooth sampled gauge: the l^3 norm tabulated on `directions` angles.
inline FinslerNorm sampled_l3(int directions = 720) {
  std::vector<double> th, v;
  for (int i = 0; i < directions; ++i) {
    const double t = 2.0 * std::numbers::pi * i / directions;
    th.push_back(t);
    v.push_back(std::cbrt(std::pow(std::abs(std::cos(t)), 3) + std::pow(std::abs(std::sin(t)), 3)));
  }
  return FinslerNorm::sampled_2d(th, v, Interpolation::cubic);
}

// Smooth, strictly convex sampled gauge without a closed-form polar:
// sqrt(x^T A x) + 0.5 sqrt(x^T B x) tabulated on `directions` angles.
inline FinslerNorm sampled_smooth(int directions = 720) {
  std::vector<double> th, v;
  for (int i = 0; i < directions; ++i) {
    const double t = 2.0 * std::numbers::pi * i / directions;
    const double c = std::cos(t), s = std::sin(t);
    th.push_back(t);
    v.push_back(std::sqrt(2.0 * c * c + s * s) + 0.5 * std::sqrt(c * c + c * s + 2.0 * s * s));
  }
  return FinslerNorm::sampled_2d(th, v, Interpolation::cubic);
}

inline FinslerNorm ellipse_41() { return FinslerNorm::ellipse(2, {4.0, 0.0, 0.0, 1.0}); }

}  // namespace anitm::testing
