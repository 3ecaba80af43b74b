#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "anitm/grid.hpp"

namespace anitm {

using Field = std::function<double(std::span<const double>)>;

struct CorpusEntry {
  std::string name;
  Field f;
};

namespace detail {

inline double bump(double x, double y, double cx, double cy, double radius) {
  const double r2 = ((x - cx) * (x - cx) + (y - cy) * (y - cy)) / (radius * radius);
  return r2 < 1.0 ? (1.0 - r2) * (1.0 - r2) : 0.0;
}

inline double pos(double v) { return v > 0.0 ? v : 0.0; }

}  // namespace detail

// Twelve nonnegative test functions supported in |x|, |y| <= 1.3, so their convex
// symmetrizations fit in [-3, 3]^2 for all test gauges.
inline std::vector<CorpusEntry> corpus_2d() {
  using detail::bump;
  using detail::pos;
  constexpr double pi = std::numbers::pi;
  return {
      {"cone", [](auto x) { return pos(1.0 - std::hypot(x[0], x[1])); }},
      {"cap", [](auto x) { return pos(1.0 - x[0] * x[0] - x[1] * x[1]); }},
      {"offset_bump", [](auto x) { return bump(x[0], x[1], 0.4, -0.3, 0.8); }},
      {"two_bumps", [](auto x) { return bump(x[0], x[1], -0.5, 0.0, 0.5) + 0.6 * bump(x[0], x[1], 0.6, 0.3, 0.4); }},
      {"three_bumps",
       [](auto x) {
         return bump(x[0], x[1], -0.6, -0.5, 0.35) + 0.8 * bump(x[0], x[1], 0.5, -0.4, 0.3) +
                0.5 * bump(x[0], x[1], 0.0, 0.6, 0.45);
       }},
      {"tilted_ridge",
       [](auto x) {
         const double c = std::cos(0.5), s = std::sin(0.5);
         const double a = c * x[0] + s * x[1], b = -s * x[0] + c * x[1];
         return pos(1.0 - std::abs(a) / 0.3) * pos(1.0 - std::abs(b) / 1.2);
       }},
      {"ring", [](auto x) { return pos(0.3 - std::abs(std::hypot(x[0], x[1]) - 0.7)); }},
      {"pyramid", [](auto x) { return pos(1.0 - std::max(std::abs(x[0]), std::abs(x[1]))); }},
      {"plateau", [](auto x) { return std::min(1.0, 2.0 * pos(1.0 - std::hypot(x[0], x[1]))); }},
      {"elliptic_gauss",
       [](auto x) { return pos(std::exp(-(x[0] * x[0] / 0.3 + x[1] * x[1] / 0.1)) - std::exp(-4.0)); }},
      {"cosine_patch",
       [=](auto x) {
         const double a = x[0] - 0.2, b = x[1] + 0.1;
         return std::abs(a) < 1.0 && std::abs(b) < 0.8 ? std::cos(pi * a / 2) * std::cos(pi * b / 1.6) : 0.0;
       }},
      {"crescent", [](auto x) { return pos(bump(x[0], x[1], 0.0, 0.0, 1.0) - bump(x[0], x[1], 0.35, 0.0, 0.7)); }},
  };
}

inline GridFunction sample_2d(const Field& f, double half_width, int resolution) {
  return GridFunction::sample(2, half_width, resolution, f);
}

}  // namespace anitm
