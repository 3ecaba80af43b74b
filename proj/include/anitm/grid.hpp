#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "anitm/finsler.hpp"

namespace anitm {

/// Nonnegative function sampled at cell centers of the uniform grid on [-L, L]^N with
/// M cells per axis (row-major, last axis fastest). The outermost layer of cells is zero,
/// so the function extends by zero to all of R^N.
class GridFunction {
 public:
  GridFunction(int dimension, double half_width, int resolution, std::vector<double> values);

  /// Samples `f` at the cell centers. Throws ValidationError if the boundary layer is nonzero.
  static GridFunction sample(int dimension, double half_width, int resolution,
                             const std::function<double(std::span<const double>)>& f);
  static GridFunction zeros(int dimension, double half_width, int resolution);

  int dimension() const { return dimension_; }
  double half_width() const { return half_width_; }
  int resolution() const { return resolution_; }
  double cell_size() const { return 2.0 * half_width_ / resolution_; }
  double cell_volume() const;
  std::size_t size() const { return values_.size(); }

  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

  /// Cell center coordinates of flat index `i`.
  void center(std::size_t i, std::span<double> out) const;
  std::vector<double> center(std::size_t i) const;
  bool on_boundary(std::size_t i) const;

  /// (integral |u|^q)^{1/q}
  double lq_norm(double q) const;
  double integral() const;
  /// integral |u - v| over the common grid.
  double l1_distance(const GridFunction& other) const;
  bool same_grid(const GridFunction& other) const;

 private:
  int dimension_;
  double half_width_;
  int resolution_;
  std::vector<double> values_;
};

/// Anisotropic Dirichlet energy sum F(D+ u)^N h^N with forward differences and zero
/// extension outside the grid.
double grid_dirichlet_energy(const GridFunction& u, const FinslerNorm& gauge);

/// Text format: a header line `N L M` followed by M^N values.
GridFunction read_grid_text(const std::string& text);
std::string write_grid_text(const GridFunction& u);
/// JSON format: {"n":2,"l":4.0,"m":256,"values":[...]}.
GridFunction read_grid_json(const std::string& text);
std::string write_grid_json(const GridFunction& u);
/// Reads either format (JSON if the first non-blank character is '{').
GridFunction load_grid(const std::string& path);
void save_grid(const GridFunction& u, const std::string& path);

}  // namespace anitm
