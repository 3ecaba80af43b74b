#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace anitm {

enum class GaugeKind { euclidean, pnorm, ellipse, sampled };

// How a sampled gauge is extended between its sample directions.
//   cubic:   periodic cubic spline of F on the angle (2D), bilinear on (theta, phi) (3D)
//   polygon: the unit ball is the polygon through the sampled boundary points (2D only);
//            reproduces polytope gauges such as the max-norm exactly
enum class Interpolation { cubic, polygon };

/// A convex, even, positively 1-homogeneous gauge on R^N.
///
/// Closed-form kinds (Euclidean, l^p, ellipse x^T A x) evaluate exactly. Sampled gauges
/// store F on unit directions and rescale by |x|. Values are immutable and cheap to copy
/// (sampled data is shared).
class FinslerNorm {
 public:
  static FinslerNorm euclidean(int dimension);
  static FinslerNorm pnorm(int dimension, double exponent);
  /// `matrix` is row-major N x N, symmetric positive definite; F(x) = sqrt(x^T A x).
  static FinslerNorm ellipse(int dimension, std::vector<double> matrix);
  /// 2D gauge from values F(cos t, sin t) at strictly increasing angles in [0, 2pi).
  static FinslerNorm sampled_2d(std::vector<double> thetas, std::vector<double> values,
                                Interpolation rule = Interpolation::cubic);
  /// 3D gauge on the polar grid theta_i = pi*i/(n_theta-1), phi_j = 2pi*j/n_phi,
  /// values row-major [i*n_phi + j].
  static FinslerNorm sampled_3d(int n_theta, int n_phi, std::vector<double> values);

  int dimension() const { return dimension_; }
  GaugeKind kind() const { return kind_; }
  bool closed_form() const { return kind_ != GaugeKind::sampled; }
  double exponent() const { return exponent_; }
  const std::vector<double>& matrix() const { return matrix_; }
  Interpolation interpolation() const;
  /// Sample directions (2D: angles; 3D: empty) and values of a sampled gauge.
  const std::vector<double>& sample_thetas() const;
  const std::vector<double>& sample_values() const;
  int sample_rows() const;  // 3D: n_theta
  int sample_cols() const;  // 3D: n_phi

  double operator()(std::span<const double> x) const;
  double eval(std::span<const double> x) const { return (*this)(x); }

  /// Gradient; analytic for closed forms, central differences for sampled gauges.
  /// Throws DomainError at |x| < 1e-12.
  std::vector<double> gradient(std::span<const double> x) const;

  /// Norm-equivalence constants a_F |x| <= F(x) <= b_F |x|.
  double lower_bound() const { return lower_; }
  double upper_bound() const { return upper_; }

  /// The dual gauge F°(x) = sup <x, xi> / F(xi).
  FinslerNorm polar() const;

  std::string describe() const;

 private:
  struct Sampled2d;
  struct Sampled3d;

  FinslerNorm() = default;
  void compute_bounds();
  double eval_sampled_2d(double x, double y) const;
  double eval_sampled_3d(std::span<const double> x) const;

  int dimension_ = 2;
  GaugeKind kind_ = GaugeKind::euclidean;
  double exponent_ = 2.0;
  std::vector<double> matrix_;
  std::shared_ptr<const Sampled2d> s2_;
  std::shared_ptr<const Sampled3d> s3_;
  double lower_ = 1.0;
  double upper_ = 1.0;
};

/// A gauge together with its polar, the unit Wulff ball volume and the sharp constant.
/// All operations that use F° take this bundle so the (possibly numerical) polar is
/// computed once.
class Anisotropy {
 public:
  explicit Anisotropy(FinslerNorm gauge);

  const FinslerNorm& gauge() const { return gauge_; }
  const FinslerNorm& polar() const { return polar_; }
  int dimension() const { return gauge_.dimension(); }
  /// kappa_N = |{F° <= 1}|
  double kappa() const { return kappa_; }
  /// lambda_N = N^{N/(N-1)} kappa_N^{1/(N-1)}
  double sharp_constant() const { return sharp_; }

 private:
  FinslerNorm gauge_;
  FinslerNorm polar_;
  double kappa_;
  double sharp_;
};

struct WulffBall {
  FinslerNorm polar;  // F°
  double radius;
  std::vector<double> center;

  bool contains(std::span<const double> x) const;
};

/// Volume of {polar <= 1}: (1/N) * integral over the sphere of polar(theta)^{-N}.
double wulff_volume_of_polar(const FinslerNorm& polar);
double wulff_volume(const FinslerNorm& gauge);
double sharp_constant(const FinslerNorm& gauge);
double sharp_constant_from_volume(int dimension, double kappa);

/// max over random x of |F°°(x) - F(x)| / F(x).
double bipolar_residual(const FinslerNorm& gauge, int sample_count, std::uint64_t seed = 7);

/// Relative deviation of the boundary integral of 1/|grad F°| over the Wulff sphere of
/// radius r from N kappa_N r^{N-1}.
double coarea_surface_check(const Anisotropy& aniso, double r);

/// Worst-case residuals of the classical gauge identities on random points.
struct GaugeIdentityResiduals {
  double triangle = 0;         // max (F(x+y) - F(x) - F(y)) / (F(x)+F(y)), clipped at 0
  double reverse_triangle = 0; // max (|F(x)-F(y)| - F(x+y)) / (F(x)+F(y)), clipped at 0
  double gradient_bounds = 0;  // violation of 1/C <= |grad F|, |grad F°| <= C
  double euler = 0;            // |<x, grad F> - F| / F, same for F°
  double sign_symmetry = 0;    // |grad F(tx) - sgn(t) grad F(x)|
  double dual_unit = 0;        // |F(grad F°) - 1|, |F°(grad F) - 1|
  double inverse_map = 0;      // |F(x) grad F°(grad F(x)) - x| / |x|, and the dual
  double homogeneity = 0;      // |F(tx) - |t| F(x)| / F(x)
  double convexity = 0;        // midpoint violation, relative
  double gradient_constant = 0;  // the C used for gradient_bounds
};

GaugeIdentityResiduals gauge_identity_residuals(const Anisotropy& aniso, int samples,
                                                std::uint64_t seed);

}  // namespace anitm
