#include "anitm/finsler.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "anitm/errors.hpp"
#include "anitm/quadrature.hpp"

namespace anitm {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPi = std::numbers::pi;

// Coarse search resolution for numerical polars.
constexpr int kPolarDirections2d = 720;
constexpr int kPolarThetas3d = 32;
constexpr int kPolarPhis3d = 64;
constexpr int kGoldenSteps = 20;

// Trapezoid/Gauss resolution for smooth (closed-form) polars.
constexpr int kTrapezoidNodes = 4096;
constexpr int kSphereThetaNodes = 64;
constexpr int kSpherePhiNodes = 128;

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t;
}

double unit_ball_volume(int n) {
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

// Solves the cyclic tridiagonal system a_k m_{k-1} + b_k m_k + c_k m_{k+1} = d_k.
std::vector<double> solve_cyclic(std::vector<double> a, std::vector<double> b,
                                 std::vector<double> c, std::vector<double> d) {
  const std::size_t n = b.size();
  if (n == 1) return {d[0] / (a[0] + b[0] + c[0])};
  if (n == 2) {
    const double m00 = b[0], m01 = a[0] + c[0], m10 = a[1] + c[1], m11 = b[1];
    const double det = m00 * m11 - m01 * m10;
    return {(d[0] * m11 - m01 * d[1]) / det, (m00 * d[1] - m10 * d[0]) / det};
  }
  // Sherman-Morrison on top of the Thomas algorithm.
  const double gamma = -b[0];
  const double alpha = c[n - 1];  // bottom-left corner
  const double beta = a[0];       // top-right corner
  b[0] -= gamma;
  b[n - 1] -= alpha * beta / gamma;
  auto thomas = [&](std::vector<double> rhs) {
    std::vector<double> cp(n), x(n);
    cp[0] = c[0] / b[0];
    rhs[0] /= b[0];
    for (std::size_t i = 1; i < n; ++i) {
      const double m = b[i] - a[i] * cp[i - 1];
      cp[i] = c[i] / m;
      rhs[i] = (rhs[i] - a[i] * rhs[i - 1]) / m;
    }
    x[n - 1] = rhs[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = rhs[i] - cp[i] * x[i + 1];
    return x;
  };
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = alpha;
  const auto x = thomas(d);
  const auto z = thomas(u);
  const double fact = (x[0] + beta * x[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] - fact * z[i];
  return out;
}

template <class F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, int steps) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  double best_x = f1 > f2 ? x1 : x2, best_f = std::max(f1, f2);
  for (int i = 0; i < steps; ++i) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + r * (hi - lo);
      f2 = f(x2);
      if (f2 > best_f) best_f = f2, best_x = x2;
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - r * (hi - lo);
      f1 = f(x1);
      if (f1 > best_f) best_f = f1, best_x = x1;
    }
  }
  return {best_x, best_f};
}

std::array<double, 3> sphere_point(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

}  // namespace

struct FinslerNorm::Sampled2d {
  std::vector<double> thetas;
  std::vector<double> values;
  Interpolation rule = Interpolation::cubic;
  std::vector<double> second;  // spline second derivatives
  std::vector<std::array<double, 2>> normals;  // polygon edge normals
  bool uniform = false;
  double spacing = 0.0;

  std::size_t locate(double& t) const {
    const std::size_t n = thetas.size();
    if (t < thetas[0]) t += kTwoPi;
    if (uniform) {
      auto k = static_cast<std::size_t>((t - thetas[0]) / spacing);
      return std::min(k, n - 1);
    }
    auto it = std::upper_bound(thetas.begin(), thetas.end(), t);
    return static_cast<std::size_t>(it - thetas.begin()) - 1;
  }

  double width(std::size_t k) const {
    return k + 1 < thetas.size() ? thetas[k + 1] - thetas[k] : thetas[0] + kTwoPi - thetas[k];
  }

  // Gauge on the unit circle at angle t.
  double unit_value(double t) const {
    t = wrap_angle(t);
    const std::size_t k = locate(t);
    const std::size_t k1 = (k + 1) % thetas.size();
    const double h = width(k);
    if (rule == Interpolation::polygon) {
      return normals[k][0] * std::cos(t) + normals[k][1] * std::sin(t);
    }
    const double lo = t - thetas[k];
    const double hi = h - lo;
    return (second[k] * hi * hi * hi + second[k1] * lo * lo * lo) / (6.0 * h) +
           (values[k] / h - second[k] * h / 6.0) * hi + (values[k1] / h - second[k1] * h / 6.0) * lo;
  }
};

struct FinslerNorm::Sampled3d {
  int n_theta = 0;
  int n_phi = 0;
  std::vector<double> values;

  double unit_value(double theta, double phi) const {
    const double dt = kPi / (n_theta - 1);
    const double dp = kTwoPi / n_phi;
    theta = std::clamp(theta, 0.0, kPi);
    phi = wrap_angle(phi);
    int i = std::min(static_cast<int>(theta / dt), n_theta - 2);
    int j = std::min(static_cast<int>(phi / dp), n_phi - 1);
    const double s = theta / dt - i;
    const double u = phi / dp - j;
    const int j1 = (j + 1) % n_phi;
    const double v00 = values[i * n_phi + j], v01 = values[i * n_phi + j1];
    const double v10 = values[(i + 1) * n_phi + j], v11 = values[(i + 1) * n_phi + j1];
    return (1 - s) * ((1 - u) * v00 + u * v01) + s * ((1 - u) * v10 + u * v11);
  }
};

FinslerNorm FinslerNorm::euclidean(int dimension) {
  if (dimension < 2) throw ValidationError("gauge dimension must be >= 2");
  FinslerNorm f;
  f.dimension_ = dimension;
  f.kind_ = GaugeKind::euclidean;
  f.lower_ = f.upper_ = 1.0;
  return f;
}

FinslerNorm FinslerNorm::pnorm(int dimension, double exponent) {
  if (dimension < 2) throw ValidationError("gauge dimension must be >= 2");
  if (!(exponent > 1.0) || !std::isfinite(exponent)) throw ValidationError("pnorm: exponent p must lie in (1, inf)");
  FinslerNorm f;
  f.dimension_ = dimension;
  f.kind_ = GaugeKind::pnorm;
  f.exponent_ = exponent;
  // |x|_p vs |x|_2
  const double d = std::pow(static_cast<double>(dimension), 1.0 / exponent - 0.5);
  f.lower_ = std::min(1.0, d);
  f.upper_ = std::max(1.0, d);
  return f;
}

FinslerNorm FinslerNorm::ellipse(int dimension, std::vector<double> matrix) {
  if (dimension < 2) throw ValidationError("gauge dimension must be >= 2");
  if (matrix.size() != static_cast<std::size_t>(dimension * dimension))
    throw ValidationError("ellipse: matrix must be N x N");
  Eigen::Map<const Eigen::MatrixXd> a(matrix.data(), dimension, dimension);
  if (!a.isApprox(a.transpose(), 1e-12)) throw ValidationError("ellipse: matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
  if (eig.eigenvalues().minCoeff() <= 0.0) throw ValidationError("ellipse: matrix must be positive definite");
  FinslerNorm f;
  f.dimension_ = dimension;
  f.kind_ = GaugeKind::ellipse;
  f.matrix_ = std::move(matrix);
  f.lower_ = std::sqrt(eig.eigenvalues().minCoeff());
  f.upper_ = std::sqrt(eig.eigenvalues().maxCoeff());
  return f;
}

FinslerNorm FinslerNorm::sampled_2d(std::vector<double> thetas, std::vector<double> values,
                                    Interpolation rule) {
  if (thetas.size() != values.size()) throw ValidationError("sampled: thetas and values differ in length");
  if (thetas.size() < 8) throw ValidationError("sampled: need at least 8 directions");
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (!(thetas[i] >= 0.0 && thetas[i] < kTwoPi)) throw ValidationError("sampled: thetas must lie in [0, 2pi)");
    if (i > 0 && !(thetas[i] > thetas[i - 1])) throw ValidationError("sampled: thetas must be strictly increasing");
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) throw ValidationError("sampled: values must be positive");
  }
  auto s = std::make_shared<Sampled2d>();
  const std::size_t n = thetas.size();
  s->thetas = std::move(thetas);
  s->values = std::move(values);
  s->rule = rule;
  s->spacing = kTwoPi / n;
  s->uniform = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(s->thetas[i] - (s->thetas[0] + i * s->spacing)) > 1e-12) s->uniform = false;
  }
  if (rule == Interpolation::cubic) {
    std::vector<double> a(n), b(n), c(n), d(n);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t km = (k + n - 1) % n, kp = (k + 1) % n;
      const double hm = s->width(km), hk = s->width(k);
      a[k] = hm;
      b[k] = 2.0 * (hm + hk);
      c[k] = hk;
      d[k] = 6.0 * ((s->values[kp] - s->values[k]) / hk - (s->values[k] - s->values[km]) / hm);
    }
    s->second = solve_cyclic(a, b, c, d);
  } else {
    s->normals.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t kp = (k + 1) % n;
      const double x0 = std::cos(s->thetas[k]) / s->values[k], y0 = std::sin(s->thetas[k]) / s->values[k];
      const double x1 = std::cos(s->thetas[kp]) / s->values[kp], y1 = std::sin(s->thetas[kp]) / s->values[kp];
      const double det = x0 * y1 - x1 * y0;
      if (!(det > 0.0)) throw ValidationError("sampled: polygon directions must span less than pi per step");
      s->normals[k] = {(y1 - y0) / det, (x0 - x1) / det};
    }
  }
  FinslerNorm f;
  f.dimension_ = 2;
  f.kind_ = GaugeKind::sampled;
  f.s2_ = std::move(s);
  // Evenness: F(-x) = F(x).
  for (std::size_t i = 0; i < n; ++i) {
    const double t = f.s2_->thetas[i];
    const double there = f.s2_->unit_value(t + kPi);
    if (std::abs(there - f.s2_->values[i]) > 1e-6 * f.s2_->values[i])
      throw ValidationError("sampled: gauge must be even (F(-x) = F(x))");
  }
  f.compute_bounds();
  return f;
}

FinslerNorm FinslerNorm::sampled_3d(int n_theta, int n_phi, std::vector<double> values) {
  if (n_theta < 3 || n_phi < 4) throw ValidationError("sampled_3d: grid too small");
  if (values.size() != static_cast<std::size_t>(n_theta) * n_phi)
    throw ValidationError("sampled_3d: values must have n_theta * n_phi entries");
  for (double v : values)
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError("sampled_3d: values must be positive");
  auto s = std::make_shared<Sampled3d>();
  s->n_theta = n_theta;
  s->n_phi = n_phi;
  s->values = std::move(values);
  FinslerNorm f;
  f.dimension_ = 3;
  f.kind_ = GaugeKind::sampled;
  f.s3_ = std::move(s);
  f.compute_bounds();
  return f;
}

Interpolation FinslerNorm::interpolation() const {
  return s2_ ? s2_->rule : Interpolation::cubic;
}

const std::vector<double>& FinslerNorm::sample_thetas() const {
  static const std::vector<double> empty;
  return s2_ ? s2_->thetas : empty;
}

const std::vector<double>& FinslerNorm::sample_values() const {
  static const std::vector<double> empty;
  if (s2_) return s2_->values;
  if (s3_) return s3_->values;
  return empty;
}

int FinslerNorm::sample_rows() const { return s3_ ? s3_->n_theta : 0; }
int FinslerNorm::sample_cols() const { return s3_ ? s3_->n_phi : 0; }

void FinslerNorm::compute_bounds() {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  if (dimension_ == 2) {
    constexpr int kDirs = 3600;
    for (int i = 0; i < kDirs; ++i) {
      const double t = kTwoPi * i / kDirs;
      const std::array<double, 2> e{std::cos(t), std::sin(t)};
      const double v = eval(e);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    for (double v : sample_values()) lo = std::min(lo, v), hi = std::max(hi, v);
  } else {
    constexpr int kT = 90, kP = 180;
    for (int i = 0; i <= kT; ++i) {
      for (int j = 0; j < kP; ++j) {
        const auto e = sphere_point(kPi * i / kT, kTwoPi * j / kP);
        const double v = eval(e);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  }
  lower_ = lo;
  upper_ = hi;
}

double FinslerNorm::eval_sampled_2d(double x, double y) const {
  const double r = std::hypot(x, y);
  if (r == 0.0) return 0.0;
  if (s2_->rule == Interpolation::polygon) {
    double t = wrap_angle(std::atan2(y, x));
    const std::size_t k = s2_->locate(t);
    return s2_->normals[k][0] * x + s2_->normals[k][1] * y;
  }
  return r * s2_->unit_value(std::atan2(y, x));
}

double FinslerNorm::eval_sampled_3d(std::span<const double> x) const {
  const double r = norm2(x);
  if (r == 0.0) return 0.0;
  const double theta = std::acos(std::clamp(x[2] / r, -1.0, 1.0));
  const double phi = std::atan2(x[1], x[0]);
  return r * s3_->unit_value(theta, phi);
}

double FinslerNorm::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dimension_)
    throw ValidationError("gauge evaluated on a point of dimension " + std::to_string(x.size()) +
                          ", expected " + std::to_string(dimension_));
  switch (kind_) {
    case GaugeKind::euclidean:
      return norm2(x);
    case GaugeKind::pnorm: {
      double m = 0.0;
      for (double v : x) m = std::max(m, std::abs(v));
      if (m == 0.0) return 0.0;
      double s = 0.0;
      for (double v : x) s += std::pow(std::abs(v) / m, exponent_);
      return m * std::pow(s, 1.0 / exponent_);
    }
    case GaugeKind::ellipse: {
      double s = 0.0;
      const int n = dimension_;
      for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += matrix_[i * n + j] * x[j];
        s += x[i] * row;
      }
      return std::sqrt(std::max(s, 0.0));
    }
    case GaugeKind::sampled:
      return s2_ ? eval_sampled_2d(x[0], x[1]) : eval_sampled_3d(x);
  }
  return 0.0;
}

std::vector<double> FinslerNorm::gradient(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dimension_)
    throw ValidationError("gradient: dimension mismatch");
  const double r = norm2(x);
  if (r < 1e-12) throw DomainError("gradient: gauge is not differentiable at the origin");
  const int n = dimension_;
  std::vector<double> g(n);
  switch (kind_) {
    case GaugeKind::euclidean:
      for (int i = 0; i < n; ++i) g[i] = x[i] / r;
      return g;
    case GaugeKind::pnorm: {
      const double f = eval(x);
      for (int i = 0; i < n; ++i) {
        const double t = std::abs(x[i]) / f;
        g[i] = std::copysign(std::pow(t, exponent_ - 1.0), x[i]);
      }
      return g;
    }
    case GaugeKind::ellipse: {
      const double f = eval(x);
      for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += matrix_[i * n + j] * x[j];
        g[i] = row / f;
      }
      return g;
    }
    case GaugeKind::sampled: {
      const double h = 1e-5 * r;
      std::vector<double> y(x.begin(), x.end());
      for (int i = 0; i < n; ++i) {
        y[i] = x[i] + h;
        const double fp = eval(y);
        y[i] = x[i] - h;
        const double fm = eval(y);
        y[i] = x[i];
        g[i] = (fp - fm) / (2.0 * h);
      }
      return g;
    }
  }
  return g;
}

FinslerNorm FinslerNorm::polar() const {
  switch (kind_) {
    case GaugeKind::euclidean:
      return euclidean(dimension_);
    case GaugeKind::pnorm:
      return pnorm(dimension_, exponent_ / (exponent_ - 1.0));
    case GaugeKind::ellipse: {
      const int n = dimension_;
      Eigen::Map<const Eigen::MatrixXd> a(matrix_.data(), n, n);
      Eigen::MatrixXd inv = a.llt().solve(Eigen::MatrixXd::Identity(n, n));
      inv = 0.5 * (inv + inv.transpose());
      return ellipse(n, std::vector<double>(inv.data(), inv.data() + n * n));
    }
    case GaugeKind::sampled:
      break;
  }

  if (s2_) {
    // Candidate directions: a uniform coarse grid plus the gauge's own sample directions
    // (the sup is attained at a vertex for polygonal gauges).
    std::vector<double> candidates;
    for (int i = 0; i < kPolarDirections2d; ++i) candidates.push_back(kTwoPi * i / kPolarDirections2d);
    candidates.insert(candidates.end(), s2_->thetas.begin(), s2_->thetas.end());
    std::vector<double> cand_f(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) cand_f[i] = s2_->unit_value(candidates[i]);
    const double window = kTwoPi / kPolarDirections2d;

    std::vector<double> out(s2_->thetas.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
      const double t = s2_->thetas[k];
      const double cx = std::cos(t), sy = std::sin(t);
      double best = -1.0, best_phi = 0.0;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        const double ratio = (cx * std::cos(candidates[i]) + sy * std::sin(candidates[i])) / cand_f[i];
        if (ratio > best) best = ratio, best_phi = candidates[i];
      }
      auto ratio_at = [&](double phi) { return (cx * std::cos(phi) + sy * std::sin(phi)) / s2_->unit_value(phi); };
      const auto refined = golden_max(ratio_at, best_phi - window, best_phi + window, kGoldenSteps);
      out[k] = std::max(best, refined.second);
    }
    return sampled_2d(s2_->thetas, std::move(out), s2_->rule);
  }

  // 3D sampled gauge.
  const int nt = s3_->n_theta, np = s3_->n_phi;
  std::vector<std::array<double, 3>> cand_dir;
  std::vector<double> cand_f;
  auto add_candidate = [&](double th, double ph) {
    cand_dir.push_back(sphere_point(th, ph));
    cand_f.push_back(s3_->unit_value(th, ph));
  };
  for (int i = 0; i < kPolarThetas3d; ++i)
    for (int j = 0; j < kPolarPhis3d; ++j) add_candidate(kPi * (i + 0.5) / kPolarThetas3d, kTwoPi * j / kPolarPhis3d);
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < np; ++j) add_candidate(kPi * i / (nt - 1), kTwoPi * j / np);

  std::vector<double> out(static_cast<std::size_t>(nt) * np);
  const double wt = kPi / kPolarThetas3d, wp = kTwoPi / kPolarPhis3d;
  for (int i = 0; i < nt; ++i) {
    for (int j = 0; j < np; ++j) {
      const auto x = sphere_point(kPi * i / (nt - 1), kTwoPi * j / np);
      double best = -1.0;
      std::size_t best_idx = 0;
      for (std::size_t c = 0; c < cand_dir.size(); ++c) {
        const double ratio = (x[0] * cand_dir[c][0] + x[1] * cand_dir[c][1] + x[2] * cand_dir[c][2]) / cand_f[c];
        if (ratio > best) best = ratio, best_idx = c;
      }
      const auto& d = cand_dir[best_idx];
      double th = std::acos(std::clamp(d[2], -1.0, 1.0));
      double ph = std::atan2(d[1], d[0]);
      auto ratio_at = [&](double a, double b) {
        const auto e = sphere_point(a, b);
        return (x[0] * e[0] + x[1] * e[1] + x[2] * e[2]) / s3_->unit_value(a, b);
      };
      for (int round = 0; round < 2; ++round) {
        const auto rt = golden_max([&](double a) { return ratio_at(a, ph); }, th - wt, th + wt, kGoldenSteps);
        if (rt.second > best) best = rt.second, th = rt.first;
        const auto rp = golden_max([&](double b) { return ratio_at(th, b); }, ph - wp, ph + wp, kGoldenSteps);
        if (rp.second > best) best = rp.second, ph = rp.first;
      }
      out[static_cast<std::size_t>(i) * np + j] = best;
    }
  }
  return sampled_3d(nt, np, std::move(out));
}

std::string FinslerNorm::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case GaugeKind::euclidean: os << "euclidean"; break;
    case GaugeKind::pnorm: os << "pnorm(p=" << exponent_ << ")"; break;
    case GaugeKind::ellipse: os << "ellipse"; break;
    case GaugeKind::sampled:
      os << "sampled(" << (s2_ ? std::to_string(s2_->thetas.size()) + " directions" : "3d grid")
         << (interpolation() == Interpolation::polygon ? ", polygon" : "") << ")";
      break;
  }
  os << ", N=" << dimension_;
  return os.str();
}

bool WulffBall::contains(std::span<const double> x) const {
  std::vector<double> d(x.begin(), x.end());
  for (std::size_t i = 0; i < d.size() && i < center.size(); ++i) d[i] -= center[i];
  return polar(d) <= radius;
}

namespace {

// Angular quadrature on [0, 2pi) for integrands built from a 2D gauge: per-interval
// Gauss rules between the sample directions of a sampled gauge (kinks sit on nodes),
// otherwise the periodic trapezoid rule.
std::vector<std::pair<double, double>> angular_rule(const FinslerNorm& g) {
  std::vector<std::pair<double, double>> rule;
  if (g.kind() == GaugeKind::sampled) {
    const auto& th = g.sample_thetas();
    const auto& gl = gauss_legendre(8);
    for (std::size_t k = 0; k < th.size(); ++k) {
      const double a = th[k];
      const double b = k + 1 < th.size() ? th[k + 1] : th[0] + kTwoPi;
      for (std::size_t i = 0; i < gl.nodes.size(); ++i)
        rule.emplace_back(0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i], 0.5 * (b - a) * gl.weights[i]);
    }
  } else {
    for (int i = 0; i < kTrapezoidNodes; ++i) rule.emplace_back(kTwoPi * i / kTrapezoidNodes, kTwoPi / kTrapezoidNodes);
  }
  return rule;
}

struct SphereNode {
  double theta, phi, weight;  // weight includes sin(theta) only when `with_jacobian`
};

// Product rule over (theta, phi) on [0, pi] x [0, 2pi).
std::vector<SphereNode> sphere_rule(const FinslerNorm& g, bool with_jacobian) {
  std::vector<SphereNode> rule;
  if (g.kind() == GaugeKind::sampled) {
    const int nt = g.sample_rows(), np = g.sample_cols();
    const auto& gl = gauss_legendre(4);
    const double dt = kPi / (nt - 1), dp = kTwoPi / np;
    for (int i = 0; i + 1 < nt; ++i)
      for (int j = 0; j < np; ++j)
        for (std::size_t a = 0; a < gl.nodes.size(); ++a)
          for (std::size_t b = 0; b < gl.nodes.size(); ++b) {
            const double th = dt * (i + 0.5 + 0.5 * gl.nodes[a]);
            const double ph = dp * (j + 0.5 + 0.5 * gl.nodes[b]);
            const double w = 0.25 * dt * dp * gl.weights[a] * gl.weights[b] * (with_jacobian ? std::sin(th) : 1.0);
            rule.push_back({th, ph, w});
          }
  } else {
    const auto& gl = gauss_legendre(kSphereThetaNodes);
    for (std::size_t a = 0; a < gl.nodes.size(); ++a) {
      const double th = 0.5 * kPi * (1.0 + gl.nodes[a]);
      for (int j = 0; j < kSpherePhiNodes; ++j) {
        const double w = 0.5 * kPi * gl.weights[a] * kTwoPi / kSpherePhiNodes * (with_jacobian ? std::sin(th) : 1.0);
        rule.push_back({th, kTwoPi * j / kSpherePhiNodes, w});
      }
    }
  }
  return rule;
}

}  // namespace

double wulff_volume_of_polar(const FinslerNorm& polar) {
  const int n = polar.dimension();
  if (n == 2) {
    double sum = 0.0;
    for (const auto& [t, w] : angular_rule(polar)) {
      const std::array<double, 2> e{std::cos(t), std::sin(t)};
      const double v = polar(e);
      sum += w / (v * v);
    }
    return 0.5 * sum;
  }
  if (n == 3) {
    double sum = 0.0;
    for (const auto& node : sphere_rule(polar, true)) {
      const double v = polar(sphere_point(node.theta, node.phi));
      sum += node.weight / (v * v * v);
    }
    return sum / 3.0;
  }
  switch (polar.kind()) {
    case GaugeKind::euclidean:
      return unit_ball_volume(n);
    case GaugeKind::pnorm: {
      const double p = polar.exponent();
      return std::pow(2.0 * std::tgamma(1.0 + 1.0 / p), n) / std::tgamma(1.0 + n / p);
    }
    case GaugeKind::ellipse: {
      Eigen::Map<const Eigen::MatrixXd> a(polar.matrix().data(), n, n);
      return unit_ball_volume(n) / std::sqrt(a.determinant());
    }
    case GaugeKind::sampled:
      break;
  }
  throw ValidationError("wulff_volume: sampled gauges are supported in dimensions 2 and 3 only");
}

double wulff_volume(const FinslerNorm& gauge) { return wulff_volume_of_polar(gauge.polar()); }

double sharp_constant_from_volume(int dimension, double kappa) {
  const double n = dimension;
  return std::pow(n, n / (n - 1.0)) * std::pow(kappa, 1.0 / (n - 1.0));
}

double sharp_constant(const FinslerNorm& gauge) {
  return sharp_constant_from_volume(gauge.dimension(), wulff_volume(gauge));
}

Anisotropy::Anisotropy(FinslerNorm gauge)
    : gauge_(std::move(gauge)), polar_(gauge_.polar()), kappa_(wulff_volume_of_polar(polar_)),
      sharp_(sharp_constant_from_volume(gauge_.dimension(), kappa_)) {}

double bipolar_residual(const FinslerNorm& gauge, int sample_count, std::uint64_t seed) {
  if (sample_count < 1) throw ValidationError("bipolar_residual: sample_count must be >= 1");
  const FinslerNorm bipolar = gauge.polar().polar();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> x(gauge.dimension());
  double worst = 0.0;
  for (int s = 0; s < sample_count; ++s) {
    for (double& v : x) v = normal(rng);
    const double f = gauge(x);
    if (f == 0.0) continue;
    worst = std::max(worst, std::abs(bipolar(x) - f) / f);
  }
  return worst;
}

double coarea_surface_check(const Anisotropy& aniso, double r) {
  if (!(r > 0.0)) throw ValidationError("coarea_surface_check: radius must be positive");
  const FinslerNorm& p = aniso.polar();
  const int n = aniso.dimension();
  const double expected = n * aniso.kappa() * std::pow(r, n - 1);
  double integral = 0.0;
  if (n == 2) {
    constexpr double dt = 1e-6;
    auto boundary = [&](double t) {
      const std::array<double, 2> e{std::cos(t), std::sin(t)};
      const double s = r / p(e);
      return std::array<double, 2>{s * e[0], s * e[1]};
    };
    for (const auto& [t, w] : angular_rule(p)) {
      const auto xp = boundary(t + dt), xm = boundary(t - dt), x = boundary(t);
      const double speed = std::hypot(xp[0] - xm[0], xp[1] - xm[1]) / (2.0 * dt);
      const auto g = p.gradient(x);
      integral += w * speed / std::hypot(g[0], g[1]);
    }
  } else if (n == 3) {
    constexpr double d = 1e-6;
    auto boundary = [&](double th, double ph) {
      const auto e = sphere_point(th, ph);
      const double s = r / p(e);
      return std::array<double, 3>{s * e[0], s * e[1], s * e[2]};
    };
    for (const auto& node : sphere_rule(p, false)) {
      const auto xt1 = boundary(node.theta + d, node.phi), xt0 = boundary(node.theta - d, node.phi);
      const auto xp1 = boundary(node.theta, node.phi + d), xp0 = boundary(node.theta, node.phi - d);
      std::array<double, 3> dt{}, dp{};
      for (int i = 0; i < 3; ++i) {
        dt[i] = (xt1[i] - xt0[i]) / (2 * d);
        dp[i] = (xp1[i] - xp0[i]) / (2 * d);
      }
      const std::array<double, 3> cross{dt[1] * dp[2] - dt[2] * dp[1], dt[2] * dp[0] - dt[0] * dp[2],
                                        dt[0] * dp[1] - dt[1] * dp[0]};
      const double area = norm2(cross);
      const auto g = p.gradient(boundary(node.theta, node.phi));
      integral += node.weight * area / norm2(g);
    }
  } else {
    throw ValidationError("coarea_surface_check: dimension must be 2 or 3");
  }
  return std::abs(integral - expected) / expected;
}

GaugeIdentityResiduals gauge_identity_residuals(const Anisotropy& aniso, int samples, std::uint64_t seed) {
  const FinslerNorm& f = aniso.gauge();
  const FinslerNorm& fo = aniso.polar();
  const int n = aniso.dimension();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> logscale(-2.0, 2.0);
  auto random_point = [&] {
    std::vector<double> x(n);
    const double s = std::exp(logscale(rng));
    for (double& v : x) v = s * normal(rng);
    return x;
  };
  auto dist = [](std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
  };

  GaugeIdentityResiduals res;
  // Gradient bounds: a_F <= |grad F| <= b_F and 1/b_F <= |grad F°| <= 1/a_F.
  const double c = std::max(f.upper_bound(), 1.0 / f.lower_bound());
  res.gradient_constant = c;
  for (int s = 0; s < samples; ++s) {
    const auto x = random_point();
    const auto y = random_point();
    std::vector<double> xy(n), mid(n);
    for (int i = 0; i < n; ++i) xy[i] = x[i] + y[i], mid[i] = 0.5 * xy[i];
    const double fx = f(x), fy = f(y), fxy = f(xy);
    res.triangle = std::max(res.triangle, (fxy - fx - fy) / (fx + fy));
    res.reverse_triangle = std::max(res.reverse_triangle, (std::abs(fx - fy) - fxy) / (fx + fy));
    res.convexity = std::max(res.convexity, (f(mid) - 0.5 * (fx + fy)) / (fx + fy));

    double t = std::exp(logscale(rng));
    if (s % 2) t = -t;
    std::vector<double> tx(n);
    for (int i = 0; i < n; ++i) tx[i] = t * x[i];
    res.homogeneity = std::max(res.homogeneity, std::abs(f(tx) - std::abs(t) * fx) / fx);

    const auto gf = f.gradient(x);
    const auto gfo = fo.gradient(x);
    const double fox = fo(x);
    double dot_f = 0, dot_fo = 0;
    for (int i = 0; i < n; ++i) dot_f += x[i] * gf[i], dot_fo += x[i] * gfo[i];
    res.euler = std::max({res.euler, std::abs(dot_f - fx) / fx, std::abs(dot_fo - fox) / fox});

    const double ngf = norm2(gf), ngfo = norm2(gfo);
    auto outside = [&](double v) { return std::max({0.0, 1.0 / c - v, v - c}); };
    res.gradient_bounds = std::max({res.gradient_bounds, outside(ngf), outside(ngfo)});

    const auto gtx = f.gradient(tx);
    std::vector<double> expect(n);
    for (int i = 0; i < n; ++i) expect[i] = (t > 0 ? 1.0 : -1.0) * gf[i];
    res.sign_symmetry = std::max(res.sign_symmetry, dist(gtx, expect) / ngf);

    res.dual_unit = std::max({res.dual_unit, std::abs(f(gfo) - 1.0), std::abs(fo(gf) - 1.0)});

    const auto back = fo.gradient(gf);
    const auto back_o = f.gradient(gfo);
    std::vector<double> r1(n), r2(n);
    for (int i = 0; i < n; ++i) r1[i] = fx * back[i], r2[i] = fox * back_o[i];
    const double nx = norm2(x);
    res.inverse_map = std::max({res.inverse_map, dist(r1, x) / nx, dist(r2, x) / nx});
  }
  return res;
}

}  // namespace anitm
