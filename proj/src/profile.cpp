#include "anitm/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "anitm/errors.hpp"
#include "text.hpp"

namespace anitm {

RadialProfile::RadialProfile(std::vector<double> radii, std::vector<double> values)
    : radii_(std::move(radii)), values_(std::move(values)) {
  if (radii_.size() < 2) throw ValidationError("profile: need at least two knots");
  if (radii_.size() != values_.size())
    throw ValidationError("profile: " + std::to_string(radii_.size()) + " radii but " +
                          std::to_string(values_.size()) + " values");
  if (radii_.front() != 0.0) throw ValidationError("profile: first knot must be r = 0");
  for (std::size_t k = 0; k < radii_.size(); ++k) {
    if (!std::isfinite(radii_[k]) || !std::isfinite(values_[k]))
      throw ValidationError("profile: non-finite entry at knot " + std::to_string(k));
    if (values_[k] < 0.0) throw ValidationError("profile: negative value at knot " + std::to_string(k));
    if (k > 0 && !(radii_[k] > radii_[k - 1]))
      throw ValidationError("profile: radii must be strictly increasing (knot " + std::to_string(k) + ")");
    if (k > 0 && values_[k] > values_[k - 1])
      throw ValidationError("profile: values must be nonincreasing (knot " + std::to_string(k) + ")");
  }
  if (values_.back() != 0.0) throw ValidationError("profile: value at the last knot must be 0");
}

RadialProfile RadialProfile::zero(double radius) { return RadialProfile({0.0, radius}, {0.0, 0.0}); }

RadialProfile RadialProfile::sample(std::vector<double> radii, const std::function<double(double)>& g) {
  std::vector<double> values(radii.size());
  for (std::size_t k = 0; k < radii.size(); ++k) values[k] = g(radii[k]);
  if (!values.empty()) values.back() = 0.0;
  return RadialProfile(std::move(radii), std::move(values));
}

double RadialProfile::operator()(double r) const {
  if (r >= radii_.back()) return 0.0;
  if (r <= 0.0) return values_.front();
  const auto it = std::upper_bound(radii_.begin(), radii_.end(), r);
  const std::size_t k = static_cast<std::size_t>(it - radii_.begin()) - 1;
  const double w = (r - radii_[k]) / (radii_[k + 1] - radii_[k]);
  return values_[k] + w * (values_[k + 1] - values_[k]);
}

double RadialProfile::slope(int k) const {
  return (values_[k + 1] - values_[k]) / (radii_[k + 1] - radii_[k]);
}

RadialProfile RadialProfile::scaled(double c) const {
  if (!(c >= 0.0) || !std::isfinite(c)) throw ValidationError("profile: scale factor must be finite and >= 0");
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return RadialProfile(radii_, std::move(v));
}

RadialProfile RadialProfile::dilated(double s) const {
  if (!(s > 0.0) || !std::isfinite(s)) throw ValidationError("profile: dilation must be finite and > 0");
  std::vector<double> r(radii_);
  for (double& x : r) x /= s;
  return RadialProfile(std::move(r), values_);
}

std::vector<double> geometric_knots(int intervals, double r_min, double radius) {
  if (intervals < 2) throw ValidationError("knots: need at least 2 intervals");
  if (!(r_min > 0.0) || !(radius > r_min)) throw ValidationError("knots: need 0 < r_min < R");
  std::vector<double> r(intervals + 1);
  r[0] = 0.0;
  const double ratio = std::pow(radius / r_min, 1.0 / (intervals - 1));
  for (int k = 1; k <= intervals; ++k) r[k] = r_min * std::pow(ratio, k - 1);
  r[intervals] = radius;
  return r;
}

std::vector<double> uniform_knots(int intervals, double radius) {
  if (intervals < 1) throw ValidationError("knots: need at least 1 interval");
  if (!(radius > 0.0)) throw ValidationError("knots: radius must be positive");
  std::vector<double> r(intervals + 1);
  for (int k = 0; k <= intervals; ++k) r[k] = radius * k / intervals;
  r[intervals] = radius;
  return r;
}

RadialProfile read_profile_text(const std::string& text, int* dimension) {
  std::istringstream is(detail::strip_comments(text));
  int n = 0, m = 0;
  double radius = 0.0;
  if (!(is >> n >> radius >> m)) throw ValidationError("profile text: header must be `N R M`");
  if (n < 2) throw ValidationError("profile text: N must be >= 2");
  if (m < 1) throw ValidationError("profile text: M must be >= 1");
  std::vector<double> r(m + 1), g(m + 1);
  for (int k = 0; k <= m; ++k) {
    if (!(is >> r[k] >> g[k]))
      throw ValidationError("profile text: expected " + std::to_string(m + 1) + " `r g` lines, got " +
                            std::to_string(k));
  }
  if (std::abs(r[m] - radius) > 1e-12 * std::max(1.0, radius))
    throw ValidationError("profile text: last radius does not match header R");
  if (dimension) *dimension = n;
  return RadialProfile(std::move(r), std::move(g));
}

std::string write_profile_text(const RadialProfile& g, int dimension) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << dimension << ' ' << g.support_radius() << ' ' << g.intervals() << '\n';
  for (int k = 0; k <= g.intervals(); ++k) os << g.radii()[k] << ' ' << g.values()[k] << '\n';
  return os.str();
}

RadialProfile load_profile(const std::string& path, int* dimension) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open profile file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return read_profile_text(buf.str(), dimension);
}

void save_profile(const RadialProfile& g, int dimension, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write profile file: " + path);
  out << write_profile_text(g, dimension);
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace anitm
