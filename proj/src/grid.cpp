#include "anitm/grid.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "anitm/errors.hpp"
#include "text.hpp"
#include "json.hpp"

namespace anitm {

GridFunction::GridFunction(int dimension, double half_width, int resolution, std::vector<double> values)
    : dimension_(dimension), half_width_(half_width), resolution_(resolution), values_(std::move(values)) {
  if (dimension != 2 && dimension != 3) throw ValidationError("grid: dimension must be 2 or 3");
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw ValidationError("grid: half-width L must be positive");
  if (resolution < 3) throw ValidationError("grid: resolution M must be >= 3");
  std::size_t expected = 1;
  for (int d = 0; d < dimension; ++d) expected *= static_cast<std::size_t>(resolution);
  if (values_.size() != expected)
    throw ValidationError("grid: expected " + std::to_string(expected) + " values, got " +
                          std::to_string(values_.size()));
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] >= 0.0) || !std::isfinite(values_[i]))
      throw ValidationError("grid: values must be finite and nonnegative (index " + std::to_string(i) + ")");
    if (values_[i] != 0.0 && on_boundary(i))
      throw ValidationError("grid: boundary layer must be zero (index " + std::to_string(i) + ")");
  }
}

GridFunction GridFunction::sample(int dimension, double half_width, int resolution,
                                  const std::function<double(std::span<const double>)>& f) {
  GridFunction g = zeros(dimension, half_width, resolution);
  std::vector<double> values(g.size());
  std::vector<double> x(dimension);
  for (std::size_t i = 0; i < values.size(); ++i) {
    g.center(i, x);
    values[i] = f(x);
  }
  return GridFunction(dimension, half_width, resolution, std::move(values));
}

GridFunction GridFunction::zeros(int dimension, double half_width, int resolution) {
  std::size_t n = 1;
  for (int d = 0; d < dimension; ++d) n *= static_cast<std::size_t>(std::max(resolution, 0));
  return GridFunction(dimension, half_width, resolution, std::vector<double>(n, 0.0));
}

double GridFunction::cell_volume() const { return std::pow(cell_size(), dimension_); }

void GridFunction::center(std::size_t i, std::span<double> out) const {
  const double h = cell_size();
  for (int d = dimension_ - 1; d >= 0; --d) {
    const std::size_t k = i % resolution_;
    i /= resolution_;
    out[d] = -half_width_ + (k + 0.5) * h;
  }
}

std::vector<double> GridFunction::center(std::size_t i) const {
  std::vector<double> x(dimension_);
  center(i, x);
  return x;
}

bool GridFunction::on_boundary(std::size_t i) const {
  for (int d = 0; d < dimension_; ++d) {
    const std::size_t k = i % resolution_;
    i /= resolution_;
    if (k == 0 || k + 1 == static_cast<std::size_t>(resolution_)) return true;
  }
  return false;
}

double GridFunction::lq_norm(double q) const {
  double s = 0.0;
  for (double v : values_) s += std::pow(v, q);
  return std::pow(s * cell_volume(), 1.0 / q);
}

double GridFunction::integral() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s * cell_volume();
}

bool GridFunction::same_grid(const GridFunction& other) const {
  return dimension_ == other.dimension_ && resolution_ == other.resolution_ && half_width_ == other.half_width_;
}

double GridFunction::l1_distance(const GridFunction& other) const {
  if (!same_grid(other)) throw ValidationError("grid: functions live on different grids");
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) s += std::abs(values_[i] - other.values_[i]);
  return s * cell_volume();
}

double grid_dirichlet_energy(const GridFunction& u, const FinslerNorm& gauge) {
  const int n = u.dimension();
  if (gauge.dimension() != n) throw ValidationError("grid energy: gauge dimension mismatch");
  const int m = u.resolution();
  const double h = u.cell_size();
  std::vector<std::size_t> stride(n);
  stride[n - 1] = 1;
  for (int d = n - 2; d >= 0; --d) stride[d] = stride[d + 1] * m;
  std::vector<double> grad(n);
  double sum = 0.0;
  const auto vals = u.values();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    bool any = false;
    std::size_t rest = i;
    for (int d = n - 1; d >= 0; --d) {
      const std::size_t k = rest % m;
      rest /= m;
      const double next = k + 1 < static_cast<std::size_t>(m) ? vals[i + stride[d]] : 0.0;
      grad[d] = (next - vals[i]) / h;
      any = any || grad[d] != 0.0;
    }
    if (any) sum += std::pow(gauge(grad), n);
  }
  return sum * u.cell_volume();
}

namespace {

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

GridFunction read_grid_text(const std::string& text) {
  std::istringstream is(detail::strip_comments(text));
  int n = 0, m = 0;
  double l = 0.0;
  if (!(is >> n >> l >> m)) throw ValidationError("grid text: header must be `N L M`");
  if (n != 2 && n != 3) throw ValidationError("grid text: N must be 2 or 3");
  if (m < 3 || m > 4096) throw ValidationError("grid text: M out of range");
  std::size_t count = 1;
  for (int d = 0; d < n; ++d) count *= static_cast<std::size_t>(m);
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!(is >> values[i]))
      throw ValidationError("grid text: expected " + std::to_string(count) + " values, got " + std::to_string(i));
  }
  std::string extra;
  if (is >> extra) throw ValidationError("grid text: trailing data after values");
  return GridFunction(n, l, m, std::move(values));
}

std::string write_grid_text(const GridFunction& u) {
  std::ostringstream os;
  os << u.dimension() << ' ' << format_double(u.half_width()) << ' ' << u.resolution() << '\n';
  const int m = u.resolution();
  for (std::size_t i = 0; i < u.size(); ++i) {
    os << format_double(u[i]) << ((i + 1) % m == 0 ? '\n' : ' ');
  }
  return os.str();
}

GridFunction read_grid_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("grid json: ") + e.what());
  }
  for (const char* key : {"n", "l", "m", "values"})
    if (!j.contains(key)) throw ValidationError(std::string("grid json: missing field \"") + key + "\"");
  try {
    return GridFunction(j.at("n").get<int>(), j.at("l").get<double>(), j.at("m").get<int>(),
                        j.at("values").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("grid json: ") + e.what());
  }
}

std::string write_grid_json(const GridFunction& u) {
  nlohmann::json j;
  j["n"] = u.dimension();
  j["l"] = u.half_width();
  j["m"] = u.resolution();
  j["values"] = std::vector<double>(u.values().begin(), u.values().end());
  return j.dump();
}

GridFunction load_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open grid file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? read_grid_json(text) : read_grid_text(text);
  }
  throw ValidationError("grid file is empty: " + path);
}

void save_grid(const GridFunction& u, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write grid file: " + path);
  out << write_grid_text(u);
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace anitm
