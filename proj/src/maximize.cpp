#include "anitm/maximize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <span>

#include "anitm/errors.hpp"
#include "anitm/grid.hpp"
#include "anitm/isotonic.hpp"
#include "anitm/parallel.hpp"
#include "anitm/rearrange.hpp"

namespace anitm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Floor for log-increments, relative to the largest increment of an initializer.
constexpr double kIncrementFloor = 1e-9;
constexpr double kSweepSMin = 1e-6;
constexpr double kSweepBracketDrop = 1e-4;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ (b * 0x632be59bd9b4e019ULL));
}

// Integrand of the maximized functional as a function of the profile value.
struct Integrand {
  Variant variant;
  int j_start;
  double c;      // lambda (1 - beta/N)
  double e;      // N / (N-1)
  double p;

  Integrand(const FunctionalParams& params, Variant v)
      : variant(v), j_start(series_start(params).j_start), c(params.exponent_scale()), e(params.n / (params.n - 1.0)),
        p(params.p) {}

  double operator()(double v) const {
    if (v <= 0.0) return 0.0;
    if (variant == Variant::exp_power) return std::exp(c * std::pow(v, e)) * std::pow(v, p);
    return phi(j_start, c * std::pow(v, e));
  }
};

// Fast evaluation on a fixed knot grid. Dilations and amplitude scalings are handled
// analytically, so only knot values vary.
class KnotEvaluator {
 public:
  KnotEvaluator(std::vector<double> knots, const FunctionalParams& params, const Anisotropy& aniso)
      : knots_(std::move(knots)), params_(params), n_(aniso.dimension()), kappa_(aniso.kappa()),
        rule0_(knots_, n_, 0.0), rule_beta_(knots_, n_, params.beta) {
    energy_coef_.resize(knots_.size() - 1);
    for (std::size_t k = 0; k + 1 < knots_.size(); ++k) {
      const double dr = knots_[k + 1] - knots_[k];
      energy_coef_[k] = kappa_ * (std::pow(knots_[k + 1], n_) - std::pow(knots_[k], n_)) / std::pow(dr, n_);
    }
  }

  const std::vector<double>& knots() const { return knots_; }

  double energy(std::span<const double> v) const {
    double d = 0.0;
    for (std::size_t k = 0; k < energy_coef_.size(); ++k) d += energy_coef_[k] * std::pow(std::abs(v[k] - v[k + 1]), n_);
    return d;
  }

  // Infinite when the candidate has blown up.
  double q_power(std::span<const double> v) const {
    const double q = params_.q;
    return weighted_with(rule0_, v, 1.0, [q](double x) { return x > 0.0 ? std::pow(x, q) : 0.0; });
  }

  // N kappa sum w_i h(scale * v_i) over the beta-weighted rule.
  template <class H>
  double weighted(std::span<const double> v, double scale, const H& h) const {
    return weighted_with(rule_beta_, v, scale, h);
  }

  int dimension() const { return n_; }
  const FunctionalParams& params() const { return params_; }

 private:
  template <class H>
  double weighted_with(const RadialRule& rule, std::span<const double> v, double scale, const H& h) const {
    double s = 0.0;
    for (const auto& nd : rule.nodes()) {
      const double gv = v[nd.interval] + nd.theta * (v[nd.interval + 1] - v[nd.interval]);
      const double hv = h(scale * gv);
      if (!(hv <= 1e300)) return std::numeric_limits<double>::infinity();
      s += nd.weight * hv;
    }
    return n_ * kappa_ * s;
  }

  std::vector<double> knots_;
  FunctionalParams params_;
  int n_;
  double kappa_;
  RadialRule rule0_;
  RadialRule rule_beta_;
  std::vector<double> energy_coef_;
};

// Subcritical objective: functional of normalize_sphere(g).
class SubcriticalObjective {
 public:
  SubcriticalObjective(std::vector<double> knots, const FunctionalParams& params, const Anisotropy& aniso)
      : eval_(std::move(knots), params, aniso), h_(params, params.variant) {}

  // Returns -inf for degenerate or overflowing candidates.
  double operator()(std::span<const double> v) const {
    const auto [e, t] = scales(v);
    if (!(e > 0.0) || !(t > 0.0) || !std::isfinite(t)) return kNegInf;
    const double s = eval_.weighted(v, 1.0 / e, h_);
    if (!std::isfinite(s)) return kNegInf;
    return s * std::pow(t, -(eval_.dimension() - eval_.params().beta));
  }

  RadialProfile witness(std::span<const double> v) const {
    const auto [e, t] = scales(v);
    return RadialProfile(eval_.knots(), std::vector<double>(v.begin(), v.end())).dilated(t).scaled(1.0 / e);
  }

  const std::vector<double>& knots() const { return eval_.knots(); }

 private:
  std::pair<double, double> scales(std::span<const double> v) const {
    const int n = eval_.dimension();
    const double q = eval_.params().q;
    const double e = std::pow(eval_.energy(v), 1.0 / n);
    const double nq = std::pow(eval_.q_power(v), 1.0 / q);
    return {e, std::pow(nq / e, q / n)};
  }

  KnotEvaluator eval_;
  Integrand h_;
};

// Critical objective over (g on the knots, tau): critical_value of c g(tau r) with c from
// the constraint ||F grad||^a + ||.||_q^b = 1.
class CriticalObjective {
 public:
  CriticalObjective(std::vector<double> knots, const FunctionalParams& params, const Anisotropy& aniso)
      : eval_(std::move(knots), params, aniso), h_(params, Variant::phi_series) {}

  double operator()(std::span<const double> v, double log_tau) const {
    const auto [c, tau] = scales(v, log_tau);
    if (!(c > 0.0) || !std::isfinite(c)) return kNegInf;
    const double s = eval_.weighted(v, c, h_);
    if (!std::isfinite(s)) return kNegInf;
    return s * std::exp(-(eval_.dimension() - eval_.params().beta) * log_tau);
  }

  RadialProfile witness(std::span<const double> v, double log_tau) const {
    const auto [c, tau] = scales(v, log_tau);
    return RadialProfile(eval_.knots(), std::vector<double>(v.begin(), v.end())).dilated(tau).scaled(c);
  }

  const std::vector<double>& knots() const { return eval_.knots(); }

 private:
  std::pair<double, double> scales(std::span<const double> v, double log_tau) const {
    const FunctionalParams& p = eval_.params();
    const int n = eval_.dimension();
    const double e = std::pow(eval_.energy(v), 1.0 / n);
    const double nq = std::pow(eval_.q_power(v), 1.0 / p.q) * std::exp(-n / p.q * log_tau);
    const double x = std::pow(e, p.a), y = std::pow(nq, p.b);
    if (!(x + y > 0.0) || !std::isfinite(x + y)) return {0.0, 0.0};
    return {solve_constraint_scale(p.a, p.b, x, y), std::exp(log_tau)};
  }

  KnotEvaluator eval_;
  Integrand h_;
};

// Knot values from log-increments: v_M = 0, v_k = v_{k+1} + exp(z_k).
void values_from_increments(std::span<const double> z, std::vector<double>& v) {
  const std::size_t m = z.size();
  v.assign(m + 1, 0.0);
  for (std::size_t k = m; k-- > 0;) v[k] = v[k + 1] + std::exp(z[k]);
}

std::vector<double> increments_from_values(std::span<const double> v) {
  const std::size_t m = v.size() - 1;
  double top = 0.0;
  for (std::size_t k = 0; k < m; ++k) top = std::max(top, v[k] - v[k + 1]);
  if (!(top > 0.0)) top = 1.0;
  std::vector<double> z(m);
  for (std::size_t k = 0; k < m; ++k) z[k] = std::log(std::max(v[k] - v[k + 1], kIncrementFloor * top));
  return z;
}

struct AscentResult {
  std::vector<double> x;
  double value;
  long evaluations;
};

// Coordinate ascent with adaptive signed steps, parabolic vertex steps and pattern moves,
// followed by a Nelder-Mead polish on whatever budget remains.
class Ascent {
 public:
  using Fn = std::function<double(std::span<const double>)>;

  Ascent(Fn f, long budget, double initial_step, double tolerance)
      : f_(std::move(f)), budget_(budget), step0_(initial_step), tol_(tolerance) {}

  AscentResult run(std::vector<double> x) {
    double fx = eval(x);
    coordinate_phase(x, fx);
    polish_phase(x, fx);
    return {std::move(x), fx, evals_};
  }

 private:
  double eval(std::span<const double> x) {
    ++evals_;
    const double v = f_(x);
    return std::isnan(v) ? kNegInf : v;
  }

  bool exhausted() const { return evals_ >= budget_; }

  void coordinate_phase(std::vector<double>& x, double& fx) {
    const std::size_t d = x.size();
    std::vector<double> step(d, step0_);
    std::vector<double> trial(x);
    while (!exhausted()) {
      const std::vector<double> x_old = x;
      const double f_old = fx;
      double largest = 0.0;
      for (std::size_t j = 0; j < d && !exhausted(); ++j) {
        const double s = step[j];
        trial = x;
        trial[j] = x[j] + s;
        const double fp = eval(trial);
        if (fp > fx) {
          x = trial;
          fx = fp;
          step[j] = 2.0 * s;
          largest = std::max(largest, std::abs(step[j]));
          continue;
        }
        trial[j] = x[j] - s;
        const double fm = eval(trial);
        if (fm > fx) {
          x = trial;
          fx = fm;
          step[j] = -2.0 * s;
          largest = std::max(largest, std::abs(step[j]));
          continue;
        }
        const double curv = fp - 2.0 * fx + fm;
        if (curv < 0.0 && std::isfinite(curv)) {
          const double offset = 0.5 * s * (fm - fp) / curv;
          trial[j] = x[j] + offset;
          const double fv = eval(trial);
          if (fv > fx) {
            x = trial;
            fx = fv;
          }
          step[j] = std::max(std::abs(offset), 0.1 * std::abs(s)) * (offset < 0 ? -1.0 : 1.0);
        } else {
          step[j] = 0.5 * s;
        }
        largest = std::max(largest, std::abs(step[j]));
      }
      if (fx > f_old && !exhausted()) {
        // Pattern move along the last sweep's displacement, extended while it pays.
        std::vector<double> dir(d);
        for (std::size_t j = 0; j < d; ++j) dir[j] = x[j] - x_old[j];
        for (int rep = 0; rep < 8 && !exhausted(); ++rep) {
          for (std::size_t j = 0; j < d; ++j) trial[j] = x[j] + dir[j];
          const double ft = eval(trial);
          if (!(ft > fx)) break;
          x = trial;
          fx = ft;
        }
      }
      if (largest < tol_) break;
    }
  }

  void polish_phase(std::vector<double>& x, double& fx) {
    const std::size_t d = x.size();
    if (exhausted() || budget_ - evals_ < static_cast<long>(4 * d)) return;
    std::vector<std::vector<double>> simplex(d + 1, x);
    std::vector<double> val(d + 1, fx);
    for (std::size_t j = 0; j < d; ++j) {
      simplex[j + 1][j] += 1e-3;
      val[j + 1] = eval(simplex[j + 1]);
    }
    std::vector<std::size_t> order(d + 1);
    std::vector<double> centroid(d), trial(d), trial2(d);
    while (!exhausted()) {
      for (std::size_t i = 0; i <= d; ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return val[a] > val[b]; });
      const std::size_t best = order.front(), worst = order.back(), second = order[d - 1];
      double size = 0.0;
      for (std::size_t i = 0; i <= d; ++i)
        for (std::size_t j = 0; j < d; ++j) size = std::max(size, std::abs(simplex[i][j] - simplex[best][j]));
      if (size < tol_) break;
      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t i = 0; i <= d; ++i)
        if (i != worst)
          for (std::size_t j = 0; j < d; ++j) centroid[j] += simplex[i][j] / d;
      for (std::size_t j = 0; j < d; ++j) trial[j] = centroid[j] + (centroid[j] - simplex[worst][j]);
      const double fr = eval(trial);
      if (fr > val[best]) {
        for (std::size_t j = 0; j < d; ++j) trial2[j] = centroid[j] + 2.0 * (centroid[j] - simplex[worst][j]);
        const double fe = eval(trial2);
        if (fe > fr) {
          simplex[worst] = trial2;
          val[worst] = fe;
        } else {
          simplex[worst] = trial;
          val[worst] = fr;
        }
      } else if (fr > val[second]) {
        simplex[worst] = trial;
        val[worst] = fr;
      } else {
        const bool outside = fr > val[worst];
        for (std::size_t j = 0; j < d; ++j)
          trial2[j] = outside ? centroid[j] + 0.5 * (trial[j] - centroid[j])
                              : centroid[j] + 0.5 * (simplex[worst][j] - centroid[j]);
        const double fc = eval(trial2);
        if (fc > std::max(val[worst], outside ? fr : kNegInf)) {
          simplex[worst] = trial2;
          val[worst] = fc;
        } else {
          for (std::size_t i = 0; i <= d && !exhausted(); ++i) {
            if (i == best) continue;
            for (std::size_t j = 0; j < d; ++j) simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
            val[i] = eval(simplex[i]);
          }
        }
      }
    }
    const std::size_t best =
        static_cast<std::size_t>(std::max_element(val.begin(), val.end()) - val.begin());
    if (val[best] > fx) {
      x = simplex[best];
      fx = val[best];
    }
  }

  Fn f_;
  long budget_;
  double step0_;
  double tol_;
  long evals_ = 0;
};

constexpr double kInitialStep = 0.5;
constexpr double kStepTolerance = 1e-7;

// Values of an initializer on the base knots, after rescaling its support to R.
std::vector<double> resample(const RadialProfile& g, const std::vector<double>& knots) {
  const RadialProfile h = g.is_zero() ? g : g.dilated(g.support_radius() / knots.back());
  std::vector<double> v(knots.size());
  for (std::size_t k = 0; k < knots.size(); ++k) v[k] = h(knots[k]);
  v.back() = 0.0;
  return v;
}

std::vector<double> perturb(std::vector<double> v, std::mt19937_64& rng, double size) {
  std::normal_distribution<double> normal;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) v[k] *= std::exp(size * normal(rng));
  v = isotonic_nonincreasing(v);
  for (double& x : v) x = std::max(x, 0.0);
  v.back() = 0.0;
  return v;
}

std::vector<double> start_values(const std::vector<RadialProfile>& inits, const std::vector<double>& knots,
                                 std::size_t restart, std::uint64_t seed) {
  std::vector<double> v = resample(inits[restart % inits.size()], knots);
  if (restart >= inits.size()) {
    std::mt19937_64 rng(seed);
    v = perturb(std::move(v), rng, 0.3);
  }
  return v;
}

std::vector<RadialProfile> initializers(const SearchConfig& config) {
  std::vector<RadialProfile> inits = default_initializers(config);
  inits.insert(inits.end(), config.extra_initializers.begin(), config.extra_initializers.end());
  return inits;
}

struct RestartOutcome {
  double value = kNegInf;
  RadialProfile profile = RadialProfile::zero();
  long evaluations = 0;
};

std::size_t argmax_first(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

double spread_of(const std::vector<double>& v) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double x : v)
    if (std::isfinite(x)) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  return hi >= lo ? hi - lo : 0.0;
}

struct EstimateWithWitnesses {
  FEstimate estimate;
  std::vector<RadialProfile> restart_profiles;
};

EstimateWithWitnesses estimate_all(const FunctionalParams& params, const Anisotropy& aniso, const SearchConfig& config,
                                   std::uint64_t stream) {
  config.validate();
  params.validate(aniso.sharp_constant());
  const std::vector<double> knots = config.base_knots();
  const SubcriticalObjective objective(knots, params, aniso);
  const std::vector<RadialProfile> inits = initializers(config);
  std::vector<RestartOutcome> outcomes(config.restarts);
  parallel_for(outcomes.size(), config.threads, [&](std::size_t i) {
    const std::uint64_t seed = stream_seed(config.seed, stream, i);
    const std::vector<double> z0 = increments_from_values(start_values(inits, knots, i, seed));
    std::vector<double> v;
    Ascent ascent(
        [&](std::span<const double> z) {
          std::vector<double> vals;
          values_from_increments(z, vals);
          return objective(vals);
        },
        config.budget, kInitialStep, kStepTolerance);
    const AscentResult r = ascent.run(z0);
    values_from_increments(r.x, v);
    RestartOutcome& out = outcomes[i];
    out.evaluations = r.evaluations;
    if (!std::isfinite(r.value)) return;
    out.profile = objective.witness(v);
    out.value = ratio_functional(out.profile, params, aniso);
  });
  std::vector<double> values;
  std::vector<RadialProfile> profiles;
  long evals = 0;
  for (const auto& o : outcomes) {
    values.push_back(o.value);
    profiles.push_back(o.profile);
    evals += o.evaluations;
  }
  const std::size_t best = argmax_first(values);
  if (!std::isfinite(values[best]))
    throw DomainError("estimate_f: no restart produced a feasible candidate");
  return {{values[best], profiles[best], values, spread_of(values), evals}, profiles};
}

}  // namespace

void SearchConfig::validate() const {
  if (knots < 4 || knots > 4096) throw ValidationError("search: knots must be in [4, 4096]");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ValidationError("search: radius must be positive");
  if (!(r_min > 0.0) || !(r_min < 0.5)) throw ValidationError("search: r_min must be in (0, 0.5)");
  if (restarts < 1) throw ValidationError("search: restarts must be >= 1");
  if (budget < 10) throw ValidationError("search: budget must be >= 10");
  if (threads < 1) throw ValidationError("search: threads must be >= 1");
}

std::vector<double> SearchConfig::base_knots() const { return geometric_knots(knots, r_min * radius, radius); }

std::vector<RadialProfile> default_initializers(const SearchConfig& config) {
  const std::vector<double> knots = config.base_knots();
  const double half = 0.5 * config.radius;
  std::vector<RadialProfile> out;
  out.push_back(RadialProfile::sample(knots, [=](double r) { return std::max(0.0, 1.0 - r / half); }));
  out.push_back(RadialProfile::sample(knots, [=](double r) {
    const double x = r / half;
    return x < 1.0 ? (1.0 - x * x) * (1.0 - x * x) : 0.0;
  }));
  for (double rk : {half / 4, half / 16, half / 64, half / 256}) {
    out.push_back(RadialProfile::sample(knots, [=](double r) {
      if (r >= half) return 0.0;
      return r <= rk ? 1.0 : std::log(half / r) / std::log(half / rk);
    }));
  }
  return out;
}

FEstimate estimate_f(const FunctionalParams& params, const Anisotropy& aniso, const SearchConfig& config) {
  return estimate_all(params, aniso, config, 0).estimate;
}

double sweep_bracket(const FunctionalParams& params, double t) {
  const double s = t / params.lambda;
  const double m = (params.n - 1.0) / params.n;
  const double inner = (1.0 - std::pow(s, params.a * m)) / std::pow(s, params.b * m);
  return std::pow(inner, params.q / params.b * (1.0 - params.beta / params.n));
}

SweepResult identity_sweep(const FunctionalParams& params, const Anisotropy& aniso, int grid_size,
                           const SearchConfig& config) {
  if (grid_size < 8) throw ValidationError("sweep: grid_size must be >= 8");
  params.validate(aniso.sharp_constant());
  if (!(params.lambda > 0.0)) throw ValidationError("sweep: lambda must be > 0");
  const double lam = params.lambda;
  const auto bracket_s = [&](double s) { return sweep_bracket(params, s * lam); };
  const auto logit = [](double s) { return std::log(s / (1.0 - s)); };
  const auto expit = [](double u) { return 1.0 / (1.0 + std::exp(-u)); };
  // s_max with bracket(s_max) = drop * bracket(1/2), bisected in logit space.
  const double target = kSweepBracketDrop * bracket_s(0.5);
  double lo = 0.0, hi = 40.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (bracket_s(expit(mid)) > target ? lo : hi) = mid;
  }
  const double u0 = logit(kSweepSMin), u1 = hi;

  SweepResult res;
  res.lambda = lam;
  std::vector<RadialProfile> pool;
  for (int k = 0; k < grid_size; ++k) {
    const double t = lam * expit(u0 + (u1 - u0) * k / (grid_size - 1));
    res.ts.push_back(t);
    FunctionalParams pt = params;
    pt.lambda = t;
    pt.variant = Variant::phi_series;
    EstimateWithWitnesses e = estimate_all(pt, aniso, config, static_cast<std::uint64_t>(k) + 1);
    res.f_spreads.push_back(e.estimate.spread);
    for (auto& w : e.restart_profiles)
      if (!w.is_zero()) pool.push_back(std::move(w));
  }
  // Every witness is a feasible candidate at every t.
  res.f_estimates.assign(grid_size, kNegInf);
  res.witnesses.assign(grid_size, RadialProfile::zero());
  std::vector<std::vector<double>> table(grid_size, std::vector<double>(pool.size(), kNegInf));
  parallel_for(static_cast<std::size_t>(grid_size), config.threads, [&](std::size_t k) {
    FunctionalParams pt = params;
    pt.lambda = res.ts[k];
    pt.variant = Variant::phi_series;
    for (std::size_t w = 0; w < pool.size(); ++w) {
      try {
        table[k][w] = ratio_functional(pool[w], pt, aniso);
      } catch (const OverflowError&) {
      }
    }
  });
  for (int k = 0; k < grid_size; ++k) {
    const std::size_t best = argmax_first(table[k]);
    res.f_estimates[k] = table[k][best];
    res.witnesses[k] = pool[best];
    res.brackets.push_back(sweep_bracket(params, res.ts[k]));
    res.products.push_back(res.brackets[k] * res.f_estimates[k]);
  }
  res.star_index = argmax_first(res.products);
  res.t_star = res.ts[res.star_index];
  res.g_value = res.products[res.star_index];

  EndpointDiagnostics& ep = res.endpoints;
  ep.bracket_last_over_mid = res.brackets.back() / bracket_s(0.5);
  ep.product_first = res.products.front();
  ep.product_last = res.products.back();
  const int quarter = std::max(2, grid_size / 4);
  ep.decreasing_near_lambda = true;
  for (int k = grid_size - quarter; k + 1 < grid_size; ++k)
    ep.decreasing_near_lambda = ep.decreasing_near_lambda && res.products[k + 1] < res.products[k];
  ep.increasing_near_zero = true;
  for (int k = 0; k + 1 < quarter; ++k)
    ep.increasing_near_zero = ep.increasing_near_zero && res.products[k + 1] > res.products[k];
  return res;
}

double objective_value(const RadialProfile& g, const FunctionalParams& params, const Anisotropy& aniso,
                       Objective objective) {
  if (objective == Objective::subcritical) return ratio_functional(normalize_sphere(g, params.q, aniso), params, aniso);
  return critical_value(constraint_scale(g, params.a, params.b, params.q, aniso).scaled, params, aniso);
}

MaximizerReport direct_critical_max(const FunctionalParams& params, const Anisotropy& aniso,
                                    const SearchConfig& config, const DiagnosticsConfig& diagnostics) {
  config.validate();
  params.validate(aniso.sharp_constant());
  const std::vector<double> knots = config.base_knots();
  const std::size_t m = knots.size() - 1;
  const CriticalObjective objective(knots, params, aniso);
  const std::vector<RadialProfile> inits = initializers(config);
  std::vector<RestartOutcome> outcomes(config.restarts);
  const std::uint64_t stream = 0xc0ffee;
  parallel_for(outcomes.size(), config.threads, [&](std::size_t i) {
    const std::uint64_t seed = stream_seed(config.seed, stream, i);
    const std::vector<double> v0 = start_values(inits, knots, i, seed);
    std::vector<double> x = increments_from_values(v0);
    // Starting dilation: best of a coarse scan.
    double best_w = 0.0, best_f = kNegInf;
    for (double w = -8.0; w <= 8.0; w += 0.25) {
      const double f = objective(v0, w);
      if (f > best_f) {
        best_f = f;
        best_w = w;
      }
    }
    x.push_back(best_w);
    Ascent ascent(
        [&](std::span<const double> xs) {
          std::vector<double> vals;
          values_from_increments(xs.first(m), vals);
          return objective(vals, xs[m]);
        },
        config.budget, kInitialStep, kStepTolerance);
    const AscentResult r = ascent.run(x);
    RestartOutcome& out = outcomes[i];
    out.evaluations = r.evaluations;
    if (!std::isfinite(r.value)) return;
    std::vector<double> v;
    values_from_increments(std::span<const double>(r.x).first(m), v);
    out.profile = objective.witness(v, r.x[m]);
    out.value = critical_value(out.profile, params, aniso);
  });
  std::vector<double> values;
  for (const auto& o : outcomes) values.push_back(o.value);
  const std::size_t best = argmax_first(values);
  if (!std::isfinite(values[best]))
    throw DomainError("direct_critical_max: no restart produced a feasible candidate");
  MaximizerReport report =
      maximizer_diagnostics(outcomes[best].profile, params, aniso, Objective::critical, diagnostics);
  report.value = values[best];
  report.restart_values = values;
  report.spread = spread_of(values);
  return report;
}

CriticalConstruction construct_critical_from_subcritical(double t, const RadialProfile& u,
                                                         const FunctionalParams& params, const Anisotropy& aniso) {
  if (!(t > 0.0) || !(t < params.lambda)) throw ValidationError("construct_critical: t must lie in (0, lambda)");
  const int n = aniso.dimension();
  const double s = t / params.lambda;
  const double m = (n - 1.0) / n;
  const double uq = lq_norm_radial(u, params.q, aniso);
  const double gamma = std::pow(std::pow(s, params.b * m) * std::pow(uq, params.b) / (1.0 - std::pow(s, params.a * m)),
                                params.q / (n * params.b));
  RadialProfile v = u.dilated(gamma).scaled(std::pow(s, m));
  const double residual = std::abs(constraint_value(v, params.a, params.b, params.q, aniso) - 1.0);
  const double value = critical_value(v, params, aniso);
  FunctionalParams pt = params;
  pt.lambda = t;
  pt.variant = Variant::phi_series;
  const double expected = sweep_bracket(params, t) * atmsc_value(u, pt, aniso);
  return {std::move(v), gamma, residual, value, expected, std::abs(value - expected) / expected};
}

Threshold threshold_check(const FunctionalParams& params) {
  double m = params.q * (params.n - 1.0) / params.n;
  const double r = std::round(m);
  const bool integral = std::abs(m - r) < 1e-12 && r >= 1.0;
  if (params.beta != 0.0 || !integral) return {std::numeric_limits<double>::quiet_NaN(), false};
  m = r;
  return {std::pow(params.lambda, m) / std::tgamma(m + 1.0), true};
}

std::string attainment_verdict(const FunctionalParams& params, double g_value) {
  const Threshold th = threshold_check(params);
  if (!th.applicable) return "attainment guaranteed";
  return g_value > th.threshold ? "attainment guaranteed" : "inconclusive";
}

MaximizerReport maximizer_diagnostics(const RadialProfile& g, const FunctionalParams& params, const Anisotropy& aniso,
                                      Objective objective, const DiagnosticsConfig& config) {
  MaximizerReport rep{g, 0.0, 0, 0, 0, 0, 0, std::numeric_limits<double>::quiet_NaN(), 0, 0, {}, 0};
  rep.value = objective_value(g, params, aniso, objective);
  rep.grad_norm = gradient_norm_radial(g, aniso);
  rep.q_norm = lq_norm_radial(g, params.q, aniso);
  rep.grad_norm_residual = std::abs(rep.grad_norm - 1.0);
  rep.q_norm_residual = std::abs(rep.q_norm - 1.0);
  rep.constraint_residual = std::abs(std::pow(rep.grad_norm, params.a) + std::pow(rep.q_norm, params.b) - 1.0);

  const int n = aniso.dimension();
  if (config.grid_resolution > 0 && (n == 2 || n == 3)) {
    double reach = 0.0;
    std::vector<double> e(n, 0.0);
    for (int i = 0; i < n; ++i) {
      e[i] = 1.0;
      reach = std::max(reach, aniso.gauge()(e));
      e[i] = 0.0;
    }
    const int m = config.grid_resolution;
    const double half = 1.1 * g.support_radius() * reach * (1.0 + 4.0 / m);
    const GridFunction u = GridFunction::sample(n, half, m, [&](std::span<const double> x) {
      return g(aniso.polar()(x));
    });
    rep.symmetry_residual = symmetry_residual(u, aniso);
    rep.symmetry_tolerance = eps_disc(u.cell_size());
  }

  std::mt19937_64 rng(stream_seed(config.seed, 0xd1a6));
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  double margin = 0.0;
  for (int i = 0; i < config.perturbations; ++i) {
    std::vector<double> v = g.values();
    for (std::size_t k = 0; k + 1 < v.size(); ++k) v[k] *= 1.0 + config.perturbation_size * unif(rng);
    v = isotonic_nonincreasing(v);
    for (double& x : v) x = std::max(x, 0.0);
    v.back() = 0.0;
    try {
      const double f = objective_value(RadialProfile(g.radii(), std::move(v)), params, aniso, objective);
      margin = std::max(margin, f - rep.value);
    } catch (const Error&) {
    }
  }
  rep.local_optimality_margin = margin;
  return rep;
}

}  // namespace anitm
