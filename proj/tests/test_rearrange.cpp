#include <cmath>
#include <numbers>
#include <random>

#include "anitm/errors.hpp"
#include "anitm/functional.hpp"
#include "anitm/rearrange.hpp"
#include "corpus.hpp"
#include "doctest.h"
#include "gauges.hpp"

using namespace anitm;
using anitm::testing::corpus_2d;
using anitm::testing::sample_2d;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

GridFunction square_indicator(double side, double half_width, int m) {
  return GridFunction::sample(2, half_width, m, [=](std::span<const double> x) {
    return std::abs(x[0]) < side / 2 && std::abs(x[1]) < side / 2 ? 1.0 : 0.0;
  });
}

// 8 x 8 grid with unit cells: value 2 on one cell, 1 on three more.
GridFunction two_level() {
  std::vector<double> v(64, 0.0);
  v[2 * 8 + 2] = 2.0;
  v[2 * 8 + 3] = 1.0;
  v[5 * 8 + 5] = 1.0;
  v[4 * 8 + 1] = 1.0;
  return GridFunction(2, 4.0, 8, v);
}

GridFunction wulff_cone(const Anisotropy& aniso, double half_width, int m) {
  return GridFunction::sample(2, half_width, m, [&](std::span<const double> x) {
    return std::max(0.0, 1.0 - aniso.polar()(x));
  });
}

}  // namespace

TEST_SUITE("rearrange") {

TEST_CASE("distribution function") {
  CHECK(distribution_function(GridFunction::zeros(2, 1.0, 16), 0.5) == 0.0);
  const auto sq = square_indicator(2.0, 3.0, 128);
  const double h = sq.cell_size();
  CHECK(std::abs(distribution_function(sq, 0.5) - 4.0) <= 2 * h * 8.0);
  CHECK(distribution_function(two_level(), 1.5) == 1.0);
  CHECK(distribution_function(two_level(), 0.5) == 4.0);
  CHECK_THROWS_AS(distribution_function(sq, -1.0), ValidationError);
}

TEST_CASE("decreasing rearrangement") {
  const auto us = decreasing_rearrangement(two_level());
  CHECK(us.breakpoints() == std::vector<double>{0.0, 1.0, 4.0});
  CHECK(us.levels() == std::vector<double>{2.0, 1.0});
  CHECK(us(0.5) == 2.0);
  CHECK(us(1.0) == 1.0);
  CHECK(us(3.9) == 1.0);
  CHECK(us(4.0) == 0.0);
  for (double q : {1.0, 2.0, 3.5}) CHECK(us.lq_power(q) == Approx(std::pow(two_level().lq_norm(q), q)));

  const auto sq = decreasing_rearrangement(square_indicator(2.0, 3.0, 64));
  CHECK(sq.levels() == std::vector<double>{1.0});
  CHECK(sq(0.0) == 1.0);
  CHECK(sq(sq.support_measure()) == 0.0);

  // Euclidean cone: u#(t) = 1 - (t/pi)^{1/2}.
  const auto cone = GridFunction::sample(2, 2.0, 256, [](std::span<const double> x) {
    return std::max(0.0, 1.0 - std::hypot(x[0], x[1]));
  });
  const auto uc = decreasing_rearrangement(cone);
  double err = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double t = kPi * i / 200.0;
    err = std::max(err, std::abs(uc(t) - std::max(0.0, 1.0 - std::sqrt(t / kPi))));
  }
  CHECK(err <= 2 * cone.cell_size());
}

TEST_CASE("rearrangement is monotone") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> a(32 * 32, 0.0), b(32 * 32, 0.0);
    for (int i = 1; i < 31; ++i)
      for (int j = 1; j < 31; ++j) {
        a[i * 32 + j] = unif(rng) < 0.3 ? 0.0 : unif(rng);
        b[i * 32 + j] = a[i * 32 + j] + (unif(rng) < 0.5 ? 0.0 : unif(rng));
      }
    const auto ua = decreasing_rearrangement(GridFunction(2, 1.0, 32, a));
    const auto ub = decreasing_rearrangement(GridFunction(2, 1.0, 32, b));
    const double cell = 4.0 / (32 * 32);
    for (int k = 0; k < 32 * 32; ++k) CHECK(ua((k + 0.5) * cell) <= ub((k + 0.5) * cell));
  }
}

TEST_CASE("convex symmetrization of a square") {
  const Anisotropy euc(FinslerNorm::euclidean(2));
  const auto sq = square_indicator(2.0, 3.0, 256);
  const double h = sq.cell_size();
  const auto us = convex_symmetrization(sq, euc);
  const double radius = std::sqrt(4.0 / kPi);
  const auto disc = GridFunction::sample(2, 3.0, 256, [=](std::span<const double> x) {
    return std::hypot(x[0], x[1]) < radius ? 1.0 : 0.0;
  });
  CHECK(us.l1_distance(disc) <= 4 * h * radius);
  CHECK(us.integral() == Approx(sq.integral()).epsilon(eps_disc(h)));
}

TEST_CASE("wulff-symmetric functions are fixed points") {
  for (const auto& f : {FinslerNorm::euclidean(2), anitm::testing::ellipse_41(), anitm::testing::max_gauge()}) {
    const Anisotropy aniso(f);
    const auto u = wulff_cone(aniso, 3.0, 256);
    const auto us = convex_symmetrization(u, aniso);
    double err = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) err = std::max(err, std::abs(u[i] - us[i]));
    const double lip = 1.0 / f.lower_bound();  // |grad (1 - F°)| <= 1 / a_F
    CAPTURE(f.describe());
    CHECK(err <= 2 * u.cell_size() * lip);
    CHECK(symmetry_residual(u, aniso) <= eps_disc(u.cell_size()));
  }
}

TEST_CASE("translation does not change the symmetrization") {
  const Anisotropy aniso(anitm::testing::ellipse_41());
  const int m = 128;
  const double half = 3.0, h = 2 * half / m;
  const auto bump = [](double x, double y) { return std::max(0.0, 1.0 - 4 * (x * x + 2 * y * y)); };
  const auto u = GridFunction::sample(2, half, m, [&](std::span<const double> x) { return bump(x[0], x[1]); });
  const auto v = GridFunction::sample(2, half, m, [&](std::span<const double> x) {
    return bump(x[0] - 10 * h, x[1] + 7 * h);
  });
  const auto us = convex_symmetrization(u, aniso);
  const auto vs = convex_symmetrization(v, aniso);
  CHECK(us.l1_distance(vs) <= 1e-12);
}

TEST_CASE("support overflow is reported") {
  const Anisotropy aniso(anitm::testing::ellipse_41());
  // Measure 4: the Wulff ball has x semi-axis 2 (4 / 2 pi)^{1/2} ~ 1.6 > 1.5.
  CHECK_THROWS_AS(convex_symmetrization(square_indicator(2.0, 1.5, 96), aniso), ValidationError);
}

TEST_CASE("idempotence and equimeasurability over the corpus") {
  for (const auto& f : {FinslerNorm::euclidean(2), anitm::testing::ellipse_41(), anitm::testing::max_gauge()}) {
    const Anisotropy aniso(f);
    for (const auto& entry : corpus_2d()) {
      const auto u = sample_2d(entry.f, 3.0, 128);
      const double h = u.cell_size();
      const auto us = convex_symmetrization(u, aniso);
      const auto uss = convex_symmetrization(us, aniso);
      CAPTURE(f.describe());
      CAPTURE(entry.name);
      for (double q : {1.0, 2.0, 3.0}) CHECK(std::abs(u.lq_norm(q) - us.lq_norm(q)) <= eps_disc(h) * u.lq_norm(q));
      CHECK(us.l1_distance(uss) <= eps_disc(h) * us.integral());
    }
  }
}

TEST_CASE("profile extraction") {
  const Anisotropy euc(FinslerNorm::euclidean(2));
  const auto disc = GridFunction::sample(2, 2.0, 256, [](std::span<const double> x) {
    return std::hypot(x[0], x[1]) < 1.0 ? 1.0 : 0.0;
  });
  const auto g = profile_of(disc, euc);
  const double h = disc.cell_size();
  CHECK(g(0.0) == 1.0);
  CHECK(g(1.0 - 3 * h) == 1.0);
  CHECK(g(1.0 + 3 * h) == 0.0);

  for (const auto& f : {FinslerNorm::euclidean(2), anitm::testing::ellipse_41(), anitm::testing::max_gauge()}) {
    const Anisotropy aniso(f);
    const auto u = wulff_cone(aniso, 3.0, 256);
    const auto gc = profile_of(u, aniso);
    double err = 0.0;
    for (int i = 0; i <= 300; ++i) {
      const double r = 1.2 * i / 300;
      err = std::max(err, std::abs(gc(r) - std::max(0.0, 1.0 - r)));
    }
    CAPTURE(f.describe());
    CHECK(err <= 2 * u.cell_size());
  }
  const auto z = profile_of(GridFunction::zeros(2, 1.0, 32), euc);
  CHECK(z.is_zero());
  // A bump away from the origin is not Wulff symmetric.
  const auto off = sample_2d(corpus_2d()[2].f, 3.0, 128);
  CHECK_THROWS_AS(profile_of(off, euc), ValidationError);
}

TEST_CASE("hardy-littlewood") {
  const Anisotropy aniso(anitm::testing::ellipse_41());
  const double half = 3.0;
  const int m = 192;
  const auto f = GridFunction::sample(2, half, m, [&](std::span<const double> x) {
    return std::max(0.0, 1.2 - aniso.polar()(x));
  });
  const auto gs = GridFunction::sample(2, half, m, [&](std::span<const double> x) {
    return std::exp(-aniso.polar()(x)) * (aniso.polar()(x) < 1.2);
  });
  const double h = f.cell_size();
  const auto eq = hardy_littlewood_check(f, gs, aniso);
  CHECK(std::abs(eq.gap) <= eps_quad(h) * eq.rhs);
  CHECK(eq.g_distance_rel <= eps_disc(h));

  const auto bump = GridFunction::sample(2, half, m, [](std::span<const double> x) {
    const double r2 = (x[0] - 0.8) * (x[0] - 0.8) + (x[1] - 0.3) * (x[1] - 0.3);
    return std::max(0.0, 0.25 - r2);
  });
  const auto strict = hardy_littlewood_check(f, bump, aniso);
  CHECK(strict.gap > eps_quad(h) * strict.rhs);
  CHECK(strict.g_distance > 0.0);

  const auto zero = hardy_littlewood_check(f, GridFunction::zeros(2, half, m), aniso);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);
}

TEST_CASE("polya-szego") {
  for (const auto& f : {FinslerNorm::euclidean(2), anitm::testing::ellipse_41(), anitm::testing::max_gauge()}) {
    const Anisotropy aniso(f);
    const auto u = GridFunction::sample(2, 3.0, 256, [&](std::span<const double> x) {
      const double r = aniso.polar()(x);
      return r < 1.0 ? (1 - r * r) * (1 - r * r) : 0.0;
    });
    const auto ps = polya_szego_check(u, aniso);
    CAPTURE(f.describe());
    CHECK(std::abs(ps.gap) <= eps_disc(u.cell_size()) * ps.energy_u);
  }
  const Anisotropy euc(FinslerNorm::euclidean(2));
  const auto two = sample_2d(corpus_2d()[3].f, 3.0, 256);
  const auto ps = polya_szego_check(two, euc);
  CHECK(ps.gap > eps_disc(two.cell_size()) * ps.energy_u);
  const auto z = polya_szego_check(GridFunction::zeros(2, 1.0, 32), euc);
  CHECK(z.energy_u == 0.0);
  CHECK(z.energy_ustar == 0.0);
  CHECK(z.gap == 0.0);
}

TEST_CASE("eps_disc calibration on the euclidean cone") {
  // C = 1 in eps_disc = C h covers the worst observed relative discrepancy on the cone
  // (about 0.43 h, from the Polya-Szego gap) with margin.
  const Anisotropy euc(FinslerNorm::euclidean(2));
  const auto g = RadialProfile::sample(uniform_knots(1024, 1.0), [](double r) { return 1.0 - r; });
  for (int m : {64, 128, 256, 512}) {
    const auto u = wulff_cone(euc, 2.0, m);
    const double h = u.cell_size();
    const auto us = convex_symmetrization(u, euc);
    const auto ps = polya_szego_check(u, euc);
    CAPTURE(m);
    CHECK(std::abs(ps.gap) <= 0.5 * eps_disc(h) * ps.energy_u);
    CHECK(std::abs(u.lq_norm(2) - us.lq_norm(2)) <= 0.5 * eps_disc(h) * u.lq_norm(2));
    CHECK(std::abs(dirichlet_energy_radial(g, euc) - grid_dirichlet_energy(u, euc.gauge())) <=
          0.5 * eps_disc(h) * kPi);
    CHECK(std::abs(lq_norm_radial(g, 2.0, euc) - u.lq_norm(2)) <= 0.5 * eps_disc(h) * u.lq_norm(2));
  }
}

TEST_CASE("polya-szego over the corpus") {
  for (const auto& f : {FinslerNorm::euclidean(2), anitm::testing::ellipse_41(), anitm::testing::max_gauge()}) {
    const Anisotropy aniso(f);
    for (const auto& entry : corpus_2d()) {
      const auto u = sample_2d(entry.f, 3.0, 128);
      const auto ps = polya_szego_check(u, aniso);
      CAPTURE(f.describe());
      CAPTURE(entry.name);
      CHECK(ps.gap >= -eps_disc(u.cell_size()) * ps.energy_u);
    }
  }
}

}  // TEST_SUITE
