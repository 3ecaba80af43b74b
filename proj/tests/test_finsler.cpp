#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "anitm/errors.hpp"
#include "anitm/finsler.hpp"
#include "doctest.h"
#include "gauges.hpp"

using namespace anitm;
using anitm::testing::ellipse_41;
using anitm::testing::max_gauge;
using anitm::testing::sampled_l3;
using anitm::testing::sampled_smooth;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("finsler") {

TEST_CASE("eval closed forms") {
  const auto e = FinslerNorm::euclidean(2);
  CHECK(e(std::array{3.0, 4.0}) == Approx(5.0).epsilon(1e-15));
  CHECK(e(std::array{-2.0, 0.0}) == Approx(2.0 * e(std::array{1.0, 0.0})));
  const auto p4 = FinslerNorm::pnorm(2, 4.0);
  CHECK(p4(std::array{1.0, 1.0}) == Approx(std::pow(2.0, 0.25)).epsilon(1e-14));
  CHECK_THROWS_AS(e(std::array{1.0, 2.0, 3.0}), ValidationError);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(FinslerNorm::pnorm(2, 1.0), ValidationError);
  CHECK_THROWS_AS(FinslerNorm::ellipse(2, {1.0, 2.0, 2.0, 1.0}), ValidationError);  // indefinite
  CHECK_THROWS_AS(FinslerNorm::ellipse(2, {1.0, 0.5, 0.0, 1.0}), ValidationError);  // asymmetric
  CHECK_THROWS_AS(FinslerNorm::sampled_2d({0.0, 1.0}, {1.0, 1.0}), ValidationError);
  // Non-even data.
  std::vector<double> th, v;
  for (int i = 0; i < 64; ++i) {
    th.push_back(2 * kPi * i / 64);
    v.push_back(1.0 + 0.3 * std::cos(th.back()));
  }
  CHECK_THROWS_AS(FinslerNorm::sampled_2d(th, v), ValidationError);
}

TEST_CASE("gradient") {
  const auto e = FinslerNorm::euclidean(2);
  const auto g = e.gradient(std::array{3.0, 4.0});
  CHECK(g[0] == Approx(0.6));
  CHECK(g[1] == Approx(0.8));
  CHECK_THROWS_AS(e.gradient(std::array{0.0, 0.0}), DomainError);

  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (const auto& f : {e, FinslerNorm::pnorm(2, 4.0), ellipse_41(), sampled_l3()}) {
    const double tol = f.closed_form() ? 1e-8 : 1e-5;
    for (int s = 0; s < 200; ++s) {
      const std::array x{normal(rng), normal(rng)};
      const auto gx = f.gradient(x);
      CHECK(x[0] * gx[0] + x[1] * gx[1] == Approx(f(x)).epsilon(tol));
      const auto gm = f.gradient(std::array{-x[0], -x[1]});
      CHECK(std::abs(gm[0] + gx[0]) < tol);
      CHECK(std::abs(gm[1] + gx[1]) < tol);
    }
  }
}

TEST_CASE("polar closed forms") {
  CHECK(FinslerNorm::euclidean(3).polar().kind() == GaugeKind::euclidean);
  const auto p = FinslerNorm::pnorm(2, 4.0).polar();
  CHECK(p.exponent() == Approx(4.0 / 3.0));
  CHECK(p(std::array{1.0, 1.0}) == Approx(std::pow(2.0, 0.75)).epsilon(1e-14));
  const auto q = ellipse_41().polar();
  CHECK(q(std::array{1.0, 0.0}) == Approx(0.5).epsilon(1e-14));
  CHECK(q(std::array{0.0, 1.0}) == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("numerical polar of the sampled max gauge is l1") {
  const auto p = max_gauge().polar();
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  for (int s = 0; s < 200; ++s) {
    const std::array x{normal(rng), normal(rng)};
    CHECK(p(x) == Approx(std::abs(x[0]) + std::abs(x[1])).epsilon(1e-10));
  }
}

TEST_CASE("bipolar residual") {
  CHECK(bipolar_residual(FinslerNorm::euclidean(2), 100) <= 1e-12);
  CHECK(bipolar_residual(FinslerNorm::pnorm(2, 4.0), 100) <= 1e-8);
  CHECK(bipolar_residual(sampled_l3(), 100) <= 1e-3);
  CHECK(bipolar_residual(max_gauge(), 100) <= 1e-3);
  CHECK_THROWS_AS(bipolar_residual(FinslerNorm::euclidean(2), 0), ValidationError);
}

TEST_CASE("wulff volume and sharp constant") {
  CHECK(std::abs(wulff_volume(FinslerNorm::euclidean(2)) - kPi) <= 1e-10);
  CHECK(std::abs(wulff_volume(max_gauge()) - 2.0) <= 1e-6);
  CHECK(std::abs(wulff_volume(ellipse_41()) - 2 * kPi) <= 1e-8);
  CHECK(std::abs(wulff_volume(FinslerNorm::euclidean(3)) - 4 * kPi / 3) <= 1e-10);
  // l^p ball of the dual exponent: (2 Gamma(1+1/p*))^2 / Gamma(1+2/p*), p* = 4/3.
  const double ps = 4.0 / 3.0;
  CHECK(wulff_volume(FinslerNorm::pnorm(2, 4.0)) ==
        Approx(std::pow(2 * std::tgamma(1 + 1 / ps), 2) / std::tgamma(1 + 2 / ps)).epsilon(1e-6));
  // Ellipsoid diag(4,1,9): polar unit ball has semi-axes 2, 1, 3.
  CHECK(wulff_volume(FinslerNorm::ellipse(3, {4, 0, 0, 0, 1, 0, 0, 0, 9})) ==
        Approx(4 * kPi / 3 * 6).epsilon(1e-10));
  // Closed forms above dimension 3.
  CHECK(wulff_volume(FinslerNorm::euclidean(4)) == Approx(kPi * kPi / 2).epsilon(1e-14));

  CHECK(sharp_constant(FinslerNorm::euclidean(2)) == Approx(4 * kPi).epsilon(1e-12));
  CHECK(std::abs(sharp_constant(max_gauge()) - 8.0) <= 1e-5);
  CHECK(sharp_constant(FinslerNorm::euclidean(3)) ==
        Approx(std::pow(3.0, 1.5) * std::sqrt(4 * kPi / 3)).epsilon(1e-10));
}

TEST_CASE("coarea surface identity") {
  const Anisotropy euc(FinslerNorm::euclidean(2));
  CHECK(coarea_surface_check(euc, 1.0) <= 1e-8);
  CHECK(coarea_surface_check(euc, 3.0) <= 1e-8);
  CHECK(coarea_surface_check(Anisotropy(ellipse_41()), 1.0) <= 1e-5);
  CHECK(coarea_surface_check(Anisotropy(max_gauge()), 1.0) <= 1e-5);
  CHECK(coarea_surface_check(Anisotropy(FinslerNorm::ellipse(3, {4, 0, 0, 0, 1, 0, 0, 0, 2})), 2.0) <= 1e-5);
}

TEST_CASE("gauge identities on random points") {
  for (const auto& f : {FinslerNorm::euclidean(2), FinslerNorm::pnorm(2, 4.0), ellipse_41(),
                        FinslerNorm::pnorm(3, 3.0), FinslerNorm::ellipse(3, {3, 1, 0, 1, 2, 0, 0, 0, 1})}) {
    CAPTURE(f.describe());
    const auto r = gauge_identity_residuals(Anisotropy(f), 1000, 11);
    CHECK(r.homogeneity <= 1e-10);
    CHECK(r.triangle <= 1e-12);
    CHECK(r.reverse_triangle <= 1e-12);
    CHECK(r.convexity <= 1e-12);
    CHECK(r.euler <= 1e-8);
    CHECK(r.sign_symmetry <= 1e-10);
    CHECK(r.gradient_bounds <= 1e-12);
    CHECK(r.dual_unit <= 1e-6);
    CHECK(r.inverse_map <= 1e-6);
  }
  const auto s = gauge_identity_residuals(Anisotropy(sampled_smooth()), 1000, 11);
  CHECK(s.euler <= 1e-5);
  CHECK(s.triangle <= 1e-6);
  CHECK(s.dual_unit <= 1e-6);
  CHECK(s.sign_symmetry <= 1e-6);
  CHECK(s.inverse_map <= 1e-6);
  CHECK(s.gradient_bounds <= 1e-6);
}

TEST_CASE("wulff ball membership scales by 2^N under doubling") {
  const Anisotropy aniso(ellipse_41());
  const WulffBall one{aniso.polar(), 1.0, {0.0, 0.0}};
  const WulffBall two{aniso.polar(), 2.0, {0.0, 0.0}};
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  int in1 = 0, in2 = 0;
  constexpr int kSamples = 400000;
  for (int s = 0; s < kSamples; ++s) {
    const std::array x{u(rng), u(rng)};
    in1 += one.contains(x);
    in2 += two.contains(x);
  }
  CHECK(100.0 * in1 / kSamples == Approx(aniso.kappa()).epsilon(0.02));
  CHECK(static_cast<double>(in2) / in1 == Approx(4.0).epsilon(0.02));
}

}  // TEST_SUITE
