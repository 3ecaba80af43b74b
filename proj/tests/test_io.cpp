#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "anitm/errors.hpp"
#include "anitm/grid.hpp"
#include "anitm/profile.hpp"
#include "doctest.h"

using namespace anitm;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("anitm_test_" + name)).string();
}

GridFunction small_grid() {
  return GridFunction::sample(2, 1.0, 6, [](std::span<const double> x) {
    return std::max(0.0, 0.6 - std::hypot(x[0], x[1])) / 3.0;
  });
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("grid geometry") {
  const auto g = GridFunction::zeros(2, 1.0, 4);
  CHECK(g.cell_size() == 0.5);
  CHECK(g.center(0) == std::vector<double>{-0.75, -0.75});
  CHECK(g.center(1) == std::vector<double>{-0.75, -0.25});
  CHECK(g.center(4) == std::vector<double>{-0.25, -0.75});
  CHECK(g.on_boundary(0));
  CHECK_FALSE(g.on_boundary(5));
  const auto g3 = GridFunction::zeros(3, 1.0, 3);
  CHECK(g3.size() == 27);
  CHECK_FALSE(g3.on_boundary(13));
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(GridFunction(2, 1.0, 4, std::vector<double>(15, 0.0)), ValidationError);
  CHECK_THROWS_AS(GridFunction(4, 1.0, 4, std::vector<double>(256, 0.0)), ValidationError);
  std::vector<double> v(16, 0.0);
  v[0] = 1.0;
  CHECK_THROWS_AS(GridFunction(2, 1.0, 4, v), ValidationError);
  v[0] = 0.0;
  v[5] = -1.0;
  CHECK_THROWS_AS(GridFunction(2, 1.0, 4, v), ValidationError);
  CHECK_THROWS_AS(GridFunction::sample(2, 1.0, 8, [](std::span<const double>) { return 1.0; }), ValidationError);
}

TEST_CASE("grid energy of a single spike") {
  // One interior cell of height 1: four difference quotients of size 1/h, two per axis.
  std::vector<double> v(25, 0.0);
  v[12] = 1.0;
  const GridFunction u(2, 2.5, 5, v);
  const double h = u.cell_size();
  // Cells (2,2): grad (-1,-1)/h; (1,2): (1,0)/h; (2,1): (0,1)/h.
  const double expected = (2.0 / (h * h) + 2.0 / (h * h)) * h * h;
  CHECK(grid_dirichlet_energy(u, FinslerNorm::euclidean(2)) == doctest::Approx(expected));
}

TEST_CASE("grid text and json round trip") {
  const auto g = small_grid();
  const auto t = read_grid_text(write_grid_text(g));
  CHECK(t.same_grid(g));
  CHECK(t.l1_distance(g) == 0.0);
  const auto j = read_grid_json(write_grid_json(g));
  CHECK(j.l1_distance(g) == 0.0);

  const auto path = temp_path("grid.json");
  {
    std::ofstream out(path);
    out << "  \n" << write_grid_json(g);
  }
  CHECK(load_grid(path).l1_distance(g) == 0.0);
  save_grid(g, path);
  CHECK(load_grid(path).l1_distance(g) == 0.0);
  std::remove(path.c_str());
}

TEST_CASE("grid parse errors") {
  CHECK_THROWS_AS(read_grid_text("2 1.0"), ValidationError);
  CHECK_THROWS_AS(read_grid_text("2 1.0 3\n0 0 0 0 0 0 0 0"), ValidationError);
  CHECK_THROWS_AS(read_grid_text("2 1.0 3\n0 0 0 0 0 0 0 0 0 7"), ValidationError);
  CHECK_THROWS_AS(read_grid_json("{\"n\":2,\"l\":1.0,\"values\":[]}"), ValidationError);
  CHECK_THROWS_AS(read_grid_json("{\"n\":2,"), ValidationError);
  CHECK_THROWS_AS(load_grid("/nonexistent/grid.txt"), IoError);
}

TEST_CASE("profile basics") {
  const RadialProfile g({0.0, 0.5, 1.0}, {2.0, 1.0, 0.0});
  CHECK(g(0.25) == 1.5);
  CHECK(g(1.0) == 0.0);
  CHECK(g(2.0) == 0.0);
  CHECK(g.slope(0) == -2.0);
  CHECK(g.dilated(2.0).support_radius() == 0.5);
  CHECK(g.scaled(3.0).peak() == 6.0);
  CHECK_THROWS_AS(RadialProfile({0.0, 1.0}, {1.0, 0.5}), ValidationError);
  CHECK_THROWS_AS(RadialProfile({0.0, 1.0, 2.0}, {1.0, 1.5, 0.0}), ValidationError);
  CHECK_THROWS_AS(RadialProfile({0.1, 1.0}, {1.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(RadialProfile({0.0, 1.0, 1.0}, {1.0, 0.5, 0.0}), ValidationError);
  const auto k = geometric_knots(10, 1e-3, 2.0);
  CHECK(k.size() == 11);
  CHECK(k[0] == 0.0);
  CHECK(k[1] == 1e-3);
  CHECK(k[10] == 2.0);
}

TEST_CASE("profile round trip") {
  const auto g = RadialProfile::sample(geometric_knots(16, 1e-2, 3.0), [](double r) { return std::exp(-r); });
  int n = 0;
  const auto back = read_profile_text(write_profile_text(g, 3), &n);
  CHECK(n == 3);
  CHECK(back.radii() == g.radii());
  CHECK(back.values() == g.values());
  CHECK_THROWS_AS(read_profile_text("2 1.0 1\n0 1\n"), ValidationError);
  CHECK_THROWS_AS(read_profile_text("2 2.0 1\n0 1\n1 0\n"), ValidationError);
  CHECK_THROWS_AS(load_profile("/nonexistent/p.txt"), IoError);
}

}  // TEST_SUITE
