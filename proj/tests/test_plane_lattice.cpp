#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "carleson/errors.hpp"
#include "carleson/numerics.hpp"
#include "carleson/plane_lattice.hpp"

using namespace carleson;

TEST_CASE("cell_of follows the half-open convention") {
  CHECK(cell_of({0.2, -0.3}) == LatticePoint{0, 0});
  CHECK(cell_of({0.5, 0.0}) == LatticePoint{1, 0});
  CHECK(cell_of({-3.7, 2.49}) == LatticePoint{-4, 2});
  CHECK(cell_of({-0.5, -0.5}) == LatticePoint{0, 0});
  CHECK(cell_of({0.0, 0.5}) == LatticePoint{0, 1});
}

TEST_CASE("cells tile the plane") {
  Rng rng(11);
  for (int i = 0; i < 10000; ++i) {
    const Complex z(rng.uniform(-20, 20), rng.uniform(-20, 20));
    const LatticePoint nu = cell_of(z);
    CHECK(Cell{nu}.contains(z));
    int owners = 0;
    for (int dj = -1; dj <= 1; ++dj)
      for (int dk = -1; dk <= 1; ++dk) owners += Cell{{nu.j + dj, nu.k + dk}}.contains(z) ? 1 : 0;
    CHECK(owners == 1);
  }
  // Points on shared edges and corners.
  for (int j = -3; j <= 3; ++j) {
    const Complex z(j + 0.5, j - 0.5);
    int owners = 0;
    for (int a = j - 2; a <= j + 2; ++a)
      for (int b = j - 2; b <= j + 2; ++b) owners += Cell{{a, b}}.contains(z) ? 1 : 0;
    CHECK(owners == 1);
  }
}

TEST_CASE("covering_cells examples") {
  const auto nine = covering_cells(0.0, 1.0);
  CHECK(nine.size() == 9);
  for (const auto& nu : nine) CHECK(std::max(std::abs(nu.j), std::abs(nu.k)) <= 1);
  const auto one = covering_cells(0.0, 0.4);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == LatticePoint{0, 0});
  CHECK_THROWS_AS(covering_cells(0.0, 0.0), DomainError);
}

TEST_CASE("covering_cells matches a brute-force window scan") {
  Rng rng(3);
  const Window window(12);
  for (int i = 0; i < 100; ++i) {
    const Complex z(rng.uniform(-8, 8), rng.uniform(-8, 8));
    const double r = rng.uniform(0.05, 3.0);
    std::vector<LatticePoint> brute;
    for (const auto& nu : window.cells()) {
      const Rect e = Cell{nu}.extent();
      // Nearest point of the closed square, computed independently.
      const double px = std::clamp(z.real(), e.x0, e.x1), py = std::clamp(z.imag(), e.y0, e.y1);
      if (std::hypot(px - z.real(), py - z.imag()) < r) brute.push_back(nu);
    }
    CHECK(covering_cells(z, r) == brute);
  }
}

TEST_CASE("unit covering contains cell_of and has at most 36 cells") {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const Complex z(rng.uniform(-5, 5), rng.uniform(-5, 5));
    const auto cells = covering_cells(z, 1.0);
    CHECK(cells.size() <= 36);
    CHECK(std::find(cells.begin(), cells.end(), cell_of(z)) != cells.end());
  }
}

TEST_CASE("window indexing is row-major") {
  const Window w(2);
  CHECK(w.cell_count() == 25);
  CHECK(w.at(0) == LatticePoint{-2, -2});
  CHECK(w.at(1) == LatticePoint{-2, -1});
  CHECK(w.at(5) == LatticePoint{-1, -2});
  for (std::size_t i = 0; i < w.cell_count(); ++i) CHECK(w.index(w.at(i)) == i);
  CHECK_THROWS_AS(Window(-1), DomainError);
}

TEST_CASE("grid spec validation") {
  const GridSpec g;
  CHECK(g.step() == doctest::Approx(0.05));
  CHECK(g.radius() == 16.0);
  CHECK(g.window().n_max() == 12);
  CHECK_THROWS_AS(GridSpec(0.0, 16, Window(12)), DomainError);
  CHECK_THROWS_AS(GridSpec(0.05, 13, Window(12)), DomainError);
  CHECK_THROWS_AS(GridSpec(0.03, 16, Window(12)), DomainError);
  CHECK_NOTHROW(GridSpec(0.005, 16, Window(12)));
  CHECK(g.with_window(20).radius() == 22.0);
}
