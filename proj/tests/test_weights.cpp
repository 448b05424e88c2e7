#include "doctest.h"

#include <cmath>

#include "carleson/errors.hpp"
#include "carleson/numerics.hpp"
#include "carleson/weights.hpp"

using namespace carleson;

namespace {
// ∫_{Q₁(0)} (1+|u|)² dA = 1 + 2·E|u| + E|u|², with E|u| = (√2 + ln(1+√2))/6
// the mean distance from the center of a unit square and E|u|² = 1/6.
const double kSquareOracle = 1.0 + (std::sqrt(2.0) + std::log(1.0 + std::sqrt(2.0))) / 3.0 + 1.0 / 6.0;

GridSpec small_grid(int n_max, double step = 0.05) { return GridSpec(step, n_max + 2.0, Window(n_max)); }
}  // namespace

TEST_CASE("mass_on_square") {
  const GridSpec g;
  const Weight one = Weight::constant(1.0);
  CHECK(mass_on_square(one, Complex(3.3, -1.2), 1.0, g) == doctest::Approx(1.0));
  CHECK(mass_on_square(one, 0.0, 2.0, g) == doctest::Approx(4.0));
  const Weight sq = Weight::radial_power(2.0);
  // The midpoint error is about (h²/24)∫Δw, with ∫Δw ≈ 11 from the cone at 0.
  const double at_005 = mass_on_square(sq, 0.0, 1.0, g.with_step(0.005));
  CHECK(std::abs(at_005 - kSquareOracle) / kSquareOracle < 1e-5);
  const double at_001 = mass_on_square(sq, 0.0, 1.0, g.with_step(0.001));
  CHECK(std::abs(at_001 - kSquareOracle) / kSquareOracle < 1e-6);
  // Richardson extrapolation from two coarser steps agrees with the oracle too.
  const double a = mass_on_square(sq, 0.0, 1.0, g.with_step(0.02));
  const double b = mass_on_square(sq, 0.0, 1.0, g.with_step(0.01));
  CHECK(std::abs((4 * b - a) / 3 - kSquareOracle) < 1e-6);
  const Weight zero = Weight::from_density([](Complex) { return 0.0; }, "zero");
  CHECK_THROWS_AS(mass_on_square(zero, 0.0, 1.0, g), NonPositiveMass);
}

TEST_CASE("mass_on_disk") {
  const GridSpec g(0.01, 16, Window(12));
  const Weight one = Weight::from_density([](Complex) { return 1.0; }, "one");
  CHECK(std::abs(mass_on_disk(one, Complex(0.37, 1.91), 1.0, g) - kPi) < 1e-4);
  CHECK(mass_on_disk(one, 0.0, 2.0, g) == doctest::Approx(4 * kPi));
  const Weight inv = Weight::radial_power(-2.0);
  CHECK(std::abs(mass_on_disk(inv, 0.0, 1.0, g.with_step(0.002)) - 2 * kPi * (std::log(2.0) - 0.5)) < 1e-6);
}

TEST_CASE("apr_constant") {
  const GridSpec g = small_grid(12);
  CHECK(apr_constant(Weight::constant(1.0), 2.0, 1.0, g) == 1.0);
  CHECK(apr_constant(Weight::from_density([](Complex) { return 3.0; }, "three"), 3.0, 1.0, g) ==
        doctest::Approx(1.0).epsilon(1e-12));

  const Weight sq = Weight::radial_power(2.0);
  const double c8 = apr_constant(sq, 2.0, 1.0, small_grid(8));
  const double c12 = apr_constant(sq, 2.0, 1.0, g);
  CHECK(std::isfinite(c12));
  CHECK(c12 >= 1.0);
  CHECK(std::abs(c12 / c8 - 1.0) < 0.01);
  CHECK(apr_constant_report(sq, 2.0, 1.0, g).membership == Membership::stable);

  const Weight gauss = Weight::gaussian_growth(1.0);
  CHECK_THROWS_AS(apr_constant(gauss, 2.0, 1.0, g), DivergentConstant);
  const auto rep = apr_constant_report(gauss, 2.0, 1.0, g);
  CHECK(rep.membership == Membership::divergent);
  REQUIRE(rep.trace.size() == 4);
  CHECK(rep.trace[3].second > 10 * rep.trace[0].second);
  CHECK_THROWS_AS(apr_constant(sq, 1.0, 1.0, g), DomainError);
}

TEST_CASE("radial power weights are window-stable in every class") {
  const GridSpec g = small_grid(8);
  for (double gamma : {-2.0, -1.0, 1.0, 2.0})
    for (double p : {1.5, 2.0, 3.0}) {
      const auto rep = apr_constant_report(Weight::radial_power(gamma), p, 1.0, g);
      CHECK(rep.membership == Membership::stable);
      CHECK(rep.value >= 1.0);
    }
}

TEST_CASE("a1_constant") {
  const GridSpec g = small_grid(12);
  CHECK(a1_constant(Weight::constant(1.0), 1.0, g) == 1.0);
  const auto rep = a1_constant_report(Weight::radial_power(1.0), 1.0, g);
  CHECK(std::isfinite(rep.value));
  CHECK(rep.membership == Membership::stable);
  const Weight half = Weight::from_density([](Complex z) { return z.real() > 0 ? 1.0 : 0.0; }, "right-half");
  CHECK_THROWS_AS(a1_constant(half, 1.0, g), ZeroInfimum);
}

TEST_CASE("dual_weight") {
  Rng rng(2);
  const Weight d1 = dual_weight(Weight::constant(1.0), 2.0);
  CHECK(d1(Complex(4, 5)) == 1.0);
  for (double gamma : {-2.0, 1.5, 3.0}) {
    const Weight d = dual_weight(Weight::radial_power(gamma), 2.0);
    for (int i = 0; i < 50; ++i) {
      const Complex z(rng.uniform(-10, 10), rng.uniform(-10, 10));
      CHECK(d(z) == doctest::Approx(std::pow(1 + std::abs(z), -gamma)).epsilon(1e-12));
    }
  }
  // Involution with the conjugate exponent.
  for (double p : {1.5, 3.0, 4.0}) {
    const Weight w = product(Weight::radial_power(1.3), Weight::constant(2.0));
    const Weight back = dual_weight(dual_weight(w, p), conjugate_exponent(p));
    for (int i = 0; i < 50; ++i) {
      const Complex z(rng.uniform(-10, 10), rng.uniform(-10, 10));
      CHECK(std::abs(back(z) - w(z)) <= 1e-12 * w(z));
    }
  }
}

TEST_CASE("cell masses of w and w' are reciprocal up to a bounded band") {
  // w(Q)·w'(Q)^{p/p'} for w = (1+|z|)², p = 2; regression band measured once.
  const GridSpec g = small_grid(12);
  const Weight w = Weight::radial_power(2.0);
  const Weight wd = dual_weight(w, 2.0);
  double lo = kInf, hi = 0.0;
  for (const auto& nu : g.window().cells()) {
    const double v = mass_on_square(w, nu.as_complex(), 1.0, g) * mass_on_square(wd, nu.as_complex(), 1.0, g);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo >= 1.0);
  CHECK(hi <= 1.12);
}

TEST_CASE("averaged_weight") {
  const GridSpec g(0.005, 14, Window(12));
  CHECK(averaged_weight(Weight::constant(1.0), g)(Complex(0.3, 0.1)) == 1.0);
  const Weight sq = Weight::radial_power(2.0);
  const GridSpec coarse(0.05, 6, Window(4));
  const Weight hat = averaged_weight(sq, coarse);
  for (const auto& nu : coarse.window().cells())
    CHECK(hat(nu.as_complex()) == doctest::Approx(mass_on_square(sq, nu.as_complex(), 1.0, coarse)).epsilon(1e-12));
  const Weight hat_fine = averaged_weight(sq, GridSpec(0.001, 3, Window(1)));
  CHECK(std::abs(hat_fine(0.0) - kSquareOracle) < 1e-6);
  // Between table points the interpolation stays close to direct quadrature.
  const Complex z(1.13, -2.41);
  CHECK(hat(z) == doctest::Approx(mass_on_square(sq, z, 1.0, coarse)).epsilon(2e-3));
}

TEST_CASE("esti_growth_constant") {
  const GridSpec g = small_grid(12);
  CHECK(esti_growth_constant(Weight::constant(1.0), g.window(), g) == doctest::Approx(1.0));
  const Weight sq = Weight::radial_power(2.0);
  const CellMassTable table = cell_mass_table(sq, g.window(), g);
  const double c = esti_growth_constant(table);
  CHECK(c <= 9.0);
  CHECK(esti_growth_constant(sq.scaled(5.0), g.window(), g) == doctest::Approx(c).epsilon(1e-12));
  // Adjacent pairs alone never need a larger constant.
  double adjacent = 1.0;
  for (const auto& nu : g.window().cells())
    for (LatticePoint nb : {LatticePoint{nu.j + 1, nu.k}, LatticePoint{nu.j, nu.k + 1}}) {
      if (!g.window().contains(nb)) continue;
      const double r = table.mass(nu) / table.mass(nb);
      adjacent = std::max({adjacent, r, 1 / r});
      CHECK(r <= c * (1 + 1e-12));
      CHECK(r >= 1 / c * (1 - 1e-12));
    }
  CHECK(adjacent <= c * (1 + 1e-12));
}
