#include "doctest.h"

#include <cmath>

#include "carleson/discretization.hpp"
#include "carleson/errors.hpp"
#include "carleson/oracle_suite.hpp"

using namespace carleson;

namespace {
const GridSpec kGrid;
}

TEST_CASE("lattice/integral ratio for a point mass") {
  const EmbeddingDiscretization d(Measure::from_atoms({{0.0, 1.0}}), Weight::constant(1.0), kGrid);
  CHECK(d.lattice_sum(1, 1, kGrid.window().n_max()) == doctest::Approx(1.0));
  CHECK(std::abs(d.disk_integral(1, 1) - 1.0) < 1e-9);
}

TEST_CASE("lattice/integral equivalence on fresh seeds") {
  const auto reports = verify_lattice_integral_equivalence(4, 7, kGrid);
  CHECK(reports.size() == 9);
  for (const auto& r : reports) {
    INFO(r.id);
    CHECK(r.scale_error <= 1e-9);
    CHECK(r.pass);
  }
}

TEST_CASE("Gaussian-sum sides") {
  const GaussianSumSides zero = gaussian_sum_sides(1.5, 1, Weight::constant(1.0), Measure::zero(), kGrid);
  CHECK(zero.integral_side == 0.0);
  CHECK(zero.lattice_side == 0.0);

  Rng rng(3);
  std::vector<Atom> atoms;
  for (int i = 0; i < 10; ++i) atoms.push_back({Complex(rng.uniform(-2, 2), rng.uniform(-2, 2)), rng.uniform(0.1, 2)});
  const Measure mu = Measure::from_atoms(atoms);
  for (double p : {1.25, 1.5, 1.75}) {
    const double e = conjugate_exponent(p) / 2;
    const GaussianSumSides a = gaussian_sum_sides(p, 1, Weight::radial_power(1), mu, kGrid);
    const GaussianSumSides b = gaussian_sum_sides(p, 1, Weight::radial_power(1), mu.scaled(5), kGrid);
    CHECK(b.integral_side == doctest::Approx(std::pow(5.0, e) * a.integral_side));
    CHECK(b.lattice_side == doctest::Approx(std::pow(5.0, e) * a.lattice_side));
  }
  for (const auto& r : verify_gaussian_sum_equivalence(23, kGrid)) {
    INFO(r.id);
    CHECK(r.pass);
  }
}

TEST_CASE("Hilbert-Schmidt oracle") {
  const std::vector<Atom> delta{{0.0, 1.0}};
  const HsReport d = verify_hs_oracle(1, delta, kGrid);
  CHECK(d.exact == doctest::Approx(1 / std::sqrt(kPi)));
  CHECK(d.bracketed);
  const std::vector<Atom> heavy{{0.0, 9.0}};
  CHECK(verify_hs_oracle(1, heavy, kGrid).exact == doctest::Approx(3 / std::sqrt(kPi)));

  Rng rng(50);
  std::vector<Atom> atoms;
  for (int i = 0; i < 50; ++i)
    atoms.push_back({std::polar(3 * std::sqrt(rng.uniform()), rng.uniform(0, 2 * kPi)), rng.uniform(0.1, 2)});
  const HsReport r = verify_hs_oracle(1, atoms, kGrid);
  CHECK(r.bracketed);
  CHECK(r.width <= 3.0);
}

TEST_CASE("Berezin equivalence") {
  const BerezinReport zero = verify_berezin_equivalence(1.5, 2, 1, Weight::constant(1.0), Measure::zero(), 5, 1, kGrid);
  CHECK(zero.pass);
  CHECK(zero.bounds.lower == 0.0);
  for (const auto& line : run_suite("berezin", 31, kGrid)) {
    INFO(line.detail);
    CHECK(line.pass);
  }
}

TEST_CASE("diagonal consistency") {
  const DiagReport r = verify_diag_consistency(12, 5);
  CHECK(r.rank_one_error <= 1e-6);
  CHECK(std::abs(r.identity_ratio - 1.0) <= 0.1);
  CHECK(r.max_ratio <= r.band.hi);
  CHECK(r.pass);
}

TEST_CASE("monotonicity") {
  const GridSpec coarse(0.1, 16.0, Window(12));
  const MonotonicityReport r = verify_monotonicity(4, coarse);
  CHECK(r.certified > 0);
  CHECK(r.violations == 0);
  CHECK(r.pass);
}

TEST_CASE("run_suite") {
  CHECK_THROWS_AS(run_suite("nope", 1, kGrid), DomainError);
  const auto a = run_suite("gaussian-sum", 9, kGrid), b = run_suite("gaussian-sum", 9, kGrid);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].detail == b[i].detail);
  for (const auto& line : run_suite("order-bounded", 2, kGrid)) {
    INFO(line.detail);
    CHECK(line.pass);
  }
}
