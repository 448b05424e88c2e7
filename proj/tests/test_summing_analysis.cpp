#include "doctest.h"

#include <cmath>

#include "carleson/errors.hpp"
#include "carleson/summing_analysis.hpp"

using namespace carleson;

namespace {
const GridSpec kSmall(0.05, 8.0, Window(6));

Measure random_atoms(Rng& rng, int count, double spread) {
  std::vector<Atom> atoms;
  for (int i = 0; i < count; ++i)
    atoms.push_back({Complex(rng.uniform(-spread, spread), rng.uniform(-spread, spread)), rng.uniform(0.1, 2.0)});
  return Measure::from_atoms(atoms);
}
}  // namespace

TEST_CASE("target_exponent") {
  auto t = target_exponent(3, 1);
  CHECK(t.regime == Regime::LowR);
  CHECK(t.s == doctest::Approx(0.5));
  t = target_exponent(3, 2);
  CHECK(t.regime == Regime::MidR);
  CHECK(t.s == doctest::Approx(2.0 / 3));
  t = target_exponent(1.5, 7);
  CHECK(t.regime == Regime::SubTwo);
  CHECK(t.s == doctest::Approx(4.0 / 3));
  for (double r : {1.0, 1.5, 2.0, 3.0, 10.0}) CHECK(target_exponent(2, r).s == 1.0);
  CHECK_THROWS_AS(target_exponent(1.0, 2), DomainError);
  CHECK_THROWS_AS(target_exponent(2.0, 0.5), DomainError);
}

TEST_CASE("target_exponent is continuous across regime boundaries") {
  for (double p : {2.5, 3.0, 4.0, 7.0}) {
    const double pc = conjugate_exponent(p);
    CHECK(std::abs(target_exponent(p, pc).s - pc / p) < 1e-12);
    CHECK(std::abs(target_exponent(p, std::nextafter(pc, 10.0)).s - pc / p) < 1e-12);
    CHECK(std::abs(target_exponent(p, p).s - 1.0) < 1e-12);
    CHECK(std::abs(target_exponent(p, std::nextafter(p, 0.0)).s - 1.0) < 1e-12);
  }
  CHECK(std::abs(target_exponent(std::nextafter(2.0, 0.0), 1).s - 1.0) < 1e-12);
}

TEST_CASE("ls_norm") {
  const std::vector<double> one{2.5};
  for (double s : {0.3, 1.0, 2.0, kInf}) CHECK(ls_norm(one, s) == doctest::Approx(2.5));
  CHECK(ls_norm(std::vector<double>{3, 4}, 2) == doctest::Approx(5.0));
  const std::vector<double> flat(9, 2.0);
  CHECK(ls_norm(flat, 0.5) == doctest::Approx(2.0 * 81.0));
  CHECK(ls_norm(std::vector<double>{0, 0}, 1.0) == 0.0);
}

TEST_CASE("lattice_sequence") {
  const Window w3(3);
  const auto seq = lattice_sequence(Measure::from_atoms({{0.0, 1.0}}), Weight::constant(1.0), 1.0, w3, kSmall);
  for (const auto& nu : w3.cells()) CHECK(seq[nu] == (nu == LatticePoint{0, 0} ? doctest::Approx(1.0) : doctest::Approx(0.0)));
  const auto leb = lattice_sequence(Measure::lebesgue(), Weight::constant(1.0), 1.0, w3, kSmall);
  for (double v : leb.values()) CHECK(v == doctest::Approx(1.0));

  Rng rng(4);
  const Measure mu = random_atoms(rng, 30, 3.0);
  const Weight w = Weight::radial_power(1.0);
  const auto a = lattice_sequence(mu, w, 0.7, w3, kSmall);
  const auto b = lattice_sequence(mu.scaled(3.0), w, 0.7, w3, kSmall);
  for (const auto& nu : w3.cells()) CHECK(std::abs(b[nu] - 3.0 * a[nu]) <= 1e-12 * (1 + a[nu]));
  const Weight zero = Weight::from_density([](Complex) { return 0.0; }, "zero");
  CHECK_THROWS_AS(lattice_sequence(mu, zero, 1.0, w3, kSmall), DegenerateWeight);
}

TEST_CASE("classify_embedding on trivial measures") {
  const auto z = classify_embedding(3, 2, 1, Weight::constant(1.0), Measure::zero(), kSmall);
  CHECK(z.classification == Classification::summing_certified);
  CHECK(z.lattice_norm == 0.0);
  CHECK(z.integral_norm == 0.0);
  CHECK(z.pi_low == 0.0);
  CHECK(z.pi_high == 0.0);
  REQUIRE(z.tail_certificate);
  CHECK(*z.tail_certificate == 0.0);

  for (auto [p, r] : {std::pair{1.5, 1.0}, {3.0, 1.0}, {3.0, 2.0}, {3.0, 5.0}}) {
    const auto v = classify_embedding(p, r, 1, Weight::constant(1.0), Measure::lebesgue(), kSmall);
    CHECK(v.classification == Classification::not_summing_certified);
    CHECK(!v.tail_certificate);
    CHECK(v.pi_high == kInf);
    CHECK(v.trace.back().lattice_norm > v.trace.front().lattice_norm);
  }
}

TEST_CASE("Lebesgue growth is detected without any floor") {
  const Measure flat = Measure::from_log_density([](Complex) { return 0.0; }, "flat");
  const auto v = classify_embedding(2, 2, 1, Weight::constant(1.0), flat, kSmall.with_step(0.1));
  CHECK(v.classification == Classification::not_summing_certified);
  CHECK(v.basis.find("1.2x") != std::string::npos);
}

TEST_CASE("Hilbert-Schmidt bracket at p = 2") {
  Rng rng(77);
  for (int trial = 0; trial < 5; ++trial) {
    const Measure mu = random_atoms(rng, 12, 4.0);
    const double alpha = rng.uniform(0.5, 2.0);
    const auto v = classify_embedding(2, 2, alpha, Weight::constant(1.0), mu, kSmall);
    const double hs = std::sqrt(alpha * mu.atom_mass() / kPi);
    CHECK(v.classification == Classification::summing_certified);
    CHECK(v.pi_low <= hs);
    CHECK(hs <= v.pi_high);
    CHECK(v.lattice_norm == doctest::Approx(std::sqrt(mu.atom_mass())));
  }
}

TEST_CASE("classify_embedding homogeneity and ordering") {
  Rng rng(12);
  const Weight w = Weight::radial_power(0.5);
  for (int trial = 0; trial < 4; ++trial) {
    const Measure mu = random_atoms(rng, 20, 5.0);
    const double p = rng.uniform(1.2, 4.0), r = rng.uniform(1.0, 5.0), c = rng.uniform(0.1, 10.0);
    const auto a = classify_embedding(p, r, 1, w, mu, kSmall);
    const auto b = classify_embedding(p, r, 1, w, mu.scaled(c), kSmall);
    CHECK(std::abs(b.lattice_norm / a.lattice_norm - std::pow(c, 1 / p)) < 1e-9);
    CHECK(a.pi_low <= a.pi_high);
    CHECK(b.pi_low <= b.pi_high);
  }
}

TEST_CASE("envelope tail certificate on Gaussian densities") {
  const auto v = classify_embedding(3, 2, 1, Weight::constant(1.0), Measure::gaussian(1.0), kSmall);
  CHECK(v.classification == Classification::summing_certified);
  REQUIRE(v.tail_certificate);
  CHECK(*v.tail_certificate < 1e-10);
  CHECK(v.pi_low <= v.pi_high);

  // Missing envelope: a density with no declared bound stays inconclusive
  // unless the window trace grows.
  const Measure bare = Measure::from_log_density([](Complex z) { return -std::norm(z); }, "bare");
  const auto u = classify_embedding(3, 2, 1, Weight::constant(1.0), bare, kSmall.with_step(0.1));
  CHECK(u.classification == Classification::inconclusive);
  CHECK(u.basis.find("MissingEnvelope") != std::string::npos);
}

TEST_CASE("atoms outside the window enter the tail exactly") {
  const Measure mu = Measure::from_atoms({{0.0, 1.0}, {Complex(10.0, 0.0), 4.0}});
  const auto v = classify_embedding(2, 2, 1, Weight::constant(1.0), mu, kSmall);
  REQUIRE(v.tail_certificate);
  CHECK(*v.tail_certificate == doctest::Approx(4.0));
  CHECK(v.lattice_norm == doctest::Approx(1.0));
}

TEST_CASE("diag_summing_estimate") {
  const std::vector<double> single{0.7};
  for (double r : {1.0, 1.5, 2.0, 2.5, 4.0}) CHECK(diag_summing_estimate(single, 3.0, r) == doctest::Approx(0.7));
  CHECK(diag_summing_estimate(std::vector<double>(5, 1.0), 2.0, 2.0) == doctest::Approx(std::sqrt(5.0)));
  Rng rng(3);
  std::vector<double> lam(20);
  for (double& x : lam) x = rng.uniform(0, 1);
  for (double p : {2.5, 3.0, 6.0}) {
    const double pc = conjugate_exponent(p);
    CHECK(std::abs(diag_summing_estimate(lam, p, pc) - diag_summing_estimate(lam, p, std::nextafter(pc, 10.0))) < 1e-12);
    CHECK(std::abs(diag_summing_estimate(lam, p, p) - diag_summing_estimate(lam, p, std::nextafter(p, 10.0))) < 1e-12);
  }
}

TEST_CASE("weak_r_norm") {
  // Identity family on l^2 with r = 2: sup over unit c of ‖c‖_2 = 1.
  std::vector<double> eye(16, 0.0);
  for (int i = 0; i < 4; ++i) eye[i * 4 + i] = 1.0;
  CHECK(weak_r_norm(eye, 4, 4, 2.0, 2.0, 1) == doctest::Approx(1.0).epsilon(1e-8));
  // r = 1: sup over signs of ‖Σ ±e_j‖_p = 4^{1/p}.
  CHECK(weak_r_norm(eye, 4, 4, 3.0, 1.0, 1) == doctest::Approx(std::pow(4.0, 1 / 3.0)).epsilon(1e-8));
  // A single vector: ‖x‖_p.
  const std::vector<double> col{3.0, -4.0};
  CHECK(weak_r_norm(col, 2, 1, 2.0, 1.5, 1) == doctest::Approx(5.0));
}

TEST_CASE("diag_summing_bruteforce") {
  std::vector<double> e(10, 0.0);
  e[3] = 1.0;
  for (double r : {1.0, 2.0, 3.0}) {
    const double lb = diag_summing_bruteforce(e, 3.0, r, 5, 11);
    CHECK(lb >= 1 - 1e-6);
    CHECK(lb <= 1 + 1e-6);
  }
  CHECK(diag_summing_bruteforce(std::vector<double>(8, 1.0), 2, 2, 4, 5) >= 0.9 * std::sqrt(8.0));
  CHECK_THROWS_AS(diag_summing_bruteforce(std::vector<double>(65, 1.0), 2, 2, 1, 5), DomainError);
  CHECK(diag_summing_bruteforce(std::vector<double>(65, 0.0), 2, 2, 1, 5) == 0.0);
}

TEST_CASE("order_bounded_check") {
  const GridSpec fine = kSmall.with_step(0.01);
  for (Complex u : {Complex(0.0, 0.0), Complex(0.3, -1.7), Complex(2.5, 0.5)}) {
    const auto rep = order_bounded_check(Measure::from_atoms({{u, 1.0}}), Weight::constant(1.0), 2, 1, fine);
    CHECK(rep.verdict == Tri::yes);
    CHECK(std::abs(rep.value - 1.0) < 1e-3);
    CHECK(std::abs(rep.intermediate - 1 / kPi) < 1e-3);
  }
  const auto zero = order_bounded_check(Measure::zero(), Weight::constant(1.0), 2, 1, kSmall);
  CHECK(zero.verdict == Tri::yes);
  CHECK(zero.value == 0.0);
  const auto leb = order_bounded_check(Measure::lebesgue(), Weight::constant(1.0), 2, 1, kSmall);
  CHECK(leb.verdict == Tri::no);
}

TEST_CASE("order bounded implies HighR summing") {
  Rng rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    const Measure mu = random_atoms(rng, 10, 5.0) + Measure::gaussian(rng.uniform(0.5, 2.0));
    const double p = rng.uniform(2.0, 4.0);
    const auto ob = order_bounded_check(mu, Weight::constant(1.0), p, 1, kSmall);
    if (ob.verdict != Tri::yes) continue;
    const auto v = classify_embedding(p, p + rng.uniform(0, 2), 1, Weight::constant(1.0), mu, kSmall);
    CHECK(v.classification == Classification::summing_certified);
  }
}

TEST_CASE("local bounds") {
  const Measure d = Measure::from_atoms({{0.0, 1.0}});
  CHECK(local_summing_bound(d, Weight::constant(1.0), {0, 0}, 2, kSmall) == doctest::Approx(1.0));
  CHECK(local_summing_bound(d, Weight::constant(1.0), {2, 1}, 2, kSmall) == 0.0);

  // With r = p in HighR the aggregate equals the lattice norm.
  Rng rng(19);
  const Measure mu = random_atoms(rng, 25, 5.0);
  const Weight w = Weight::radial_power(1.0);
  const double p = 3.0;
  std::vector<double> bounds;
  for (const auto& nu : kSmall.window().cells()) bounds.push_back(local_summing_bound(mu, w, nu, p, kSmall));
  const auto v = classify_embedding(p, p, 1, w, mu, kSmall);
  CHECK(std::abs(aggregate_local_bounds(bounds, p) - v.lattice_norm) < 1e-9 * v.lattice_norm);
}
