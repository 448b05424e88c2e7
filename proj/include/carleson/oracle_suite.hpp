#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "carleson/calibration.hpp"
#include "carleson/fock_space.hpp"
#include "carleson/summing_analysis.hpp"

namespace carleson {

// Slack applied to pinned bands on re-runs with fresh seeds.
inline constexpr double kBandSlack = 0.2;

// Ratios of two sides of an asymptotic equivalence over seeded cases,
// checked against a pinned band.
struct RatioReport {
  std::string id;
  std::vector<double> ratios;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double scale_error = 0.0;  // worst relative change of a ratio under μ ↦ cμ
  Band band;
  bool pass = false;
};

// Σ_ν μ(Q)^γ/w(Q)^η against ∫ μ(D(z,1))^γ/w(D(z,1))^η dA over the window, for
// weights {1, (1+|z|)², (1+|z|)^{−2}} and (γ, η) ∈ {(½,½), (1,1), (2,1)}.
std::vector<RatioReport> verify_lattice_integral_equivalence(int cases, std::uint64_t seed, const GridSpec& grid,
                                                            const Calibration& cal = Calibration::builtin());

struct GaussianSumSides {
  double integral_side = 0.0;  // ∫(Σ e^{−α|u−z|²}dμ(z))^{p'/2} w(u)^{−p'/p} dA(u)
  double lattice_side = 0.0;  // Σ λ^{p'/2}, λ_ν = μ(Q₁(ν))/w(Q₁(ν))^{2/p}
  double ratio() const { return lattice_side > 0.0 ? integral_side / lattice_side : 0.0; }
};

GaussianSumSides gaussian_sum_sides(double p, double alpha, const Weight& w, const Measure& mu, const GridSpec& grid);

// p ∈ {1.25, 1.5, 1.75}, w ≡ 1, ten seeded sets of ten atoms in D(0,3).
std::vector<RatioReport> verify_gaussian_sum_equivalence(std::uint64_t seed, const GridSpec& grid,
                                                   const Calibration& cal = Calibration::builtin());

struct HsReport {
  double exact = 0.0;  // √(αμ(ℂ)/π)
  double pi_low = 0.0;
  double pi_high = 0.0;
  bool bracketed = false;
  double width = 0.0;  // pi_high/pi_low
};

HsReport verify_hs_oracle(double alpha, std::span<const Atom> atoms, const GridSpec& grid,
                          const Calibration& cal = Calibration::builtin());

struct BerezinReport {
  BerezinBounds bounds;
  double ratio = 0.0;  // lower^{q/2}/lattice_proxy
  Band band;
  bool pass = false;
};

BerezinReport verify_berezin_equivalence(double p, double q, double alpha, const Weight& w, const Measure& mu,
                                         int trials, std::uint64_t seed, const GridSpec& grid,
                                         const Calibration& cal = Calibration::builtin());

struct DiagReport {
  int cases = 0;
  double max_ratio = 0.0;       // brute-force lower bound over the closed form
  double rank_one_error = 0.0;  // worst |π_r(e_ν) − 1|
  double identity_ratio = 0.0;  // brute force on eight ones at p = r = 2, over √8
  Band band;
  bool pass = false;
};

DiagReport verify_diag_consistency(int cases, std::uint64_t seed, const Calibration& cal = Calibration::builtin());

struct MonotonicityReport {
  int certified = 0;  // base cases certified summing
  int checked = 0;    // (q, β) pairs checked from those
  int violations = 0;
  bool pass = false;
};

// Affine pull-back measures with |a| < 1: summing at (p, α) forces summing at
// q ∈ {1.5, min(p, 2)} and β ∈ {α/2, α, 2α}.
MonotonicityReport verify_monotonicity(std::uint64_t seed, const GridSpec& grid);

struct SuiteLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Suites: lattice-integral, gaussian-sum, hs, berezin, diag, monotonicity,
// order-bounded, all. Throws DomainError for an unknown name.
std::vector<SuiteLine> run_suite(const std::string& name, std::uint64_t seed, const GridSpec& grid,
                                 const Calibration& cal = Calibration::builtin());

}  // namespace carleson
