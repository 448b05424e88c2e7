#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "carleson/calibration.hpp"
#include "carleson/measures.hpp"
#include "carleson/weights.hpp"

namespace carleson {

enum class Regime { SubTwo, LowR, MidR, HighR };
const char* to_string(Regime r);

enum class Classification { summing_certified, not_summing_certified, inconclusive };
const char* to_string(Classification c);

struct RegimeExponent {
  Regime regime;
  double s;
};

// Exponent s such that r-summability is decided by μ̂_w ∈ L^s.
RegimeExponent target_exponent(double p, double r);

// Nonnegative sequence over a lattice window (zero outside).
class DiagonalSequence {
 public:
  DiagonalSequence(Window window, std::vector<double> values);

  const Window& window() const { return window_; }
  std::span<const double> values() const { return values_; }
  double operator[](LatticePoint nu) const { return window_.contains(nu) ? values_[window_.index(nu)] : 0.0; }

 private:
  Window window_;
  std::vector<double> values_;
};

// ν ↦ μ(Q₁(ν))/w(Q₁(ν))^{q_over_p}
DiagonalSequence lattice_sequence(const Measure& mu, const Weight& w, double q_over_p, const Window& window,
                                  const GridSpec& grid);

// (Σ λ^s)^{1/s}; s = ∞ gives the maximum. Quasi-norms (s < 1) allowed.
double ls_norm(std::span<const double> values, double s);
inline double ls_norm(const DiagonalSequence& seq, double s) { return ls_norm(seq.values(), s); }

struct WindowTrace {
  int n_max = 0;
  double lattice_norm = 0.0;
};

struct SummingVerdict {
  double p = 0.0, r = 0.0, alpha = 0.0;
  Regime regime = Regime::HighR;
  double s = 1.0;
  double lattice_norm = 0.0;
  double integral_norm = 0.0;
  Window window;
  // Certified bound on Σ_{ν ∉ window} λ_ν^s, when envelopes allow one.
  std::optional<double> tail_certificate;
  double pi_low = 0.0;
  double pi_high = 0.0;
  Classification classification = Classification::inconclusive;
  std::vector<WindowTrace> trace;
  std::string basis;  // how the classification was reached
  std::size_t boundary_atoms = 0;
};

// Point-evaluation constant (pα/(2π))^{1/p} of F^p_α; scales the π_r band.
double point_evaluation_constant(double p, double alpha);

SummingVerdict classify_embedding(double p, double r, double alpha, const Weight& w, const Measure& mu,
                                  const GridSpec& grid, const Calibration& calibration = Calibration::builtin());

// Closed form for π_r of a diagonal multiplier on l^p, p ≥ 2, up to constants.
double diag_summing_estimate(std::span<const double> lambda, double p, double r);
inline double diag_summing_estimate(const DiagonalSequence& seq, double p, double r) {
  return diag_summing_estimate(seq.values(), p, r);
}

// sup over ‖c‖_{r'} ≤ 1 of ‖Σ_j c_j x_j‖_p for the columns x_j of `family`
// (row-major n × m, entry (i, j) = x_j(i)), by monotone ascent with restarts.
double weak_r_norm(std::span<const double> family, int n, int m, double p, double r, std::uint64_t seed);

// Best ratio (Σ‖M_λ x_j‖_p^r)^{1/r} / weak_r_norm over seeded families; a lower
// bound for π_r(M_λ) on l^p.
double diag_summing_bruteforce(std::span<const double> lambda, double p, double r, int families, std::uint64_t seed);

struct OrderBoundedReport {
  Tri verdict = Tri::inconclusive;
  double value = 0.0;         // ∫_W μ̂_w dA
  double intermediate = 0.0;  // ∫_W dμ/w(D(·,1))
  std::optional<double> tail_certificate;
  std::string basis;
};

OrderBoundedReport order_bounded_check(const Measure& mu, const Weight& w, double p, double alpha,
                                       const GridSpec& grid);

// (μ(Q₁(ν))/w(Q₁(ν)))^{1/p}
double local_summing_bound(const Measure& mu, const Weight& w, LatticePoint nu, double p, const GridSpec& grid);
// (Σ bound^r)^{1/r}
double aggregate_local_bounds(std::span<const double> bounds, double r);

}  // namespace carleson
