#pragma once

#include <optional>
#include <string>

#include "carleson/summing_analysis.hpp"

namespace carleson {

enum class Verdict { summing, not_summing, inconclusive };
const char* to_string(Verdict v);  // SUMMING, NOT_SUMMING, INCONCLUSIVE
Verdict verdict_of(Classification c);

struct OperatorReport {
  Verdict verdict = Verdict::inconclusive;  // closed form where one exists
  bool bounded = true;
  std::optional<SummingVerdict> cross_check;
  // False only when a certified cross-check contradicts the closed form.
  bool agrees = true;
  std::string reason;
};

// C_φ on F^p_α with φ(z) = az + b: r-summing iff |a| < 1. Cross-checked on
// the pull-back measure.
OperatorReport classify_composition(const AffineSymbol& phi, double p, double r, double alpha,
                                    const GridSpec& grid = GridSpec());
// Polynomial symbols of degree ≥ 2 give unbounded composition operators.
OperatorReport classify_composition(const PolynomialSymbol& phi, double p, double r, double alpha,
                                    const GridSpec& grid = GridSpec());

// J_g on F^p_α: summing iff deg g = 0, except for p > 2 and r > 2 where
// deg g ≤ 1 suffices.
OperatorReport classify_volterra(const PolynomialSymbol& g, double p, double r, double alpha,
                                 const GridSpec& grid = GridSpec());

// D^{(k)}: F^p_{α,w} → L^p_α(μ) is r-summing iff the embedding with the weight
// w·(1+|z|)^{−kp} is. For k < 0 the moments ∫|z|^{lp}e^{−(pα/2)|z|²}dμ,
// l < −k, must be finite; otherwise the verdict is inconclusive.
OperatorReport reduce_differentiation(int k, double p, double r, double alpha, const Weight& w, const Measure& mu,
                                      const GridSpec& grid = GridSpec());

}  // namespace carleson
