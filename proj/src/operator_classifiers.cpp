#include "carleson/operator_classifiers.hpp"

#include <cmath>

#include "carleson/errors.hpp"

namespace carleson {
namespace {

void attach(OperatorReport& rep, SummingVerdict v) {
  const Verdict numeric = verdict_of(v.classification);
  rep.agrees = numeric == Verdict::inconclusive || rep.verdict == Verdict::inconclusive || numeric == rep.verdict;
  rep.cross_check = std::move(v);
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::summing: return "SUMMING";
    case Verdict::not_summing: return "NOT_SUMMING";
    case Verdict::inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

Verdict verdict_of(Classification c) {
  switch (c) {
    case Classification::summing_certified: return Verdict::summing;
    case Classification::not_summing_certified: return Verdict::not_summing;
    case Classification::inconclusive: return Verdict::inconclusive;
  }
  return Verdict::inconclusive;
}

OperatorReport classify_composition(const AffineSymbol& phi, double p, double r, double alpha, const GridSpec& grid) {
  target_exponent(p, r);  // validates p and r
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  OperatorReport rep;
  const double a = std::abs(phi.a);
  if (a < 1.0) {
    rep.verdict = Verdict::summing;
    rep.reason = a == 0.0 ? "constant symbol: rank one" : "|a| < 1";
  } else {
    rep.verdict = Verdict::not_summing;
    rep.bounded = a == 1.0 && phi.b == 0.0;
    rep.reason = rep.bounded ? "|a| = 1, b = 0: unitary rotation" : "|a| >= 1 with b != 0 or |a| > 1: not bounded";
  }
  attach(rep, classify_embedding(p, r, alpha, Weight::constant(1.0), pullback_measure(phi, p, alpha), grid));
  return rep;
}

OperatorReport classify_composition(const PolynomialSymbol& phi, double p, double r, double alpha,
                                    const GridSpec& grid) {
  if (phi.degree() <= 1) {
    const auto& c = phi.coefficients();
    return classify_composition(AffineSymbol{c.size() > 1 ? c[1] : 0.0, c[0]}, p, r, alpha, grid);
  }
  target_exponent(p, r);
  OperatorReport rep;
  rep.verdict = Verdict::not_summing;
  rep.bounded = false;
  rep.reason = "non-affine symbol: composition operator not bounded";
  return rep;
}

OperatorReport classify_volterra(const PolynomialSymbol& g, double p, double r, double alpha, const GridSpec& grid) {
  target_exponent(p, r);
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  OperatorReport rep;
  const int d = g.degree();
  if (p > 2.0 && r > 2.0) {
    rep.verdict = d <= 1 ? Verdict::summing : Verdict::not_summing;
    rep.reason = "p > 2, r > 2: summing iff deg g <= 1";
  } else {
    rep.verdict = d == 0 ? Verdict::summing : Verdict::not_summing;
    rep.reason = "p <= 2 or r <= 2: summing iff g is constant";
  }
  // J_g is bounded on F^p_α iff deg g ≤ 2.
  rep.bounded = d <= 2;
  attach(rep, classify_embedding(p, r, alpha, Weight::constant(1.0), volterra_measure(g, p), grid));
  return rep;
}

OperatorReport reduce_differentiation(int k, double p, double r, double alpha, const Weight& w, const Measure& mu,
                                      const GridSpec& grid) {
  target_exponent(p, r);
  OperatorReport rep;
  if (k < 0) {
    const MomentReport moments = moment_condition(mu, p, alpha, -k - 1, grid);
    if (moments.verdict != Tri::yes) {
      rep.verdict = Verdict::inconclusive;
      rep.reason = "MomentConditionFailed: " + moments.reason;
      return rep;
    }
  }
  SummingVerdict v = classify_embedding(p, r, alpha, tilted_weight(w, k, p), mu, grid);
  rep.verdict = verdict_of(v.classification);
  rep.reason = "embedding with weight " + tilted_weight(w, k, p).label() + ": " + v.basis;
  rep.cross_check = std::move(v);
  return rep;
}

}  // namespace carleson
