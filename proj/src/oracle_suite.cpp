#include "carleson/oracle_suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "carleson/discretization.hpp"
#include "carleson/errors.hpp"
#include "carleson/operator_classifiers.hpp"
#include "carleson/parallel.hpp"

namespace carleson {
namespace {

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

Measure seeded_atoms(Rng& rng, int count, double radius) {
  std::vector<Atom> atoms;
  for (int i = 0; i < count; ++i)
    atoms.push_back({std::polar(radius * std::sqrt(rng.uniform()), rng.uniform(0, 2 * kPi)), rng.uniform(0.1, 2.0)});
  return Measure::from_atoms(atoms);
}

void finish(RatioReport& rep, const Calibration& cal) {
  rep.band = cal.band(rep.id);
  if (rep.ratios.empty()) return;
  rep.min_ratio = *std::min_element(rep.ratios.begin(), rep.ratios.end());
  rep.max_ratio = *std::max_element(rep.ratios.begin(), rep.ratios.end());
  rep.pass = rep.band.contains_with_slack(rep.min_ratio, kBandSlack) &&
             rep.band.contains_with_slack(rep.max_ratio, kBandSlack) && rep.scale_error <= 1e-9;
}

std::string describe(const RatioReport& r) {
  return r.id + " ratio [" + fmt("%.4g", r.min_ratio) + ", " + fmt("%.4g", r.max_ratio) + "] band [" +
         fmt("%.4g", r.band.lo) + ", " + fmt("%.4g", r.band.hi) + "] scale err " + fmt("%.2g", r.scale_error);
}

}  // namespace

std::vector<RatioReport> verify_lattice_integral_equivalence(int cases, std::uint64_t seed, const GridSpec& grid,
                                                            const Calibration& cal) {
  struct Family {
    const char* name;
    Weight w;
  };
  const std::vector<Family> weights{
      {"const", Weight::constant(1.0)}, {"poly2", Weight::radial_power(2)}, {"polym2", Weight::radial_power(-2)}};
  const std::vector<std::pair<double, double>> exps{{0.5, 0.5}, {1.0, 1.0}, {2.0, 1.0}};
  const double spread = 0.6 * grid.window().n_max();
  const std::size_t per_case = weights.size() * exps.size();
  std::vector<double> ratio(cases * per_case), scale(cases * per_case);
  parallel_for(static_cast<std::size_t>(cases), [&](std::size_t c) {
    Rng rng(mix_seed(seed, c));
    const Measure mu = seeded_atoms(rng, rng.uniform_int(3, 20), spread);
    for (std::size_t wi = 0; wi < weights.size(); ++wi) {
      const EmbeddingDiscretization base(mu, weights[wi].w, grid);
      const EmbeddingDiscretization small(mu.scaled(1e-3), weights[wi].w, grid);
      const EmbeddingDiscretization big(mu.scaled(1e3), weights[wi].w, grid);
      for (std::size_t ei = 0; ei < exps.size(); ++ei) {
        const auto [g, e] = exps[ei];
        const int n = grid.window().n_max();
        auto r = [&](const EmbeddingDiscretization& d) { return d.lattice_sum(g, e, n) / d.disk_integral(g, e); };
        const double r1 = r(base);
        const std::size_t k = c * per_case + wi * exps.size() + ei;
        ratio[k] = r1;
        scale[k] = std::max(std::abs(r(small) / r1 - 1.0), std::abs(r(big) / r1 - 1.0));
      }
    }
  });
  std::vector<RatioReport> out;
  for (std::size_t wi = 0; wi < weights.size(); ++wi)
    for (std::size_t ei = 0; ei < exps.size(); ++ei) {
      RatioReport rep;
      rep.id = std::string("lattice_integral.") + weights[wi].name + "." + fmt("%g", exps[ei].first) + "_" +
               fmt("%g", exps[ei].second);
      for (int c = 0; c < cases; ++c) {
        const std::size_t k = c * per_case + wi * exps.size() + ei;
        rep.ratios.push_back(ratio[k]);
        rep.scale_error = std::max(rep.scale_error, scale[k]);
      }
      finish(rep, cal);
      out.push_back(std::move(rep));
    }
  return out;
}

GaussianSumSides gaussian_sum_sides(double p, double alpha, const Weight& w, const Measure& mu, const GridSpec& grid) {
  if (!(p > 1.0 && p < 2.0)) throw DomainError("Gaussian-sum sides need 1 < p < 2");
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  GaussianSumSides out;
  if (mu.is_zero()) return out;
  const double pc = conjugate_exponent(p);
  out.lattice_side = std::pow(ls_norm(lattice_sequence(mu, w, 2.0 / p, grid.window(), grid), pc / 2.0), pc / 2.0);

  // Σ_z m e^{−α|u−z|²} on the nodes of the truncation square.
  const double h = grid.step();
  const int lo = static_cast<int>(std::floor(-grid.radius() / h + 1e-9));
  const int hi = static_cast<int>(std::ceil(grid.radius() / h - 1e-9));
  const int n = hi - lo;
  std::vector<double> field(static_cast<std::size_t>(n) * n, 0.0);
  const double reach = std::sqrt(40.0 / alpha);
  for (const auto& a : lumped_atoms(mu, grid.window(), grid)) {
    const int x0 = std::max(lo, static_cast<int>(std::floor((a.location.real() - reach) / h)));
    const int x1 = std::min(hi, static_cast<int>(std::ceil((a.location.real() + reach) / h)) + 1);
    const int y0 = std::max(lo, static_cast<int>(std::floor((a.location.imag() - reach) / h)));
    const int y1 = std::min(hi, static_cast<int>(std::ceil((a.location.imag() + reach) / h)) + 1);
    for (int my = y0; my < y1; ++my)
      for (int mx = x0; mx < x1; ++mx)
        field[static_cast<std::size_t>(my - lo) * n + (mx - lo)] +=
            a.mass * std::exp(-alpha * std::norm(Complex((mx + 0.5) * h, (my + 0.5) * h) - a.location));
  }
  CompensatedSum acc;
  for (int my = lo; my < hi; ++my)
    for (int mx = lo; mx < hi; ++mx) {
      const double s = field[static_cast<std::size_t>(my - lo) * n + (mx - lo)];
      if (s <= 0.0) continue;
      const Complex u((mx + 0.5) * h, (my + 0.5) * h);
      acc.add(std::exp(0.5 * pc * std::log(s) - pc / p * w.log_density(u)));
    }
  out.integral_side = acc.value() * h * h;
  return out;
}

std::vector<RatioReport> verify_gaussian_sum_equivalence(std::uint64_t seed, const GridSpec& grid, const Calibration& cal) {
  const std::vector<double> ps{1.25, 1.5, 1.75};
  constexpr int kSeeds = 10;
  std::vector<double> ratio(ps.size() * kSeeds), scale(ps.size() * kSeeds);
  parallel_for(ratio.size(), [&](std::size_t k) {
    const double p = ps[k / kSeeds];
    Rng rng(mix_seed(seed, k % kSeeds));
    const Measure mu = seeded_atoms(rng, 10, 3.0);
    const GaussianSumSides a = gaussian_sum_sides(p, 1.0, Weight::constant(1.0), mu, grid);
    const GaussianSumSides b = gaussian_sum_sides(p, 1.0, Weight::constant(1.0), mu.scaled(7.0), grid);
    ratio[k] = a.ratio();
    scale[k] = std::abs(b.ratio() / a.ratio() - 1.0);
  });
  std::vector<RatioReport> out;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    RatioReport rep;
    rep.id = "gaussian_sum.p" + fmt("%g", ps[i]);
    for (int s = 0; s < kSeeds; ++s) {
      rep.ratios.push_back(ratio[i * kSeeds + s]);
      rep.scale_error = std::max(rep.scale_error, scale[i * kSeeds + s]);
    }
    finish(rep, cal);
    out.push_back(std::move(rep));
  }
  return out;
}

HsReport verify_hs_oracle(double alpha, std::span<const Atom> atoms, const GridSpec& grid, const Calibration& cal) {
  const Measure mu = Measure::from_atoms({atoms.begin(), atoms.end()});
  HsReport rep;
  rep.exact = std::sqrt(alpha * mu.atom_mass() / kPi);
  const SummingVerdict v = classify_embedding(2, 2, alpha, Weight::constant(1.0), mu, grid, cal);
  rep.pi_low = v.pi_low;
  rep.pi_high = v.pi_high;
  rep.bracketed = v.pi_low <= rep.exact && rep.exact <= v.pi_high;
  rep.width = v.pi_low > 0.0 ? v.pi_high / v.pi_low : kInf;
  return rep;
}

BerezinReport verify_berezin_equivalence(double p, double q, double alpha, const Weight& w, const Measure& mu,
                                         int trials, std::uint64_t seed, const GridSpec& grid,
                                         const Calibration& cal) {
  BerezinReport rep;
  rep.bounds = berezin_opnorm_bounds(p, q, alpha, w, mu, trials, seed, grid);
  rep.band = cal.band("berezin.K");
  if (rep.bounds.lattice_proxy == 0.0) {
    rep.pass = rep.bounds.lower == 0.0;
    return rep;
  }
  rep.ratio = std::pow(rep.bounds.lower, q / 2.0) / rep.bounds.lattice_proxy;
  rep.pass = rep.band.contains_with_slack(rep.ratio, kBandSlack);
  return rep;
}

DiagReport verify_diag_consistency(int cases, std::uint64_t seed, const Calibration& cal) {
  DiagReport rep;
  rep.cases = cases;
  rep.band = cal.band("diag");
  std::vector<double> worst(cases), rank_one(cases);
  parallel_for(static_cast<std::size_t>(cases), [&](std::size_t c) {
    Rng rng(mix_seed(seed, c));
    const int n = rng.uniform_int(1, 16);
    std::vector<double> lambda(n);
    for (double& x : lambda) x = rng.uniform() < 0.2 ? 0.0 : rng.uniform(0.05, 1.0);
    std::vector<double> unit(n, 0.0);
    unit[rng.uniform_int(0, n - 1)] = 1.0;
    double wr = 0.0, ro = 0.0;
    for (double p : {2.0, 3.0, 4.0})
      for (double r : {1.0, conjugate_exponent(p), 2.0, p, p + 1.0}) {
        const double formula = diag_summing_estimate(lambda, p, r);
        const double lb = diag_summing_bruteforce(lambda, p, r, 3, mix_seed(seed, 1000 + c));
        if (formula > 0.0) wr = std::max(wr, lb / formula);
        ro = std::max(ro, std::abs(diag_summing_bruteforce(unit, p, r, 1, seed) - 1.0));
      }
    worst[c] = wr;
    rank_one[c] = ro;
  });
  for (int c = 0; c < cases; ++c) {
    rep.max_ratio = std::max(rep.max_ratio, worst[c]);
    rep.rank_one_error = std::max(rep.rank_one_error, rank_one[c]);
  }
  rep.identity_ratio = diag_summing_bruteforce(std::vector<double>(8, 1.0), 2, 2, 2, seed) / std::sqrt(8.0);
  rep.pass = rep.max_ratio <= rep.band.hi && rep.rank_one_error <= 1e-6 && std::abs(rep.identity_ratio - 1.0) <= 0.1;
  return rep;
}

MonotonicityReport verify_monotonicity(std::uint64_t seed, const GridSpec& grid) {
  struct Base {
    AffineSymbol phi;
    double p, r, alpha;
  };
  std::vector<Base> bases;
  Rng rng(seed);
  for (double p : {1.5, 2.0, 3.0})
    for (double alpha : {0.5, 1.0, 2.0}) {
      const Complex a = std::polar(rng.uniform(0.1, 0.9), rng.uniform(0, 2 * kPi));
      const Complex b(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5));
      bases.push_back({{a, b}, p, static_cast<double>(rng.uniform_int(1, 3)), alpha});
    }
  std::vector<int> certified(bases.size()), checked(bases.size()), violations(bases.size());
  parallel_for(bases.size(), [&](std::size_t i) {
    const Base& base = bases[i];
    const Measure mu = pullback_measure(base.phi, base.p, base.alpha);
    const Weight one = Weight::constant(1.0);
    if (classify_embedding(base.p, base.r, base.alpha, one, mu, grid).classification !=
        Classification::summing_certified)
      return;
    certified[i] = 1;
    for (double q : {1.5, std::min(base.p, 2.0)})
      for (double beta : {base.alpha / 2, base.alpha, 2 * base.alpha}) {
        ++checked[i];
        if (classify_embedding(q, base.r, beta, one, mu, grid).classification != Classification::summing_certified)
          ++violations[i];
      }
  });
  MonotonicityReport rep;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    rep.certified += certified[i];
    rep.checked += checked[i];
    rep.violations += violations[i];
  }
  rep.pass = rep.certified > 0 && rep.violations == 0;
  return rep;
}

std::vector<SuiteLine> run_suite(const std::string& name, std::uint64_t seed, const GridSpec& grid,
                                 const Calibration& cal) {
  static const std::vector<std::string> kNames{"lattice-integral", "gaussian-sum", "hs", "berezin",
                                               "diag", "monotonicity", "order-bounded"};
  if (name == "all") {
    std::vector<SuiteLine> all;
    for (const auto& n : kNames) {
      auto part = run_suite(n, seed, grid, cal);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  std::vector<SuiteLine> lines;
  if (name == "lattice-integral") {
    for (const auto& r : verify_lattice_integral_equivalence(20, seed, grid, cal))
      lines.push_back({name, r.pass, describe(r)});
  } else if (name == "gaussian-sum") {
    for (const auto& r : verify_gaussian_sum_equivalence(seed, grid, cal)) lines.push_back({name, r.pass, describe(r)});
  } else if (name == "hs") {
    Rng rng(seed);
    std::vector<Atom> atoms;
    for (int i = 0; i < 50; ++i)
      atoms.push_back({std::polar(3.0 * std::sqrt(rng.uniform()), rng.uniform(0, 2 * kPi)), rng.uniform(0.1, 2.0)});
    const HsReport r = verify_hs_oracle(1.0, atoms, grid, cal);
    lines.push_back({name, r.bracketed && r.width <= 3.0,
                     "exact " + fmt("%.6g", r.exact) + " in [" + fmt("%.6g", r.pi_low) + ", " + fmt("%.6g", r.pi_high) +
                         "] width " + fmt("%.4g", r.width)});
  } else if (name == "berezin") {
    for (int c = 0; c < 10; ++c) {
      Rng rng(mix_seed(seed, c));
      const Measure mu = seeded_atoms(rng, 30, 4.0);
      const double q = rng.uniform(1.0, 2.0);
      const BerezinReport r =
          verify_berezin_equivalence(1.5, q, 1.0, Weight::constant(1.0), mu, 20, mix_seed(seed, 100 + c), grid, cal);
      lines.push_back({name, r.pass, "case " + std::to_string(c) + " q " + fmt("%.4g", q) + " ratio " +
                                         fmt("%.4g", r.ratio) + " band [" + fmt("%.4g", r.band.lo) + ", " +
                                         fmt("%.4g", r.band.hi) + "]"});
    }
  } else if (name == "diag") {
    const DiagReport r = verify_diag_consistency(50, seed, cal);
    lines.push_back({name, r.pass, "max lower/formula " + fmt("%.4g", r.max_ratio) + " (band hi " +
                                       fmt("%.4g", r.band.hi) + "), rank-one err " + fmt("%.2g", r.rank_one_error) +
                                       ", identity/sqrt(8) " + fmt("%.4g", r.identity_ratio)});
  } else if (name == "monotonicity") {
    const MonotonicityReport r = verify_monotonicity(seed, grid);
    lines.push_back({name, r.pass, std::to_string(r.certified) + " certified bases, " + std::to_string(r.checked) +
                                       " implications, " + std::to_string(r.violations) + " violations"});
  } else if (name == "order-bounded") {
    Rng rng(seed);
    double worst = 0.0;
    const GridSpec fine = grid.with_step(std::min(grid.step(), 0.01));
    for (int i = 0; i < 5; ++i) {
      const Complex u(rng.uniform(-3, 3), rng.uniform(-3, 3));
      const auto rep = order_bounded_check(Measure::from_atoms({{u, 1.0}}), Weight::constant(1.0), 2, 1, fine);
      worst = std::max(worst, std::abs(rep.value - 1.0));
    }
    int implied = 0, failures = 0;
    for (int c = 0; c < 10; ++c) {
      Rng r2(mix_seed(seed, c));
      const Measure mu = seeded_atoms(r2, r2.uniform_int(3, 20), 0.5 * grid.window().n_max());
      const double p = r2.uniform(2.0, 4.0);
      if (order_bounded_check(mu, Weight::constant(1.0), p, 1, grid).verdict != Tri::yes) continue;
      ++implied;
      const double r = p + r2.uniform(0.01, 2.0);
      const auto v = classify_embedding(p, r, 1, Weight::constant(1.0), mu, grid);
      if (v.regime != Regime::HighR || v.classification != Classification::summing_certified) ++failures;
    }
    lines.push_back({name, worst <= 1e-3 && failures == 0 && implied > 0,
                     "delta_u integral err " + fmt("%.2g", worst) + ", " + std::to_string(implied) +
                         " order-bounded, " + std::to_string(failures) + " without HighR certificate"});
  } else {
    throw DomainError("unknown suite '" + name + "'");
  }
  return lines;
}

}  // namespace carleson
