#include "carleson/summing_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "carleson/discretization.hpp"
#include "carleson/errors.hpp"

namespace carleson {
namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

void require_pr(double p, double r) {
  if (!(p > 1.0)) throw DomainError("p must be > 1, got " + fmt(p));
  if (!(r >= 1.0)) throw DomainError("r must be >= 1, got " + fmt(r));
}

struct Tail {
  std::optional<double> bound;
  std::string reason;
};

// Certified bound on Σ_{ν ∉ W} (μ(Q₁(ν))/w(Q₁(ν)))^s.
Tail tail_bound(const Measure& mu, const Weight& w, double s, const Window& window, const GridSpec& grid) {
  // Atoms outside the window contribute finitely many exact terms.
  std::map<LatticePoint, double> outside;
  for (const auto& a : mu.atoms()) {
    const LatticePoint nu = cell_of(a.location);
    if (!window.contains(nu)) outside[nu] += a.mass;
  }
  CompensatedSum atom_terms;
  for (const auto& [nu, m] : outside) {
    double wq = 0.0;
    try {
      wq = mass_on_square(w, nu.as_complex(), 1.0, grid);
    } catch (const NonPositiveMass&) {
      throw DegenerateWeight("weight " + w.label() + " has no mass on an atom cell outside the window");
    }
    atom_terms.add(std::pow(m / wq, s));
  }
  if (!mu.has_density()) return {atom_terms.value(), outside.empty() ? "no mass outside the window" : "exact atom terms"};
  if (!mu.envelope()) return {std::nullopt, "MissingEnvelope: measure density has no envelope"};
  if (!w.envelope()) return {std::nullopt, "MissingEnvelope: weight has no envelope"};

  const MeasureEnvelope& me = *mu.envelope();
  const WeightEnvelope& we = *w.envelope();
  const double a = s * me.kappa, b = -s * we.gamma_lo;
  // ring n: 8n cells at distance in [n − ½, √2(n + ½)] from the origin
  auto ring = [&](int n) {
    const double dmin = n - 0.5, dmax = std::sqrt(2.0) * (n + 0.5);
    const double da = a >= 0 ? dmax : dmin, db = b >= 0 ? dmax : dmin;
    const double log_term = s * (me.c0 - me.c2 * dmin * dmin + we.log_scale) + a * std::log1p(da) + b * std::log1p(db);
    return 8.0 * n * std::exp(log_term);
  };
  const double e = 1.0 + a + b;  // polynomial order of the ring bound
  if (me.c2 == 0.0 && e >= -1.0) return {std::nullopt, "envelope tail does not converge"};
  const int n0 = window.n_max() + 1;
  const int n1 = n0 + 100000;
  CompensatedSum dens;
  for (int n = n0; n <= n1; ++n) {
    const double t = ring(n);
    dens.add(t);
    if (me.c2 > 0.0 && n > n0 + 8 && t < 1e-300) break;
  }
  // Remainder past n1: ring(m) ≤ K·m^e·e^{−s·c2·(m−½)²} with
  // K = 8·e^{s(c0+log_scale)}·3^{max(a,0)+max(b,0)}.
  const double log_k = std::log(8.0) + s * (me.c0 + we.log_scale) + (std::max(a, 0.0) + std::max(b, 0.0)) * std::log(3.0);
  double remainder = 0.0;
  if (me.c2 > 0.0) {
    const double g = s * me.c2 * (n1 - 0.5) * (n1 - 0.5);
    // Σ_{m>n1} m^e e^{−s c2 (m−½)²} ≤ (Σ_{m>n1} m^{e} e^{−…}) with a geometric majorant.
    remainder = std::exp(log_k - g + std::max(e, 0.0) * std::log(2.0 * n1)) * n1;
  } else {
    remainder = std::exp(log_k + (e + 1.0) * std::log(static_cast<double>(n1))) / (-e - 1.0);
  }
  const double density_terms = dens.value() + remainder;
  if (!std::isfinite(density_terms)) return {std::nullopt, "envelope tail overflows"};
  // (x + y)^s ≤ max(1, 2^{s−1})(x^s + y^s)
  const double cs = outside.empty() ? 1.0 : std::max(1.0, std::pow(2.0, s - 1.0));
  return {cs * (atom_terms.value() + density_terms), "envelope tail bound"};
}

// Σ over all cells of λ^s is infinite by the measure floor and weight envelope.
bool floor_divergence(const Measure& mu, const Weight& w, double s) {
  return mu.floor() && w.envelope() && s * (mu.floor()->kappa - w.envelope()->gamma_hi) >= -2.0;
}

std::vector<int> doubling_windows(int n_max) {
  std::vector<int> out;
  for (int k = 3; k >= 0; --k) {
    const int n = static_cast<int>(std::ceil(n_max / std::pow(2.0, k)));
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  return out;
}

// Three successive doublings each growing the norm by ≥ 1.2.
bool growth_divergence(const std::vector<WindowTrace>& trace) {
  if (trace.size() < 4 || !(trace.front().lattice_norm > 0.0)) return false;
  for (std::size_t i = 1; i < trace.size(); ++i)
    if (!(trace[i].lattice_norm >= 1.2 * trace[i - 1].lattice_norm)) return false;
  return true;
}

double psi(double v, double q) { return std::copysign(std::pow(std::abs(v), q - 1.0), v); }

// Maximizer of ⟨g, c⟩ over the unit ball of l^{r'}.
void dual_direction(const std::vector<double>& g, double r, std::vector<double>& c) {
  c.resize(g.size());
  if (r == 1.0) {
    for (std::size_t j = 0; j < g.size(); ++j) c[j] = g[j] >= 0 ? 1.0 : -1.0;
    return;
  }
  const double norm = ls_norm(g, r);
  if (norm == 0.0) {
    std::fill(c.begin(), c.end(), 0.0);
    c[0] = 1.0;
    return;
  }
  for (std::size_t j = 0; j < g.size(); ++j) c[j] = psi(g[j] / norm, r);
}

}  // namespace

const char* to_string(Regime r) {
  switch (r) {
    case Regime::SubTwo: return "SubTwo";
    case Regime::LowR: return "LowR";
    case Regime::MidR: return "MidR";
    case Regime::HighR: return "HighR";
  }
  return "HighR";
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::summing_certified: return "summing_certified";
    case Classification::not_summing_certified: return "not_summing_certified";
    case Classification::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

RegimeExponent target_exponent(double p, double r) {
  require_pr(p, r);
  if (p < 2.0) return {Regime::SubTwo, 2.0 / p};
  const double pc = conjugate_exponent(p);
  if (r <= pc) return {Regime::LowR, pc / p};
  if (r <= p) return {Regime::MidR, r / p};
  return {Regime::HighR, 1.0};
}

DiagonalSequence::DiagonalSequence(Window window, std::vector<double> values)
    : window_(window), values_(std::move(values)) {
  if (values_.size() != window_.cell_count()) throw DomainError("diagonal sequence size does not match its window");
  for (double v : values_)
    if (!(v >= 0.0)) throw DomainError("diagonal sequence values must be nonnegative");
}

DiagonalSequence lattice_sequence(const Measure& mu, const Weight& w, double q_over_p, const Window& window,
                                  const GridSpec& grid) {
  std::vector<double> values;
  values.reserve(window.cell_count());
  for (const auto& nu : window.cells()) {
    double wq = 0.0;
    try {
      wq = mass_on_square(w, nu.as_complex(), 1.0, grid);
    } catch (const NonPositiveMass&) {
      throw DegenerateWeight("weight " + w.label() + " has no mass on a window cell");
    }
    const double m = mass_on_cell(mu, nu, grid);
    values.push_back(m == 0.0 ? 0.0 : m / std::pow(wq, q_over_p));
  }
  return {window, std::move(values)};
}

double ls_norm(std::span<const double> values, double s) {
  if (!(s > 0.0)) throw DomainError("ls_norm needs s > 0");
  double top = 0.0;
  for (double v : values) top = std::max(top, std::abs(v));
  if (std::isinf(s) || top == 0.0 || std::isinf(top)) return top;
  CompensatedSum acc;
  for (double v : values) acc.add(std::pow(std::abs(v) / top, s));
  return top * std::pow(acc.value(), 1.0 / s);
}

double point_evaluation_constant(double p, double alpha) { return std::pow(p * alpha / (2.0 * kPi), 1.0 / p); }

SummingVerdict classify_embedding(double p, double r, double alpha, const Weight& w, const Measure& mu,
                                  const GridSpec& grid, const Calibration& calibration) {
  require_pr(p, r);
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  SummingVerdict v;
  v.p = p;
  v.r = r;
  v.alpha = alpha;
  const RegimeExponent re = target_exponent(p, r);
  v.regime = re.regime;
  v.s = re.s;
  v.window = grid.window();
  const double outer = 1.0 / (re.s * p);

  const EmbeddingDiscretization disc(mu, w, grid);
  v.boundary_atoms = disc.boundary_atoms();
  for (int n : doubling_windows(grid.window().n_max()))
    v.trace.push_back({n, std::pow(disc.lattice_sum(re.s, re.s, n), outer)});
  const double window_sum = disc.lattice_sum(re.s, re.s, grid.window().n_max());
  v.lattice_norm = std::pow(window_sum, outer);
  v.integral_norm = std::pow(disc.disk_integral(re.s, re.s), outer);

  const Tail tail = tail_bound(mu, w, re.s, grid.window(), grid);
  v.tail_certificate = tail.bound;
  const Band band = calibration.band(std::string("pi.") + to_string(re.regime));
  const double kappa = point_evaluation_constant(p, alpha);
  v.pi_low = kappa * band.lo * v.lattice_norm;
  if (tail.bound) {
    v.classification = Classification::summing_certified;
    v.basis = tail.reason;
    v.pi_high = kappa * band.hi * std::pow(window_sum + *tail.bound, outer);
  } else if (floor_divergence(mu, w, re.s) && v.trace.back().lattice_norm > v.trace.front().lattice_norm) {
    v.classification = Classification::not_summing_certified;
    v.basis = "measure floor against weight envelope forces divergence";
    v.pi_high = kInf;
  } else if (growth_divergence(v.trace)) {
    v.classification = Classification::not_summing_certified;
    v.basis = "lattice norm grows >= 1.2x across three window doublings";
    v.pi_high = kInf;
  } else {
    v.classification = Classification::inconclusive;
    v.basis = tail.reason;
    v.pi_high = kInf;
  }
  return v;
}

double diag_summing_estimate(std::span<const double> lambda, double p, double r) {
  if (!(p >= 2.0)) throw DomainError("diag_summing_estimate needs p >= 2");
  if (!(r >= 1.0)) throw DomainError("r must be >= 1");
  const double pc = conjugate_exponent(p);
  if (r <= pc) return ls_norm(lambda, pc);
  if (r <= p) return ls_norm(lambda, r);
  return ls_norm(lambda, p);
}

double weak_r_norm(std::span<const double> family, int n, int m, double p, double r, std::uint64_t seed) {
  if (n <= 0 || m <= 0 || family.size() != static_cast<std::size_t>(n) * m)
    throw DomainError("family must be an n x m matrix");
  std::vector<double> xc(n), g(m), c(m), next(m);
  auto value = [&](const std::vector<double>& coef) {
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < m; ++j) acc += family[static_cast<std::size_t>(i) * m + j] * coef[j];
      xc[i] = acc;
    }
    return ls_norm(xc, p);
  };
  auto ascend = [&](std::vector<double> start) {
    double f = value(start);
    for (int it = 0; it < 1000; ++it) {
      const double scale = f > 0 ? f : 1.0;
      for (int j = 0; j < m; ++j) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += family[static_cast<std::size_t>(i) * m + j] * psi(xc[i] / scale, p);
        g[j] = acc;
      }
      dual_direction(g, r, next);
      const double fn = value(next);
      if (!(fn > f * (1.0 + 1e-8))) {
        value(start);  // keep xc consistent with the accepted point
        break;
      }
      f = fn;
      start = next;
    }
    return f;
  };
  double best = 0.0;
  // Coordinate starts: the maximizer of |Σ c_j x_j(i)| for each row i.
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(family.begin() + static_cast<std::ptrdiff_t>(i) * m,
                            family.begin() + static_cast<std::ptrdiff_t>(i + 1) * m);
    dual_direction(row, r, c);
    best = std::max(best, ascend(c));
  }
  Rng rng(seed);
  for (int restart = 0; restart < 20; ++restart) {
    for (int j = 0; j < m; ++j) g[j] = rng.normal();
    dual_direction(g, r, c);
    best = std::max(best, ascend(c));
  }
  return best;
}

double diag_summing_bruteforce(std::span<const double> lambda, double p, double r, int families, std::uint64_t seed) {
  if (!(p >= 1.0) || !(r >= 1.0)) throw DomainError("bruteforce needs p >= 1 and r >= 1");
  std::vector<double> lam;
  for (double v : lambda) {
    if (!(v >= 0.0)) throw DomainError("lambda must be nonnegative");
    if (v > 0.0) lam.push_back(v);
  }
  if (lam.size() > 64) throw DomainError("bruteforce supports at most 64 nonzero entries");
  if (lam.empty()) return 0.0;
  const int n = static_cast<int>(lam.size());

  auto ratio = [&](const std::vector<double>& family, int m, std::uint64_t s) {
    std::vector<double> col(n);
    CompensatedSum num;
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < n; ++i) col[i] = lam[i] * family[static_cast<std::size_t>(i) * m + j];
      num.add(std::pow(ls_norm(col, p), r));
    }
    const double den = weak_r_norm(family, n, m, p, r, s);
    return den > 0 ? std::pow(num.value(), 1.0 / r) / den : 0.0;
  };

  // A single unit vector at the largest entry: ratio ‖λ‖_∞ = ‖M_λ‖.
  double best = *std::max_element(lam.begin(), lam.end());
  // The orthonormal family {e_i}.
  {
    std::vector<double> eye(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) eye[static_cast<std::size_t>(i) * n + i] = 1.0;
    best = std::max(best, ratio(eye, n, mix_seed(seed, 0)));
  }
  for (int f = 0; f < families; ++f) {
    Rng rng(mix_seed(seed, f + 1));
    const int m = rng.uniform_int(1, 2 * n);
    std::vector<double> family(static_cast<std::size_t>(n) * m);
    for (double& x : family) x = rng.normal();
    best = std::max(best, ratio(family, m, mix_seed(seed, 1000 + f)));
  }
  return best;
}

OrderBoundedReport order_bounded_check(const Measure& mu, const Weight& w, double p, double alpha,
                                       const GridSpec& grid) {
  if (!(p > 0.0) || !(alpha > 0.0)) throw DomainError("order_bounded_check needs p > 0 and alpha > 0");
  OrderBoundedReport rep;
  const EmbeddingDiscretization disc(mu, w, grid);
  rep.value = disc.disk_integral(1.0, 1.0);
  rep.intermediate = disc.inverse_disk_mass_integral();
  const Tail tail = tail_bound(mu, w, 1.0, grid.window(), grid);
  rep.tail_certificate = tail.bound;
  std::vector<WindowTrace> trace;
  for (int n : doubling_windows(grid.window().n_max())) trace.push_back({n, disc.lattice_sum(1.0, 1.0, n)});
  if (tail.bound) {
    rep.verdict = Tri::yes;
    rep.basis = tail.reason;
  } else if ((floor_divergence(mu, w, 1.0) && trace.back().lattice_norm > trace.front().lattice_norm) ||
             growth_divergence(trace)) {
    rep.verdict = Tri::no;
    rep.basis = "lattice l^1 sum diverges across windows";
  } else {
    rep.verdict = Tri::inconclusive;
    rep.basis = tail.reason;
  }
  return rep;
}

double local_summing_bound(const Measure& mu, const Weight& w, LatticePoint nu, double p, const GridSpec& grid) {
  if (!(p > 0.0)) throw DomainError("p must be positive");
  double wq = 0.0;
  try {
    wq = mass_on_square(w, nu.as_complex(), 1.0, grid);
  } catch (const NonPositiveMass&) {
    throw DegenerateWeight("weight " + w.label() + " has no mass on the cell");
  }
  return std::pow(mass_on_cell(mu, nu, grid) / wq, 1.0 / p);
}

double aggregate_local_bounds(std::span<const double> bounds, double r) { return ls_norm(bounds, r); }

}  // namespace carleson
