#include "carleson/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "carleson/errors.hpp"
#include "carleson/quadrature.hpp"

namespace carleson {
namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

double log_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

// 2π∫_R^∞ ρ^{e+1}(1+ρ)^κ e^{c0 − c ρ²} dρ by a composite Simpson rule out to
// where the integrand has dropped by e^{−60} from its largest value.
double radial_tail(double radius, double e, double kappa, double c0, double c) {
  auto log_f = [&](double rho) { return (e + 1) * std::log(rho) + kappa * std::log1p(rho) + c0 - c * rho * rho; };
  double peak = log_f(radius), end = radius;
  for (double rho = radius; rho < radius + 1e4; rho += 0.25) {
    const double v = log_f(rho);
    peak = std::max(peak, v);
    end = rho;
    if (v < peak - 60.0 && rho > radius + 1.0) break;
  }
  const int n = 4000;
  const double h = (end - radius) / n;
  CompensatedSum acc;
  for (int i = 0; i <= n; ++i) {
    const double wgt = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc.add(wgt * std::exp(log_f(radius + i * h)));
  }
  // Simpson plus the neglected e^{−60}-small remainder, bounded crudely.
  return 2.0 * kPi * (acc.value() * h / 3.0) * (1.0 + 1e-12) + 2.0 * kPi * std::exp(peak - 50.0);
}

}  // namespace

Measure Measure::from_atoms(std::vector<Atom> atoms, std::string label) {
  for (const auto& a : atoms) {
    if (!(a.mass > 0.0) || !std::isfinite(a.mass)) throw DomainError("atom masses must be positive and finite");
    if (!std::isfinite(a.location.real()) || !std::isfinite(a.location.imag()))
      throw DomainError("atom locations must be finite");
  }
  Measure m;
  m.atoms_ = std::move(atoms);
  m.label_ = m.atoms_.empty() ? "zero" : std::move(label);
  return m;
}

Measure Measure::lebesgue() {
  Measure m = from_log_density([](Complex) { return 0.0; }, "lebesgue", MeasureEnvelope{0.0, 0.0, 0.0},
                               MeasureFloor{0.0, 0.0, 0.0});
  m.constant_density_ = 1.0;
  return m;
}

Measure Measure::gaussian(double beta) {
  if (!(beta >= 0.0)) throw DomainError("gauss:β needs β >= 0");
  if (beta == 0.0) return lebesgue();
  return from_log_density([beta](Complex z) { return -beta * std::norm(z); }, "gauss:" + fmt(beta),
                          MeasureEnvelope{0.0, beta, 0.0});
}

Measure Measure::from_log_density(LogDensity log_density, std::string label, std::optional<MeasureEnvelope> envelope,
                                  std::optional<MeasureFloor> floor) {
  if (envelope && !(envelope->c2 >= 0.0)) throw DomainError("measure envelope needs c2 >= 0");
  Measure m;
  m.log_density_ = std::move(log_density);
  m.envelope_ = envelope;
  m.floor_ = floor;
  m.label_ = std::move(label);
  return m;
}

double Measure::log_density(Complex z) const { return log_density_ ? log_density_(z) : -kInf; }

double Measure::density(Complex z) const {
  if (constant_density_) return *constant_density_;
  return log_density_ ? std::exp(log_density_(z)) : 0.0;
}

double Measure::atom_mass() const {
  CompensatedSum s;
  for (const auto& a : atoms_) s.add(a.mass);
  return s.value();
}

Measure Measure::scaled(double c) const {
  if (!(c > 0.0)) throw DomainError("measure scale must be positive");
  Measure m;
  m.atoms_ = atoms_;
  for (auto& a : m.atoms_) a.mass *= c;
  const double lc = std::log(c);
  if (log_density_) m.log_density_ = [f = log_density_, lc](Complex z) { return f(z) + lc; };
  m.envelope_ = envelope_;
  if (m.envelope_) m.envelope_->c0 += lc;
  m.floor_ = floor_;
  if (m.floor_) m.floor_->f0 += lc;
  if (constant_density_) m.constant_density_ = *constant_density_ * c;
  m.label_ = is_zero() ? "zero" : fmt(c) + "*" + label_;
  return m;
}

Measure operator+(const Measure& a, const Measure& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  Measure m;
  m.atoms_ = a.atoms_;
  m.atoms_.insert(m.atoms_.end(), b.atoms_.begin(), b.atoms_.end());
  m.label_ = "sum:" + a.label_ + ";" + b.label_;
  if (a.has_density() && b.has_density()) {
    m.log_density_ = [fa = a.log_density_, fb = b.log_density_](Complex z) { return log_add_exp(fa(z), fb(z)); };
    if (a.envelope_ && b.envelope_) {
      m.envelope_ = MeasureEnvelope{log_add_exp(a.envelope_->c0, b.envelope_->c0),
                                    std::min(a.envelope_->c2, b.envelope_->c2),
                                    std::max(a.envelope_->kappa, b.envelope_->kappa)};
    }
    if (a.constant_density_ && b.constant_density_) m.constant_density_ = *a.constant_density_ + *b.constant_density_;
  } else if (a.has_density()) {
    m.log_density_ = a.log_density_;
    m.envelope_ = a.envelope_;
    m.constant_density_ = a.constant_density_;
  } else if (b.has_density()) {
    m.log_density_ = b.log_density_;
    m.envelope_ = b.envelope_;
    m.constant_density_ = b.constant_density_;
  }
  // Either component's floor bounds the sum from below; keep the stronger tail.
  if (a.floor_ && b.floor_) {
    const bool pick_a = a.floor_->kappa > b.floor_->kappa ||
                        (a.floor_->kappa == b.floor_->kappa && a.floor_->f0 >= b.floor_->f0);
    m.floor_ = pick_a ? a.floor_ : b.floor_;
  } else {
    m.floor_ = a.floor_ ? a.floor_ : b.floor_;
  }
  return m;
}

DiskMass mass_on_disk(const Measure& mu, Complex z, double r, const GridSpec& grid) {
  if (!(r > 0.0)) throw DomainError("disk radius must be positive");
  DiskMass out;
  CompensatedSum acc;
  for (const auto& a : mu.atoms()) {
    const double d = std::abs(a.location - z);
    if (std::abs(d - r) <= 1e-12) ++out.boundary_atoms;
    if (d < r) acc.add(a.mass);
  }
  if (mu.constant_density()) {
    acc.add(*mu.constant_density() * kPi * r * r);
  } else if (mu.has_density()) {
    acc.add(integrate_disk([&](Complex u) { return mu.density(u); }, z, r, grid.step()));
  }
  out.mass = acc.value();
  return out;
}

double mass_on_cell(const Measure& mu, LatticePoint nu, const GridSpec& grid) {
  CompensatedSum acc;
  for (const auto& a : mu.atoms())
    if (cell_of(a.location) == nu) acc.add(a.mass);
  if (mu.constant_density()) {
    acc.add(*mu.constant_density());
  } else if (mu.has_density()) {
    acc.add(integrate_square([&](Complex u) { return mu.density(u); }, nu.as_complex(), 1.0, grid.step()));
  }
  return acc.value();
}

double mu_hat(const Measure& mu, const Weight& w, Complex z, const GridSpec& grid) {
  double denom = 0.0;
  try {
    denom = mass_on_disk(w, z, 1.0, grid);
  } catch (const NonPositiveMass&) {
    denom = 0.0;
  }
  if (!(denom > 0.0)) throw DegenerateWeight("w(D(z,1)) is not positive for weight " + w.label());
  return mass_on_disk(mu, z, 1.0, grid).mass / denom;
}

PolynomialSymbol::PolynomialSymbol(std::vector<Complex> coefficients) : coeffs_(std::move(coefficients)) {
  while (coeffs_.size() > 1 && coeffs_.back() == Complex(0.0)) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

Complex PolynomialSymbol::value(Complex z) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex PolynomialSymbol::derivative(Complex z) const {
  Complex acc = 0.0;
  for (int k = degree(); k >= 1; --k) acc = acc * z + static_cast<double>(k) * coeffs_[k];
  return acc;
}

Measure pullback_measure(const AffineSymbol& phi, double p, double alpha) {
  if (!(p > 0.0) || !(alpha > 0.0)) throw DomainError("pullback_measure needs p > 0 and alpha > 0");
  const double pa2 = 0.5 * p * alpha;
  const double abs_a = std::abs(phi.a), abs_b = std::abs(phi.b);
  const std::string label = "pullback:" + fmt(phi.a.real()) + "," + fmt(phi.a.imag()) + "," + fmt(phi.b.real()) + "," +
                            fmt(phi.b.imag());
  if (abs_a == 0.0) {
    const double mass = (2.0 * kPi / (p * alpha)) * std::exp(pa2 * abs_b * abs_b);
    return Measure::from_atoms({{phi.b, mass}}, label);
  }
  if (std::abs(abs_a - 1.0) <= 1e-12 && abs_b == 0.0) {
    Measure m = Measure::lebesgue();
    return m;  // density |a|^{−2}e^{0} = 1 exactly
  }
  const Complex a = phi.a, b = phi.b;
  const double log_jac = -2.0 * std::log(abs_a);
  auto log_density = [a, b, pa2, log_jac](Complex v) {
    return log_jac - pa2 * (std::norm((v - b) / a) - std::norm(v));
  };
  std::optional<MeasureEnvelope> env;
  std::optional<MeasureFloor> floor;
  if (abs_a < 1.0) {
    // A|v−b|² − |v|² ≥ ((A−1)/2)|v|² + (A − 2A²/(A−1))|b|² with A = |a|^{−2}.
    const double A = 1.0 / (abs_a * abs_a);
    env = MeasureEnvelope{log_jac + pa2 * (2.0 * A * A / (A - 1.0) - A) * abs_b * abs_b, 0.5 * pa2 * (A - 1.0), 0.0};
  } else if (abs_a > 1.0 + 1e-12) {
    // (1−A)|v|² + 2A Re(v b̄) − A|b|² ≥ 0 once |v| ≥ |b|(A + √A)/(1 − A).
    const double A = 1.0 / (abs_a * abs_a);
    floor = MeasureFloor{log_jac, 0.0, abs_b * (A + std::sqrt(A)) / (1.0 - A)};
  }
  return Measure::from_log_density(log_density, label, env, floor);
}

Measure volterra_measure(const PolynomialSymbol& g, double p) {
  if (!(p > 0.0)) throw DomainError("volterra_measure needs p > 0");
  const int d = g.degree();
  if (d == 0) return Measure::zero();
  const auto& c = g.coefficients();
  double total = 0.0;  // Σ k|c_k|
  for (int k = 1; k <= d; ++k) total += k * std::abs(c[k]);
  const MeasureEnvelope env{p * std::log(total), 0.0, p * (d - 2)};
  MeasureFloor floor;
  const double lead = d * std::abs(c[d]);
  if (d == 1) {
    floor = MeasureFloor{p * std::log(lead), -p, 0.0};
  } else {
    const double lower = total - lead;  // Σ_{k<d} k|c_k|
    floor = MeasureFloor{p * (std::log(lead) - d * std::log(2.0)), p * (d - 2), std::max(1.0, 2.0 * lower / lead)};
  }
  std::string label = "volterra:";
  for (std::size_t k = 0; k < c.size(); ++k) label += (k ? "," : "") + fmt(c[k].real());
  auto log_density = [g, p](Complex z) { return p * (std::log(std::abs(g.derivative(z))) - std::log1p(std::abs(z))); };
  return Measure::from_log_density(log_density, label, env, floor);
}

Weight tilted_weight(const Weight& w, int k, double p) {
  if (k == 0) return w;
  return product(w, Weight::radial_power(-k * p)).with_label("tilt:" + std::to_string(k) + "," + fmt(p) + "@" + w.label());
}

std::vector<Atom> lumped_atoms(const Measure& mu, const Window& window, const GridSpec& grid) {
  constexpr int kSub = 4;
  constexpr double kSide = 1.0 / kSub;
  std::vector<Atom> out = mu.atoms();
  if (!mu.has_density()) return out;
  for (const auto& nu : window.cells())
    for (int j = 0; j < kSub; ++j)
      for (int i = 0; i < kSub; ++i) {
        const Complex c = nu.as_complex() + Complex((i + 0.5) * kSide - 0.5, (j + 0.5) * kSide - 0.5);
        const double m = integrate_square([&](Complex u) { return mu.density(u); }, c, kSide, grid.step());
        if (m > 0.0) out.push_back({c, m});
      }
  return out;
}

MomentReport moment_condition(const Measure& mu, double p, double alpha, int l_max, const GridSpec& grid) {
  if (l_max < 0) throw DomainError("moment_condition needs l_max >= 0");
  if (!(p > 0.0) || !(alpha > 0.0)) throw DomainError("moment_condition needs p > 0 and alpha > 0");
  const double pa2 = 0.5 * p * alpha;
  MomentReport rep;
  auto moment_on = [&](int l, double radius) {
    const double e = l * p;
    CompensatedSum acc;
    for (const auto& a : mu.atoms()) {
      const double r = std::abs(a.location);
      if (std::max(std::abs(a.location.real()), std::abs(a.location.imag())) > radius) continue;
      acc.add(a.mass * std::exp((e > 0 ? e * std::log(r) : 0.0) - pa2 * r * r));
    }
    if (mu.has_density()) {
      acc.add(integrate_plane(
          [&](Complex z) {
            const double r = std::abs(z);
            return std::exp((e > 0 ? e * std::log(r) : 0.0) - pa2 * r * r + mu.log_density(z));
          },
          radius, grid.step()));
    }
    return acc.value();
  };
  const double R = grid.radius();
  for (int l = 0; l <= l_max; ++l) rep.moments.push_back(moment_on(l, R));

  // Atoms outside the truncation square are finitely many: add them exactly.
  bool finite = std::all_of(rep.moments.begin(), rep.moments.end(), [](double m) { return std::isfinite(m); });
  if (!mu.has_density()) {
    for (int l = 0; l <= l_max; ++l) rep.moments[l] = moment_on(l, kInf);
    rep.verdict = Tri::yes;
    rep.reason = "atomic measure: finite sums";
    return rep;
  }
  if (mu.envelope()) {
    const auto& env = *mu.envelope();
    for (int l = 0; l <= l_max; ++l) rep.tail_bounds.push_back(radial_tail(R, l * p, env.kappa, env.c0, env.c2 + pa2));
    finite = finite && std::all_of(rep.tail_bounds.begin(), rep.tail_bounds.end(), [](double t) { return std::isfinite(t); });
    rep.verdict = finite ? Tri::yes : Tri::no;
    rep.reason = finite ? "moments finite with envelope-certified tails" : "non-finite moment";
    return rep;
  }
  // No envelope: decide only clear divergence from window growth.
  for (int l = 0; l <= l_max; ++l) {
    bool growing = true;
    double prev = moment_on(l, R / 4);
    for (int q = 2; q <= 4; ++q) {
      const double cur = moment_on(l, R * q / 4);
      if (!(cur >= 1.2 * prev)) growing = false;
      prev = cur;
    }
    if (growing || !std::isfinite(rep.moments[l])) {
      rep.verdict = Tri::no;
      rep.reason = "moment l=" + std::to_string(l) + " grows across truncation radii";
      return rep;
    }
  }
  rep.verdict = Tri::inconclusive;
  rep.reason = "MissingEnvelope: density without envelope, tail not certified";
  return rep;
}

}  // namespace carleson
