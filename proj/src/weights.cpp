#include "carleson/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "carleson/errors.hpp"
#include "carleson/numerics.hpp"
#include "carleson/quadrature.hpp"

namespace carleson {
namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

// Largest factor by which (1+|u|) can differ from (1+|z|) when |u − z| ≤ √2/2.
constexpr double kCellSpread = 3.416;

std::vector<int> trace_windows(int n_max) {
  std::vector<int> out;
  for (int j = 1; j <= 4; ++j) {
    const int n = static_cast<int>(std::ceil(n_max * j / 4.0));
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  return out;
}

Membership classify_trace(const std::vector<std::pair<int, double>>& trace) {
  const double last = trace.back().second;
  if (!std::isfinite(last)) return Membership::divergent;
  if (trace.size() >= 4 && last > 10.0 * trace.front().second) return Membership::divergent;
  if (trace.size() >= 2 && last <= 1.01 * trace[trace.size() - 2].second) return Membership::stable;
  return Membership::inconclusive;
}

// Shared driver: evaluates `log_quantity(center)` at every lattice center of
// the window plus a 4×4 grid of offsets per cell and builds the trace.
template <class F>
ConstantReport window_supremum(const Window& window, F&& log_quantity) {
  const int n_max = window.n_max();
  std::vector<double> cell_max(window.cell_count(), -kInf);
  std::vector<Complex> cell_arg(window.cell_count());
  for (std::size_t idx = 0; idx < window.cell_count(); ++idx) {
    const Complex nu = window.at(idx).as_complex();
    auto consider = [&](Complex c) {
      const double v = log_quantity(c);
      if (v > cell_max[idx]) {
        cell_max[idx] = v;
        cell_arg[idx] = c;
      }
    };
    consider(nu);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) consider(nu + Complex((a + 0.5) / 4 - 0.5, (b + 0.5) / 4 - 0.5));
  }
  ConstantReport report;
  double best = -kInf;
  Complex arg;
  for (int n : trace_windows(n_max)) {
    const Window sub(n);
    for (const auto& nu : sub.cells()) {
      const std::size_t idx = window.index(nu);
      if (cell_max[idx] > best) {
        best = cell_max[idx];
        arg = cell_arg[idx];
      }
    }
    report.trace.emplace_back(n, std::exp(best));
  }
  report.value = std::exp(best);
  report.argmax = arg;
  report.membership = classify_trace(report.trace);
  return report;
}

// Log-density samples at the tensor midpoint nodes of Q_t(center).
void sample_square(const Weight& w, Complex center, double t, double step, std::vector<double>& out) {
  const int n = subdivisions(t, step);
  const double h = t / n;
  out.clear();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.push_back(w.log_density(center + Complex(-0.5 * t + (i + 0.5) * h, -0.5 * t + (j + 0.5) * h)));
}

double log_mean_exp(const std::vector<double>& xs, double factor) {
  LogSumExp acc;
  for (double x : xs) acc.add(factor * x);
  return acc.value() - std::log(static_cast<double>(xs.size()));
}

}  // namespace

Weight::Weight(LogDensity log_density, std::string label, std::optional<WeightEnvelope> envelope)
    : log_density_(std::move(log_density)), label_(std::move(label)), envelope_(envelope) {}

Weight Weight::constant(double c) {
  if (!(c > 0.0)) throw DomainError("constant weight must be positive");
  const double lc = std::log(c);
  Weight w([lc](Complex) { return lc; }, "const:" + fmt(c), WeightEnvelope{std::abs(lc), 0.0, 0.0});
  w.constant_ = c;
  return w;
}

Weight Weight::radial_power(double gamma) {
  if (gamma == 0.0) return constant(1.0);
  return Weight([gamma](Complex z) { return gamma * std::log1p(std::abs(z)); }, "poly:" + fmt(gamma),
                WeightEnvelope{0.0, gamma, gamma});
}

Weight Weight::gaussian_growth(double beta) {
  return Weight([beta](Complex z) { return beta * std::norm(z); }, "exp2:" + fmt(beta));
}

Weight Weight::from_density(std::function<double(Complex)> density, std::string label,
                            std::optional<WeightEnvelope> envelope) {
  return Weight([d = std::move(density)](Complex z) { return std::log(d(z)); }, std::move(label), envelope);
}

double Weight::operator()(Complex z) const {
  if (constant_) return *constant_;
  return std::exp(log_density_(z));
}

Weight Weight::scaled(double c) const {
  if (!(c > 0.0)) throw DomainError("weight scale must be positive");
  const double lc = std::log(c);
  std::optional<WeightEnvelope> env = envelope_;
  if (env) env->log_scale += std::abs(lc);
  Weight out([f = log_density_, lc](Complex z) { return f(z) + lc; }, fmt(c) + "*" + label_, env);
  if (constant_) out.constant_ = *constant_ * c;
  return out;
}

Weight Weight::with_label(std::string label) const {
  Weight out = *this;
  out.label_ = std::move(label);
  return out;
}

Weight Weight::power(double e) const {
  std::optional<WeightEnvelope> env;
  if (envelope_) {
    env = WeightEnvelope{std::abs(e) * envelope_->log_scale, e >= 0 ? e * envelope_->gamma_lo : e * envelope_->gamma_hi,
                         e >= 0 ? e * envelope_->gamma_hi : e * envelope_->gamma_lo};
  }
  Weight out([f = log_density_, e](Complex z) { return e * f(z); }, "(" + label_ + ")^" + fmt(e), env);
  if (constant_) out.constant_ = std::pow(*constant_, e);
  return out;
}

Weight product(const Weight& a, const Weight& b) {
  std::optional<WeightEnvelope> env;
  if (a.envelope() && b.envelope()) {
    env = WeightEnvelope{a.envelope()->log_scale + b.envelope()->log_scale,
                         a.envelope()->gamma_lo + b.envelope()->gamma_lo,
                         a.envelope()->gamma_hi + b.envelope()->gamma_hi};
  }
  if (a.constant_value() && b.constant_value()) return Weight::constant(*a.constant_value() * *b.constant_value());
  return Weight([a, b](Complex z) { return a.log_density(z) + b.log_density(z); },
                "product:" + a.label() + "," + b.label(), env);
}

double mass_on_square(const Weight& w, Complex z, double t, const GridSpec& grid) {
  if (!(t > 0.0)) throw DomainError("square side must be positive");
  const double m = w.constant_value() ? *w.constant_value() * t * t
                                      : integrate_square([&](Complex u) { return w(u); }, z, t, grid.step());
  if (!(m > 0.0)) throw NonPositiveMass("weight " + w.label() + " has no mass on a square of side " + fmt(t));
  return m;
}

double mass_on_disk(const Weight& w, Complex z, double t, const GridSpec& grid) {
  if (!(t > 0.0)) throw DomainError("disk radius must be positive");
  const double m = w.constant_value() ? *w.constant_value() * kPi * t * t
                                      : integrate_disk([&](Complex u) { return w(u); }, z, t, grid.step());
  if (!(m > 0.0)) throw NonPositiveMass("weight " + w.label() + " has no mass on a disk of radius " + fmt(t));
  return m;
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::stable: return "stable";
    case Membership::divergent: return "divergent";
    case Membership::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

ConstantReport apr_constant_report(const Weight& w, double p, double t, const GridSpec& grid) {
  if (!(p > 1.0)) throw DomainError("apr_constant needs p > 1");
  if (!(t > 0.0)) throw DomainError("square side must be positive");
  if (w.constant_value()) {
    ConstantReport r;
    r.value = 1.0;
    for (int n : trace_windows(grid.window().n_max())) r.trace.emplace_back(n, 1.0);
    r.membership = Membership::stable;
    return r;
  }
  const double dual = 1.0 / (p - 1.0);  // p'/p
  std::vector<double> logs;
  return window_supremum(grid.window(), [&](Complex c) {
    sample_square(w, c, t, grid.step(), logs);
    for (double x : logs)
      if (x == -kInf) return kInf;
    // log[(avg w)·(avg w^{−p'/p})^{p/p'}]
    return log_mean_exp(logs, 1.0) + (p - 1.0) * log_mean_exp(logs, -dual);
  });
}

double apr_constant(const Weight& w, double p, double t, const GridSpec& grid) {
  const ConstantReport r = apr_constant_report(w, p, t, grid);
  if (r.membership == Membership::divergent)
    throw DivergentConstant("A_p^res constant of " + w.label() + " diverges across the window trace");
  return r.value;
}

ConstantReport a1_constant_report(const Weight& w, double t, const GridSpec& grid) {
  if (!(t > 0.0)) throw DomainError("square side must be positive");
  if (w.constant_value()) {
    ConstantReport r;
    r.value = 1.0;
    for (int n : trace_windows(grid.window().n_max())) r.trace.emplace_back(n, 1.0);
    r.membership = Membership::stable;
    return r;
  }
  std::vector<double> logs;
  return window_supremum(grid.window(), [&](Complex c) {
    sample_square(w, c, t, grid.step(), logs);
    const double lo = *std::min_element(logs.begin(), logs.end());
    if (lo == -kInf) throw ZeroInfimum("weight " + w.label() + " vanishes on a node of Q_t(" + fmt(c.real()) + "," + fmt(c.imag()) + ")");
    return log_mean_exp(logs, 1.0) - lo;
  });
}

double a1_constant(const Weight& w, double t, const GridSpec& grid) {
  const ConstantReport r = a1_constant_report(w, t, grid);
  if (r.membership == Membership::divergent)
    throw DivergentConstant("A_1^res constant of " + w.label() + " diverges across the window trace");
  return r.value;
}

Weight dual_weight(const Weight& w, double p) {
  if (!(p > 1.0)) throw DomainError("dual_weight needs p > 1");
  return w.power(-1.0 / (p - 1.0)).with_label("dual[" + fmt(p) + "](" + w.label() + ")");
}

Weight averaged_weight(const Weight& w, const GridSpec& grid) {
  if (w.constant_value()) return Weight::constant(*w.constant_value());
  constexpr int kSub = 4;
  // Quarter-lattice values of log ŵ, filled on first use.
  struct Table {
    std::mutex mutex;
    std::unordered_map<std::int64_t, double> values;
  };
  auto table = std::make_shared<Table>();
  const int half = static_cast<int>(std::floor(grid.radius())) * kSub;
  const double step = grid.step();
  auto direct = [w, step](Complex z) {
    return std::log(integrate_square([&](Complex u) { return w(u); }, z, 1.0, step));
  };
  auto node = [table, direct](int i, int j) {
    const std::int64_t key = (static_cast<std::int64_t>(i) << 32) ^ static_cast<std::uint32_t>(j);
    {
      std::lock_guard<std::mutex> lock(table->mutex);
      if (auto it = table->values.find(key); it != table->values.end()) return it->second;
    }
    const double v = direct(Complex(double(i) / kSub, double(j) / kSub));
    std::lock_guard<std::mutex> lock(table->mutex);
    table->values.emplace(key, v);
    return v;
  };
  auto log_hat = [node, direct, half](Complex z) {
    const double fx = z.real() * kSub, fy = z.imag() * kSub;
    const int i0 = static_cast<int>(std::floor(fx)), j0 = static_cast<int>(std::floor(fy));
    if (i0 < -half || j0 < -half || i0 >= half || j0 >= half) return direct(z);
    const double tx = fx - i0, ty = fy - j0;
    if (tx == 0.0 && ty == 0.0) return node(i0, j0);
    return (1 - tx) * (1 - ty) * node(i0, j0) + tx * (1 - ty) * node(i0 + 1, j0) + (1 - tx) * ty * node(i0, j0 + 1) +
           tx * ty * node(i0 + 1, j0 + 1);
  };
  std::optional<WeightEnvelope> env = w.envelope();
  if (env) env->log_scale += std::max(std::abs(env->gamma_lo), std::abs(env->gamma_hi)) * std::log(kCellSpread);
  return Weight(log_hat, "hat(" + w.label() + ")", env);
}

CellMassTable cell_mass_table(const Weight& w, const Window& window, const GridSpec& grid) {
  CellMassTable table{window, {}};
  table.masses.reserve(window.cell_count());
  for (const auto& nu : window.cells()) table.masses.push_back(mass_on_square(w, nu.as_complex(), 1.0, grid));
  return table;
}

double esti_growth_constant(const CellMassTable& table) {
  const auto cells = table.window.cells();
  std::vector<double> logs(table.masses.size());
  for (std::size_t i = 0; i < logs.size(); ++i) logs[i] = std::log(table.masses[i]);
  double best = 0.0;  // log C
  for (std::size_t a = 0; a < cells.size(); ++a)
    for (std::size_t b = a + 1; b < cells.size(); ++b) {
      const double d = std::hypot(cells[a].j - cells[b].j, cells[a].k - cells[b].k);
      best = std::max(best, std::abs(logs[a] - logs[b]) / d);
    }
  return std::exp(best);
}

double esti_growth_constant(const Weight& w, const Window& window, const GridSpec& grid) {
  return esti_growth_constant(cell_mass_table(w, window, grid));
}

}  // namespace carleson
