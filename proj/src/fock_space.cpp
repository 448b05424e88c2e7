#include "carleson/fock_space.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "carleson/errors.hpp"
#include "carleson/quadrature.hpp"
#include "carleson/summing_analysis.hpp"

namespace carleson {
namespace {

// Terms below e^{−40} of their peak are dropped from Gaussian sums.
constexpr double kCutExponent = 40.0;

// Node lattice (m + ½)h, m ∈ [lo, hi), of the truncation square.
struct PlaneNodes {
  double h;
  int lo, hi;

  explicit PlaneNodes(const GridSpec& grid)
      : h(grid.step()),
        lo(static_cast<int>(std::floor(-grid.radius() / grid.step() + 1e-9))),
        hi(static_cast<int>(std::ceil(grid.radius() / grid.step() - 1e-9))) {}

  int count() const { return hi - lo; }
  double coord(int m) const { return (m + 0.5) * h; }
  std::size_t flat(int mx, int my) const { return static_cast<std::size_t>(my - lo) * count() + (mx - lo); }
  // Node range [first, last) within distance `reach` of x along one axis.
  std::pair<int, int> range(double x, double reach) const {
    const int a = std::max(lo, static_cast<int>(std::floor((x - reach) / h)));
    const int b = std::min(hi, static_cast<int>(std::ceil((x + reach) / h)) + 1);
    return {a, std::max(a, b)};
  }
};

// log w at every node of the truncation square.
struct LogWeightPlane {
  PlaneNodes nodes;
  std::vector<double> logw;
  double max_logw = -kInf;

  LogWeightPlane(const Weight& w, const GridSpec& grid) : nodes(grid) {
    const int n = nodes.count();
    logw.resize(static_cast<std::size_t>(n) * n);
    const std::optional<double> c = w.constant_value();
    for (int my = nodes.lo; my < nodes.hi; ++my)
      for (int mx = nodes.lo; mx < nodes.hi; ++mx) {
        const double v = c ? std::log(*c) : w.log_density(Complex(nodes.coord(mx), nodes.coord(my)));
        logw[nodes.flat(mx, my)] = v;
        max_logw = std::max(max_logw, v);
      }
  }

  double at(int mx, int my) const { return logw[nodes.flat(mx, my)]; }
};

void check_exponents(double p, double alpha) {
  if (!(p > 0.0)) throw DomainError("p must be positive");
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
}

// log ∫ e^{−a|z−u|²} w(z) dA over the truncation square.
double log_gaussian_mass(const LogWeightPlane& plane, Complex u, double a) {
  const PlaneNodes& nd = plane.nodes;
  const int cx = std::clamp(static_cast<int>(std::floor(u.real() / nd.h)), nd.lo, nd.hi - 1);
  const int cy = std::clamp(static_cast<int>(std::floor(u.imag() / nd.h)), nd.lo, nd.hi - 1);
  const double reach = std::sqrt(std::max(0.0, plane.max_logw - plane.at(cx, cy) + kCutExponent) / a);
  const auto [x0, x1] = nd.range(u.real(), reach);
  const auto [y0, y1] = nd.range(u.imag(), reach);
  LogSumExp lse;
  double peak = -kInf;
  for (int my = y0; my < y1; ++my)
    for (int mx = x0; mx < x1; ++mx) {
      const double v = -a * std::norm(Complex(nd.coord(mx), nd.coord(my)) - u) + plane.at(mx, my);
      lse.add(v);
      peak = std::max(peak, v);
    }
  double edge = -kInf;
  auto probe = [&](int mx, int my) {
    edge = std::max(edge, -a * std::norm(Complex(nd.coord(mx), nd.coord(my)) - u) + plane.at(mx, my));
  };
  for (int m = nd.lo; m < nd.hi; ++m) {
    probe(m, nd.lo);
    probe(m, nd.hi - 1);
    probe(nd.lo, m);
    probe(nd.hi - 1, m);
  }
  if (edge - peak > std::log(1e-10))
    throw TruncationTooTight("kernel integrand on the truncation boundary is " + std::to_string(std::exp(edge - peak)) +
                             " of its peak");
  return lse.value() + 2.0 * std::log(nd.h);
}

KernelNorm kernel_norm_on(const LogWeightPlane& plane, Complex u, double p, double alpha, const Weight& w,
                          const GridSpec& grid) {
  if (std::abs(u) + 3.0 > grid.radius())
    throw DomainError("kernel centre too close to the truncation boundary: |u| + 3 > radius");
  const double a = 0.5 * p * alpha;
  KernelNorm kn;
  kn.log_direct = a * std::norm(u) + log_gaussian_mass(plane, u, a);
  const double wd = mass_on_disk(w, u, 1.0, grid);
  if (!(wd > 0.0)) throw DegenerateWeight("weight " + w.label() + " has no mass near the kernel centre");
  kn.log_proxy = a * std::norm(u) + std::log(wd);
  return kn;
}

Complex phase_gaussian(Complex z, Complex nu, double alpha) {
  const double phase = alpha * (nu.real() * z.imag() - nu.imag() * z.real());
  return std::polar(std::exp(-0.5 * alpha * std::norm(z - nu)), phase);
}

// f·e^{−(α/2)|z|²} on every plane node.
std::vector<Complex> reduced_field(const TestFunction& f, const PlaneNodes& nd) {
  std::vector<Complex> field(static_cast<std::size_t>(nd.count()) * nd.count());
  const double reach = std::sqrt(2.0 * kCutExponent / f.alpha());
  for (const auto& t : f.terms()) {
    const Complex nu = t.nu.as_complex();
    const Complex c = t.c / t.reduced_norm;
    const auto [x0, x1] = nd.range(nu.real(), reach);
    const auto [y0, y1] = nd.range(nu.imag(), reach);
    for (int my = y0; my < y1; ++my)
      for (int mx = x0; mx < x1; ++mx)
        field[nd.flat(mx, my)] += c * phase_gaussian(Complex(nd.coord(mx), nd.coord(my)), nu, f.alpha());
  }
  return field;
}

}  // namespace

Complex KernelFunction::reduced(Complex z) const { return phase_gaussian(z, u, alpha); }

KernelNorm kernel_norm(Complex u, double p, double alpha, const Weight& w, const GridSpec& grid) {
  check_exponents(p, alpha);
  return kernel_norm_on(LogWeightPlane(w, grid), u, p, alpha, w, grid);
}

TestFunction::TestFunction(std::vector<Term> terms, double p, double alpha, Weight w)
    : terms_(std::move(terms)), p_(p), alpha_(alpha), w_(std::move(w)) {
  check_exponents(p, alpha);
  for (const auto& t : terms_)
    if (!(t.reduced_norm > 0.0)) throw DomainError("test function normalizers must be positive");
}

bool TestFunction::is_zero() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.c == 0.0; });
}

Complex TestFunction::reduced(Complex z) const {
  Complex acc;
  for (const auto& t : terms_) acc += t.c / t.reduced_norm * phase_gaussian(z, t.nu.as_complex(), alpha_);
  return acc;
}

TestFunction synthesize_test_function(const std::map<LatticePoint, Complex>& coefficients, double p, double alpha,
                                      const Weight& w, const GridSpec& grid) {
  check_exponents(p, alpha);
  std::vector<TestFunction::Term> terms;
  if (!coefficients.empty()) {
    const LogWeightPlane plane(w, grid);
    for (const auto& [nu, c] : coefficients) {
      if (!grid.window().contains(nu)) throw DomainError("test function coefficient outside the window");
      if (c == 0.0) continue;
      const Complex u = nu.as_complex();
      const KernelNorm kn = kernel_norm_on(plane, u, p, alpha, w, grid);
      terms.push_back({nu, c, std::exp((kn.log_direct - 0.5 * p * alpha * std::norm(u)) / p)});
    }
  }
  return TestFunction(std::move(terms), p, alpha, w);
}

double fock_norm(const TestFunction& f, const GridSpec& grid) { return fock_norm(f, f.weight(), grid); }

double fock_norm(const TestFunction& f, const Weight& v, const GridSpec& grid) {
  if (f.is_zero()) return 0.0;
  const PlaneNodes nd(grid);
  const std::vector<Complex> field = reduced_field(f, nd);
  CompensatedSum acc;
  for (int my = nd.lo; my < nd.hi; ++my)
    for (int mx = nd.lo; mx < nd.hi; ++mx) {
      const double g = std::abs(field[nd.flat(mx, my)]);
      if (g == 0.0) continue;
      acc.add(std::exp(f.p() * std::log(g) + v.log_density(Complex(nd.coord(mx), nd.coord(my)))));
    }
  return std::pow(acc.value() * nd.h * nd.h, 1.0 / f.p());
}

double pointwise_bound_check(const TestFunction& f, Complex z, double t, const GridSpec& grid) {
  if (!(t > 0.0)) throw DomainError("t must be positive");
  if (f.is_zero()) return 0.0;
  const double p = f.p();
  const Weight& w = f.weight();
  const double num = std::pow(std::abs(f.reduced(z)), p);
  const double local = integrate_disk([&](Complex u) { return std::pow(std::abs(f.reduced(u)), p) * w(u); }, z, t,
                                      grid.step());
  if (num == 0.0) return 0.0;
  if (!(local > 0.0)) return kInf;
  return num * mass_on_disk(w, z, t, grid) / local;
}

PointwiseScan pointwise_bound_scan(const TestFunction& f, double t, const GridSpec& grid) {
  PointwiseScan scan;
  for (const auto& nu : grid.window().cells()) {
    for (int a = -1; a < 16; ++a) {
      Complex z = nu.as_complex();
      if (a >= 0) z += Complex((a % 4 + 0.5) / 4 - 0.5, (a / 4 + 0.5) / 4 - 0.5);
      const double r = pointwise_bound_check(f, z, t, grid);
      if (!std::isfinite(r)) scan.finite = false;
      if (r > scan.max_ratio) {
        scan.max_ratio = r;
        scan.argmax = z;
      }
    }
  }
  return scan;
}

Complex dual_pairing(const TestFunction& f, const TestFunction& g, double alpha, const GridSpec& grid) {
  if (f.alpha() != alpha || g.alpha() != alpha) throw DomainError("dual pairing needs both functions at the same alpha");
  if (f.is_zero() || g.is_zero()) return 0.0;
  const PlaneNodes nd(grid);
  const std::vector<Complex> a = reduced_field(f, nd), b = reduced_field(g, nd);
  CompensatedSum re, im;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Complex v = a[i] * std::conj(b[i]);
    re.add(v.real());
    im.add(v.imag());
  }
  return Complex(re.value(), im.value()) * (nd.h * nd.h);
}

double berezin_transform(const std::function<double(Complex)>& f, double alpha, Complex z, const GridSpec& grid) {
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  const PlaneNodes nd(grid);
  const double reach = std::sqrt(kCutExponent / alpha);
  const double room = grid.radius() - std::max(std::abs(z.real()), std::abs(z.imag()));
  if (room < reach && std::exp(-alpha * std::max(room, 0.0) * std::max(room, 0.0)) > 1e-10)
    throw TruncationTooTight("Berezin kernel at z is not negligible on the truncation boundary");
  const auto [x0, x1] = nd.range(z.real(), reach);
  const auto [y0, y1] = nd.range(z.imag(), reach);
  CompensatedSum acc;
  for (int my = y0; my < y1; ++my)
    for (int mx = x0; mx < x1; ++mx) {
      const Complex u(nd.coord(mx), nd.coord(my));
      const double k = std::exp(-alpha * std::norm(u - z));
      if (k > 0.0) acc.add(f(u) * k);
    }
  return acc.value() * nd.h * nd.h;
}

BerezinBounds berezin_opnorm_bounds(double p, double q, double alpha, const Weight& w, const Measure& mu, int trials,
                                    std::uint64_t seed, const GridSpec& grid) {
  if (!(p > 1.0 && p < 2.0)) throw DomainError("berezin_opnorm_bounds needs 1 < p < 2");
  if (!(q >= 1.0 && q <= 2.0)) throw DomainError("berezin_opnorm_bounds needs 1 <= q <= 2");
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  if (trials < 1) throw DomainError("trials must be >= 1");
  BerezinBounds out;
  out.s = 2.0 * p / (2.0 * p - 2.0 * q + p * q);
  const Window& window = grid.window();
  const DiagonalSequence lambda = lattice_sequence(mu, w, q / p, window, grid);
  out.lattice_proxy = ls_norm(lambda, out.s);
  if (mu.is_zero()) return out;

  std::vector<Complex> points;
  std::vector<double> masses;
  for (const auto& a : lumped_atoms(mu, window, grid)) {
    points.push_back(a.location);
    masses.push_back(a.mass);
  }
  constexpr int kSub = 4;
  constexpr double kSide = 1.0 / kSub;
  auto sub_centre = [&](LatticePoint nu, int i, int j) {
    return nu.as_complex() + Complex((i + 0.5) * kSide - 0.5, (j + 0.5) * kSide - 0.5);
  };

  // Sparse kernel rows: B_α(ŵ^{−2/p}χ_{Q_ν})(z_i), with ŵ constant on each
  // sub-square and ∫ e^{−α|z−u|²} over a rectangle in closed form.
  const Weight hat = averaged_weight(w, grid);
  const auto cells = window.cells();
  std::vector<std::array<double, kSub * kSub>> cell_factor(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (int j = 0; j < kSub; ++j)
      for (int i = 0; i < kSub; ++i)
        cell_factor[c][j * kSub + i] = std::exp(-2.0 / p * hat.log_density(sub_centre(cells[c], i, j)));
  const double sa = std::sqrt(alpha);
  const double cut = std::sqrt(kCutExponent / alpha) + 1.0;
  std::vector<std::vector<std::pair<std::size_t, double>>> rows(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Complex z = points[k];
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const Complex nu = cells[c].as_complex();
      if (std::abs(nu.real() - z.real()) > cut || std::abs(nu.imag() - z.imag()) > cut) continue;
      std::array<double, kSub + 1> ex{}, ey{};
      for (int e = 0; e <= kSub; ++e) {
        ex[e] = std::erf(sa * (nu.real() - 0.5 + e * kSide - z.real()));
        ey[e] = std::erf(sa * (nu.imag() - 0.5 + e * kSide - z.imag()));
      }
      double v = 0.0;
      for (int j = 0; j < kSub; ++j)
        for (int i = 0; i < kSub; ++i) v += cell_factor[c][j * kSub + i] * (ex[i + 1] - ex[i]) * (ey[j + 1] - ey[j]);
      v *= kPi / (4.0 * alpha);
      if (v > 0.0) rows[k].push_back({c, v});
    }
  }

  const double k_exp = p / (2.0 - p);
  auto ratio = [&](const std::vector<double>& a) {
    const double norm = ls_norm(a, k_exp);
    if (norm == 0.0) return 0.0;
    CompensatedSum acc;
    for (std::size_t i = 0; i < points.size(); ++i) {
      double bf = 0.0;
      for (const auto& [c, v] : rows[i]) bf += v * a[c];
      if (bf > 0.0) acc.add(masses[i] * std::pow(bf, q / 2.0));
    }
    return std::pow(acc.value(), 2.0 / q) / norm;
  };

  // The Hölder extremal a_ν = λ_ν^{2(s−1)/q}, then seeded perturbations.
  std::vector<double> structured(cells.size(), 1.0);
  const auto lv = lambda.values();
  if (std::any_of(lv.begin(), lv.end(), [](double x) { return x > 0.0; }))
    for (std::size_t c = 0; c < cells.size(); ++c) structured[c] = std::pow(lv[c], 2.0 * (out.s - 1.0) / q);
  out.lower = ratio(structured);
  std::vector<double> a(cells.size());
  for (int t = 1; t < trials; ++t) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
    switch (t % 3) {
      case 0:
        for (double& x : a) x = rng.uniform();
        break;
      case 1:
        for (std::size_t c = 0; c < a.size(); ++c) a[c] = structured[c] * std::exp(0.5 * rng.normal());
        break;
      default: {
        std::fill(a.begin(), a.end(), 0.0);
        a[rng.uniform_int(0, static_cast<int>(a.size()) - 1)] = 1.0;
        for (double& x : a)
          if (rng.uniform() < 0.1) x = 1.0;
      }
    }
    out.lower = std::max(out.lower, ratio(a));
  }
  return out;
}

}  // namespace carleson
