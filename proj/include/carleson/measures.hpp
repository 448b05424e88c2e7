#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "carleson/numerics.hpp"
#include "carleson/plane_lattice.hpp"
#include "carleson/weights.hpp"

namespace carleson {

struct Atom {
  Complex location;
  double mass = 0.0;
};

// Upper bound for the density on the whole plane:
//   density(z) ≤ exp(c0 − c2|z|²)·(1+|z|)^kappa,  c2 ≥ 0.
struct MeasureEnvelope {
  double c0 = 0.0;
  double c2 = 0.0;
  double kappa = 0.0;

  double log_bound(double radius) const { return c0 - c2 * radius * radius + kappa * std::log1p(radius); }
};

// Lower bound for the density away from the origin:
//   density(z) ≥ exp(f0)·(1+|z|)^kappa  for |z| ≥ rho.
struct MeasureFloor {
  double f0 = 0.0;
  double kappa = 0.0;
  double rho = 0.0;
};

// Finite atoms plus an optional density, stored as a log-density.
class Measure {
 public:
  using LogDensity = std::function<double(Complex)>;

  Measure() = default;  // the zero measure

  static Measure zero() { return {}; }
  static Measure from_atoms(std::vector<Atom> atoms, std::string label = "atoms");
  static Measure lebesgue();
  // density e^{−β|z|²}
  static Measure gaussian(double beta);
  static Measure from_log_density(LogDensity log_density, std::string label,
                                  std::optional<MeasureEnvelope> envelope = {},
                                  std::optional<MeasureFloor> floor = {});

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool has_density() const { return static_cast<bool>(log_density_); }
  double log_density(Complex z) const;
  double density(Complex z) const;
  const std::optional<MeasureEnvelope>& envelope() const { return envelope_; }
  const std::optional<MeasureFloor>& floor() const { return floor_; }
  const std::string& label() const { return label_; }
  std::optional<double> constant_density() const { return constant_density_; }
  bool is_zero() const { return atoms_.empty() && !has_density(); }
  double atom_mass() const;

  Measure scaled(double c) const;
  friend Measure operator+(const Measure& a, const Measure& b);

 private:
  std::vector<Atom> atoms_;
  LogDensity log_density_;
  std::optional<MeasureEnvelope> envelope_;
  std::optional<MeasureFloor> floor_;
  std::optional<double> constant_density_;
  std::string label_ = "zero";
};

struct DiskMass {
  double mass = 0.0;
  // Atoms within 1e−12 of the boundary circle; they are excluded (open disk).
  std::size_t boundary_atoms = 0;
};

DiskMass mass_on_disk(const Measure& mu, Complex z, double r, const GridSpec& grid);
// Half-open cell semantics: every atom is counted in exactly one cell.
double mass_on_cell(const Measure& mu, LatticePoint nu, const GridSpec& grid);

// Atoms of μ together with its density restricted to the window, lumped onto
// the centres of 4 × 4 sub-squares of each cell.
std::vector<Atom> lumped_atoms(const Measure& mu, const Window& window, const GridSpec& grid);
// μ(D(z,1))/w(D(z,1)); throws DegenerateWeight if the denominator is not positive.
double mu_hat(const Measure& mu, const Weight& w, Complex z, const GridSpec& grid);

// φ(z) = a·z + b
struct AffineSymbol {
  Complex a;
  Complex b;

  Complex operator()(Complex z) const { return a * z + b; }
};

// g(z) = Σ c_k z^k; trailing zero coefficients are dropped.
class PolynomialSymbol {
 public:
  explicit PolynomialSymbol(std::vector<Complex> coefficients);

  const std::vector<Complex>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Complex value(Complex z) const;
  Complex derivative(Complex z) const;

 private:
  std::vector<Complex> coeffs_;
};

// μ_φ(E) = ∫_{φ⁻¹(E)} e^{−(pα/2)(|z|² − |φ(z)|²)} dA(z)
Measure pullback_measure(const AffineSymbol& phi, double p, double alpha);
// dμ_{g,p} = |g'(z)|^p (1+|z|)^{−p} dA
Measure volterra_measure(const PolynomialSymbol& g, double p);
// w_{kp}(z) = w(z)(1+|z|)^{−kp}
Weight tilted_weight(const Weight& w, int k, double p);

struct MomentReport {
  Tri verdict = Tri::inconclusive;
  std::vector<double> moments;      // l = 0..l_max, truncated to the grid square
  std::vector<double> tail_bounds;  // certified tails beyond the square (empty without envelope)
  std::string reason;
};

// ∫|z|^{lp} e^{−(pα/2)|z|²} dμ for l = 0..l_max.
MomentReport moment_condition(const Measure& mu, double p, double alpha, int l_max, const GridSpec& grid);

}  // namespace carleson
