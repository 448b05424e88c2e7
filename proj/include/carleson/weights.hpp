#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "carleson/plane_lattice.hpp"

namespace carleson {

// Polynomial growth bounds valid on the whole plane:
//   e^{−log_scale}(1+|z|)^{gamma_lo} ≤ w(z) ≤ e^{log_scale}(1+|z|)^{gamma_hi}.
// Tail certificates are built from these.
struct WeightEnvelope {
  double log_scale = 0.0;
  double gamma_lo = 0.0;
  double gamma_hi = 0.0;
};

// A weight is stored through its log-density so that e^{β|z|²}-type weights
// and their reciprocals never overflow before cancellation.
class Weight {
 public:
  using LogDensity = std::function<double(Complex)>;

  Weight(LogDensity log_density, std::string label, std::optional<WeightEnvelope> envelope = {});

  static Weight constant(double c);
  // (1+|z|)^γ
  static Weight radial_power(double gamma);
  // e^{β|z|²}
  static Weight gaussian_growth(double beta);
  static Weight from_density(std::function<double(Complex)> density, std::string label,
                             std::optional<WeightEnvelope> envelope = {});

  double operator()(Complex z) const;
  double log_density(Complex z) const { return log_density_(z); }
  const std::string& label() const { return label_; }
  const std::optional<WeightEnvelope>& envelope() const { return envelope_; }
  // Set when the density is a known constant; quadrature then short-circuits.
  std::optional<double> constant_value() const { return constant_; }

  Weight scaled(double c) const;
  Weight with_label(std::string label) const;
  // z ↦ w(z)^e
  Weight power(double e) const;

 private:
  LogDensity log_density_;
  std::string label_;
  std::optional<WeightEnvelope> envelope_;
  std::optional<double> constant_;
};

Weight product(const Weight& a, const Weight& b);

// w(Q_t(z)) by the tensor midpoint rule.
double mass_on_square(const Weight& w, Complex z, double t, const GridSpec& grid);
// w(D(z,t)) with exact node-cell/disk intersection areas.
double mass_on_disk(const Weight& w, Complex z, double t, const GridSpec& grid);

enum class Membership { stable, divergent, inconclusive };
const char* to_string(Membership m);

// Restricted Muckenhoupt constant estimate with its window trace.
struct ConstantReport {
  double value = 0.0;
  Complex argmax;
  std::vector<std::pair<int, double>> trace;  // (n_max, running maximum)
  Membership membership = Membership::inconclusive;
};

ConstantReport apr_constant_report(const Weight& w, double p, double t, const GridSpec& grid);
// Throws DivergentConstant when the trace diverges.
double apr_constant(const Weight& w, double p, double t, const GridSpec& grid);

ConstantReport a1_constant_report(const Weight& w, double t, const GridSpec& grid);
double a1_constant(const Weight& w, double t, const GridSpec& grid);

// w' = w^{−p'/p}
Weight dual_weight(const Weight& w, double p);

// ŵ(z) = w(Q₁(z)), tabulated on the quarter-lattice over the truncation
// square and interpolated bilinearly in the log domain. Exact at lattice
// points; evaluated directly outside the table.
Weight averaged_weight(const Weight& w, const GridSpec& grid);

struct CellMassTable {
  Window window;
  std::vector<double> masses;  // row-major over the window

  double mass(LatticePoint nu) const { return masses[window.index(nu)]; }
};

CellMassTable cell_mass_table(const Weight& w, const Window& window, const GridSpec& grid);

// Smallest C with m(ν)/m(ν') ≤ C^{|ν−ν'|} over all pairs of the table.
double esti_growth_constant(const CellMassTable& table);
double esti_growth_constant(const Weight& w, const Window& window, const GridSpec& grid);

}  // namespace carleson
