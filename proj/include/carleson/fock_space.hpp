#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "carleson/measures.hpp"
#include "carleson/weights.hpp"

namespace carleson {

// K_u(z) = e^{αūz}. Only the bounded combination
// |K_u(z)|·e^{−(α/2)(|z|²+|u|²)} = e^{−(α/2)|z−u|²} is ever exponentiated.
struct KernelFunction {
  Complex u;
  double alpha = 1.0;

  double log_modulus(Complex z) const { return alpha * (std::conj(u) * z).real(); }
  // K_u(z)·e^{−(α/2)(|z|²+|u|²)}
  Complex reduced(Complex z) const;
};

// ‖K_u‖^p_{F^p_{α,w}} by quadrature and its proxy e^{(pα/2)|u|²}·w(D(u,1)),
// both kept as logarithms.
struct KernelNorm {
  double log_direct = 0.0;
  double log_proxy = 0.0;

  double direct() const { return std::exp(log_direct); }
  double proxy() const { return std::exp(log_proxy); }
  double ratio() const { return std::exp(log_direct - log_proxy); }
};

// Throws DomainError unless |u| + 3 ≤ radius, TruncationTooTight when the
// integrand on the boundary of the truncation exceeds 1e−10 of its peak.
KernelNorm kernel_norm(Complex u, double p, double alpha, const Weight& w, const GridSpec& grid);

// f = Σ c_ν K_ν/‖K_ν‖_{F^p_{α,w}} over lattice points.
class TestFunction {
 public:
  struct Term {
    LatticePoint nu;
    Complex c;
    double reduced_norm;  // ‖K_ν‖·e^{−(α/2)|ν|²}
  };

  TestFunction(std::vector<Term> terms, double p, double alpha, Weight w);

  const std::vector<Term>& terms() const { return terms_; }
  double p() const { return p_; }
  double alpha() const { return alpha_; }
  const Weight& weight() const { return w_; }
  bool is_zero() const;

  // f(z)·e^{−(α/2)|z|²}
  Complex reduced(Complex z) const;
  // f(z); overflows for large |z|.
  Complex operator()(Complex z) const { return reduced(z) * std::exp(0.5 * alpha_ * std::norm(z)); }

 private:
  std::vector<Term> terms_;
  double p_, alpha_;
  Weight w_;
};

TestFunction synthesize_test_function(const std::map<LatticePoint, Complex>& coefficients, double p, double alpha,
                                      const Weight& w, const GridSpec& grid);

// ‖f‖_{F^p_{α,v}}; v defaults to the weight f was normalized against.
double fock_norm(const TestFunction& f, const GridSpec& grid);
double fock_norm(const TestFunction& f, const Weight& v, const GridSpec& grid);

// |f(z)|^p e^{−(pα/2)|z|²} / ((1/w(D(z,t)))∫_{D(z,t)}|f|^p e^{−(pα/2)|u|²} w dA); 0 for f ≡ 0.
double pointwise_bound_check(const TestFunction& f, Complex z, double t, const GridSpec& grid);

struct PointwiseScan {
  double max_ratio = 0.0;
  Complex argmax;
  bool finite = true;
};

// Maximum of pointwise_bound_check over the window cell centres and the
// quarter offsets inside each cell.
PointwiseScan pointwise_bound_scan(const TestFunction& f, double t, const GridSpec& grid);

// ⟨f, g⟩_α = ∫ f ḡ e^{−α|z|²} dA
Complex dual_pairing(const TestFunction& f, const TestFunction& g, double alpha, const GridSpec& grid);

// B_α f(z) = ∫ f(u) e^{−α|z−u|²} dA(u)
double berezin_transform(const std::function<double(Complex)>& f, double alpha, Complex z, const GridSpec& grid);

struct BerezinBounds {
  double lower = 0.0;          // best ‖B_α f‖_{L^{q/2}(μ)}/‖f‖ found
  double lattice_proxy = 0.0;  // ‖λ‖_{l^s}, λ_ν = μ(Q₁(ν))/w(Q₁(ν))^{q/p}
  double s = 0.0;
};

// Search over nonnegative cell combinations f = Σ a_ν ŵ^{−2/p}χ_{Q_ν}, for
// which ‖f‖_{L^{p/(2−p)}(ŵ^{2/(2−p)})} = ‖a‖_{l^{p/(2−p)}} exactly.
BerezinBounds berezin_opnorm_bounds(double p, double q, double alpha, const Weight& w, const Measure& mu, int trials,
                                    std::uint64_t seed, const GridSpec& grid);

}  // namespace carleson
