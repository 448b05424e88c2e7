#pragma once

#include <vector>

#include "carleson/measures.hpp"
#include "carleson/quadrature.hpp"
#include "carleson/weights.hpp"

namespace carleson {

// Cell masses and node fields of (μ, w) over a window: the shared input of
// the lattice sums Σ μ(Q₁(ν))^γ/w(Q₁(ν))^η and the disk functionals
// ∫ μ(D(z,1))^γ/w(D(z,1))^η dA.
class EmbeddingDiscretization {
 public:
  EmbeddingDiscretization(const Measure& mu, const Weight& w, const GridSpec& grid);

  const Window& window() const { return window_; }
  const GridSpec& grid() const { return grid_; }
  // Row-major over the window.
  const std::vector<double>& mu_cells() const { return mu_cells_; }
  const std::vector<double>& w_cells() const { return w_cells_; }
  std::size_t boundary_atoms() const { return boundary_atoms_; }

  // Σ over cells of W_n of μ(Q)^γ/w(Q)^η, compensated, row-major (n ≤ n_max).
  double lattice_sum(double gamma, double eta, int n) const;
  // ∫_W μ(D(z,1))^γ / w(D(z,1))^η dA; the γ = 1 case uses Fubini so that
  // atoms are integrated against exact disk areas.
  double disk_integral(double gamma, double eta) const;
  // ∫_W dμ(z)/w(D(z,1))
  double inverse_disk_mass_integral() const;

 private:
  bool node_in_window(int ix, int iy) const;

  Measure mu_;
  GridSpec grid_;
  Window window_;
  std::vector<double> mu_cells_;
  std::vector<double> w_cells_;
  NodeField w_nodes_;   // w at nodes
  NodeField w_disk_;    // w(D(node,1))
  NodeField mu_disk_;   // μ(D(node,1))
  NodeField mu_dens_;   // density of μ at nodes (zero when atomic)
  std::size_t boundary_atoms_ = 0;
  int lo_index_ = 0;    // first node index inside the window square
  int hi_index_ = 0;    // one past the last
};

}  // namespace carleson
