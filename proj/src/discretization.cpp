#include "carleson/discretization.hpp"

#include <cmath>

#include "carleson/errors.hpp"

namespace carleson {
namespace {

double pow_ratio(double m, double wm, double gamma, double eta) {
  if (m == 0.0) return 0.0;
  return std::exp(gamma * std::log(m) - eta * std::log(wm));
}

}  // namespace

EmbeddingDiscretization::EmbeddingDiscretization(const Measure& mu, const Weight& w, const GridSpec& grid)
    : mu_(mu),
      grid_(grid),
      window_(grid.window()),
      w_nodes_(grid.step(), grid.window().half_width() + 1.0),
      w_disk_(grid.step(), grid.window().half_width() + 1.0),
      mu_disk_(grid.step(), grid.window().half_width() + 1.0),
      mu_dens_(grid.step(), grid.window().half_width() + 1.0) {
  const double h = grid.step();
  const double half = window_.half_width();
  lo_index_ = w_disk_.edge_index(-half);
  hi_index_ = w_disk_.edge_index(half);

  // Weight: node samples, cell sums and node-centred disk masses.
  NodeField& w_nodes = w_nodes_;
  if (w.constant_value()) {
    w_nodes.fill([&](Complex) { return *w.constant_value(); });
  } else {
    w_nodes.fill([&](Complex z) { return w(z); });
  }
  w_cells_.reserve(window_.cell_count());
  for (const auto& nu : window_.cells()) {
    const double m = w.constant_value() ? *w.constant_value() : w_nodes.rect_sum(Cell{nu}.extent());
    if (!(m > 0.0)) throw DegenerateWeight("weight " + w.label() + " has no mass on a window cell");
    w_cells_.push_back(m);
  }
  if (w.constant_value()) {
    w_disk_.fill([&](Complex) { return *w.constant_value() * kPi; });
  } else {
    w_disk_ = w_nodes.disk_sums(1.0);
  }

  // Measure: atoms per cell and per node disk, density on nodes.
  mu_cells_.assign(window_.cell_count(), 0.0);
  for (const auto& a : mu.atoms()) {
    const LatticePoint nu = cell_of(a.location);
    if (window_.contains(nu)) mu_cells_[window_.index(nu)] += a.mass;
  }
  if (mu.has_density()) {
    if (mu.constant_density()) {
      mu_dens_.fill([&](Complex) { return *mu.constant_density(); });
    } else {
      mu_dens_.fill([&](Complex z) { return mu.density(z); });
    }
    for (const auto& nu : window_.cells()) mu_cells_[window_.index(nu)] += mu_dens_.rect_sum(Cell{nu}.extent());
    if (mu.constant_density()) {
      mu_disk_.fill([&](Complex) { return *mu.constant_density() * kPi; });
    } else {
      mu_disk_ = mu_dens_.disk_sums(1.0);
    }
  }
  const int reach = static_cast<int>(std::ceil(1.0 / h)) + 1;
  for (const auto& a : mu.atoms()) {
    const int cx = static_cast<int>(std::floor((a.location.real() + mu_disk_.half_extent()) / h));
    const int cy = static_cast<int>(std::floor((a.location.imag() + mu_disk_.half_extent()) / h));
    for (int iy = cy - reach; iy <= cy + reach; ++iy)
      for (int ix = cx - reach; ix <= cx + reach; ++ix) {
        if (!mu_disk_.in_range(ix, iy)) continue;
        const double d = std::abs(mu_disk_.node(ix, iy) - a.location);
        if (d < 1.0) mu_disk_.at(ix, iy) += a.mass;
        if (std::abs(d - 1.0) <= 1e-12) ++boundary_atoms_;
      }
  }
}

bool EmbeddingDiscretization::node_in_window(int ix, int iy) const {
  return ix >= lo_index_ && ix < hi_index_ && iy >= lo_index_ && iy < hi_index_;
}

double EmbeddingDiscretization::lattice_sum(double gamma, double eta, int n) const {
  if (n > window_.n_max()) throw DomainError("sub-window exceeds the discretized window");
  CompensatedSum acc;
  for (int j = -n; j <= n; ++j)
    for (int k = -n; k <= n; ++k) {
      const std::size_t i = window_.index({j, k});
      acc.add(pow_ratio(mu_cells_[i], w_cells_[i], gamma, eta));
    }
  return acc.value();
}

double EmbeddingDiscretization::disk_integral(double gamma, double eta) const {
  const double h = grid_.step();
  if (gamma != 1.0) {
    CompensatedSum acc;
    for (int iy = lo_index_; iy < hi_index_; ++iy)
      for (int ix = lo_index_; ix < hi_index_; ++ix) acc.add(pow_ratio(mu_disk_.at(ix, iy), w_disk_.at(ix, iy), gamma, eta));
    return acc.value() * h * h;
  }
  // ∫_W μ(D(z,1)) g(z) dA = ∫ (∫_{D(ζ,1)} g dA) dμ(ζ), g = w(D(·,1))^{−η}·1_W.
  NodeField g(h, w_disk_.half_extent());
  for (int iy = lo_index_; iy < hi_index_; ++iy)
    for (int ix = lo_index_; ix < hi_index_; ++ix) g.at(ix, iy) = std::exp(-eta * std::log(w_disk_.at(ix, iy)));
  CompensatedSum acc;
  for (const auto& a : mu_.atoms()) acc.add(a.mass * g.disk_integral(a.location, 1.0));
  if (mu_.has_density()) {
    const NodeField big = g.disk_sums(1.0);
    CompensatedSum dens;
    for (int iy = 0; iy < big.size(); ++iy)
      for (int ix = 0; ix < big.size(); ++ix) dens.add(mu_dens_.at(ix, iy) * big.at(ix, iy));
    acc.add(dens.value() * h * h);
  }
  return acc.value();
}

double EmbeddingDiscretization::inverse_disk_mass_integral() const {
  CompensatedSum acc;
  const double half = window_.half_width();
  for (const auto& a : mu_.atoms()) {
    if (std::abs(a.location.real()) >= half || std::abs(a.location.imag()) >= half) continue;
    // w(D(a,1)) from the node field with exact fractional areas.
    acc.add(a.mass / w_nodes_.disk_integral(a.location, 1.0));
  }
  if (mu_.has_density()) {
    const double h = grid_.step();
    CompensatedSum dens;
    for (int iy = lo_index_; iy < hi_index_; ++iy)
      for (int ix = lo_index_; ix < hi_index_; ++ix) dens.add(mu_dens_.at(ix, iy) / w_disk_.at(ix, iy));
    acc.add(dens.value() * h * h);
  }
  return acc.value();
}

}  // namespace carleson
