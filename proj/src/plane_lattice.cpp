#include "carleson/plane_lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "carleson/errors.hpp"

namespace carleson {

bool Cell::contains(Complex z) const {
  return z.real() >= center.j - 0.5 && z.real() < center.j + 0.5 &&
         z.imag() >= center.k - 0.5 && z.imag() < center.k + 0.5;
}

Rect Cell::extent() const {
  return {center.j - 0.5, center.j + 0.5, center.k - 0.5, center.k + 0.5};
}

Window::Window(int n_max) : n_max_(n_max) {
  if (n_max < 0) throw DomainError("window n_max must be >= 0, got " + std::to_string(n_max));
}

bool Window::contains(LatticePoint nu) const {
  return std::abs(nu.j) <= n_max_ && std::abs(nu.k) <= n_max_;
}

std::size_t Window::index(LatticePoint nu) const {
  return static_cast<std::size_t>(nu.j + n_max_) * side() + static_cast<std::size_t>(nu.k + n_max_);
}

LatticePoint Window::at(std::size_t index) const {
  const int s = side();
  return {static_cast<int>(index / s) - n_max_, static_cast<int>(index % s) - n_max_};
}

std::vector<LatticePoint> Window::cells() const {
  std::vector<LatticePoint> out;
  out.reserve(cell_count());
  for (int j = -n_max_; j <= n_max_; ++j)
    for (int k = -n_max_; k <= n_max_; ++k) out.push_back({j, k});
  return out;
}

GridSpec::GridSpec(double step, double radius, Window window)
    : step_(step), radius_(radius), window_(window) {
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("grid step must be positive");
  const double per_half = 0.5 / step;
  if (std::abs(per_half - std::round(per_half)) > 1e-9 * per_half)
    throw DomainError("grid step must divide 1/2 so that cell edges are node edges");
  if (!(radius >= window.n_max() + 2.0))
    throw DomainError("grid radius must be >= n_max + 2");
}

GridSpec GridSpec::with_window(int n_max) const {
  return {step_, std::max(radius_, n_max + 2.0), Window(n_max)};
}

LatticePoint cell_of(Complex z) {
  return {static_cast<int>(std::floor(z.real() + 0.5)), static_cast<int>(std::floor(z.imag() + 0.5))};
}

double distance_to_rect(Complex z, const Rect& r) {
  const double dx = std::max({r.x0 - z.real(), 0.0, z.real() - r.x1});
  const double dy = std::max({r.y0 - z.imag(), 0.0, z.imag() - r.y1});
  return std::hypot(dx, dy);
}

std::vector<LatticePoint> covering_cells(Complex z, double radius) {
  if (!(radius > 0.0)) throw DomainError("covering radius must be positive");
  std::vector<LatticePoint> out;
  const int j0 = static_cast<int>(std::floor(z.real() - radius - 0.5));
  const int j1 = static_cast<int>(std::ceil(z.real() + radius + 0.5));
  const int k0 = static_cast<int>(std::floor(z.imag() - radius - 0.5));
  const int k1 = static_cast<int>(std::ceil(z.imag() + radius + 0.5));
  for (int j = j0; j <= j1; ++j)
    for (int k = k0; k <= k1; ++k) {
      const Cell cell{{j, k}};
      if (distance_to_rect(z, cell.extent()) < radius) out.push_back({j, k});
    }
  return out;
}

}  // namespace carleson
