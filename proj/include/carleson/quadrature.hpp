#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "carleson/numerics.hpp"
#include "carleson/plane_lattice.hpp"

namespace carleson {

// Area and centroid of D(center, radius) ∩ rect, in closed form.
struct AreaMoment {
  double area = 0.0;
  Complex centroid;
};

double disk_rect_area(Complex center, double radius, const Rect& rect);
AreaMoment disk_rect_moment(Complex center, double radius, const Rect& rect);

// Number of midpoint subdivisions per side for a square of side t.
inline int subdivisions(double t, double step) {
  return std::max(1, static_cast<int>(std::ceil(t / step - 1e-9)));
}

// Tensor midpoint rule over Q_t(center).
template <class F>
double integrate_square(F&& f, Complex center, double t, double step) {
  const int n = subdivisions(t, step);
  const double h = t / n;
  const double x0 = center.real() - 0.5 * t;
  const double y0 = center.imag() - 0.5 * t;
  CompensatedSum acc;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) acc.add(f(Complex(x0 + (i + 0.5) * h, y0 + (j + 0.5) * h)));
  return acc.value() * h * h;
}

// Visits every node cell [m·h, (m+1)·h] × [n·h, (n+1)·h] meeting the open disk
// D(center, radius). The callback receives (m, n, area, centroid) of the
// intersection; fully covered cells report their node as centroid.
template <class Visit>
void for_each_disk_cell(Complex center, double radius, double step, Visit&& visit) {
  const double h = step;
  const double r2 = radius * radius;
  const int m0 = static_cast<int>(std::floor((center.real() - radius) / h));
  const int m1 = static_cast<int>(std::floor((center.real() + radius) / h));
  const int n0 = static_cast<int>(std::floor((center.imag() - radius) / h));
  const int n1 = static_cast<int>(std::floor((center.imag() + radius) / h));
  for (int m = m0; m <= m1; ++m) {
    const double xa = m * h, xb = xa + h;
    const double fx = std::max(std::abs(xa - center.real()), std::abs(xb - center.real()));
    const double nx = std::max({xa - center.real(), 0.0, center.real() - xb});
    for (int n = n0; n <= n1; ++n) {
      const double ya = n * h, yb = ya + h;
      const double ny = std::max({ya - center.imag(), 0.0, center.imag() - yb});
      if (nx * nx + ny * ny >= r2) continue;
      const double fy = std::max(std::abs(ya - center.imag()), std::abs(yb - center.imag()));
      if (fx * fx + fy * fy <= r2) {
        visit(m, n, h * h, Complex(xa + 0.5 * h, ya + 0.5 * h));
      } else {
        const AreaMoment am = disk_rect_moment(center, radius, {xa, xb, ya, yb});
        if (am.area > 0.0) visit(m, n, am.area, am.centroid);
      }
    }
  }
}

// Integral of f over D(center, radius): node cells fully inside use the node
// value, boundary cells use the exact intersection area evaluated at its
// centroid (second order overall).
template <class F>
double integrate_disk(F&& f, Complex center, double radius, double step) {
  CompensatedSum acc;
  for_each_disk_cell(center, radius, step, [&](int, int, double area, Complex c) { acc.add(area * f(c)); });
  return acc.value();
}

// Midpoint rule over the truncated plane [−R, R]².
template <class F>
double integrate_plane(F&& f, double radius, double step) {
  const int m0 = static_cast<int>(std::floor(-radius / step + 1e-9));
  const int m1 = static_cast<int>(std::ceil(radius / step - 1e-9));
  CompensatedSum acc;
  for (int m = m0; m < m1; ++m)
    for (int n = m0; n < m1; ++n) acc.add(f(Complex((m + 0.5) * step, (n + 0.5) * step)));
  return acc.value() * step * step;
}

// Node-sampled scalar field on [−L, L]², L a multiple of the step, with
// nodes on the global node lattice.
class NodeField {
 public:
  NodeField(double step, double half_extent);

  int size() const { return n_; }
  double step() const { return h_; }
  double half_extent() const { return half_; }
  Complex node(int ix, int iy) const { return {-half_ + (ix + 0.5) * h_, -half_ + (iy + 0.5) * h_}; }
  double& at(int ix, int iy) { return values_[static_cast<std::size_t>(iy) * n_ + ix]; }
  double at(int ix, int iy) const { return values_[static_cast<std::size_t>(iy) * n_ + ix]; }
  bool in_range(int ix, int iy) const { return ix >= 0 && iy >= 0 && ix < n_ && iy < n_; }
  // Node index whose cell starts at coordinate x (x on a node edge).
  int edge_index(double x) const { return static_cast<int>(std::lround((x + half_) / h_)); }
  // Node index of the global node (m + ½)·h.
  int global_to_local(int m) const { return m + offset_; }

  template <class F>
  void fill(F&& f) {
    for (int iy = 0; iy < n_; ++iy)
      for (int ix = 0; ix < n_; ++ix) at(ix, iy) = f(node(ix, iy));
  }

  // Value at each node: Σ over node cells of area(D(node, radius) ∩ cell)·value,
  // treating values outside the field as zero.
  NodeField disk_sums(double radius) const;

  // h²·Σ value over nodes whose cells tile [x0, x1] × [y0, y1] (edges on
  // node edges).
  double rect_sum(const Rect& rect) const;

  // Fractional-area disk integral at an arbitrary center using node values.
  double disk_integral(Complex center, double radius) const;

 private:
  double h_;
  double half_;
  int n_;
  int offset_;
  std::vector<double> values_;
};

}  // namespace carleson
