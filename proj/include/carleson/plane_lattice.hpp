#pragma once

#include <compare>
#include <complex>
#include <cstddef>
#include <vector>

namespace carleson {

using Complex = std::complex<double>;

// ν = j + ik ∈ Z². Ordering is row-major by j then k.
struct LatticePoint {
  int j = 0;
  int k = 0;

  Complex as_complex() const { return {static_cast<double>(j), static_cast<double>(k)}; }
  friend constexpr bool operator==(LatticePoint, LatticePoint) = default;
  friend constexpr auto operator<=>(LatticePoint, LatticePoint) = default;
};

// Axis-aligned rectangle [x0, x1] × [y0, y1].
struct Rect {
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
};

// Half-open unit square [j−½, j+½) × [k−½, k+½).
struct Cell {
  LatticePoint center;

  bool contains(Complex z) const;
  Rect extent() const;
};

// Cells with max(|j|, |k|) ≤ n_max.
class Window {
 public:
  explicit Window(int n_max = 12);

  int n_max() const { return n_max_; }
  int side() const { return 2 * n_max_ + 1; }
  std::size_t cell_count() const { return static_cast<std::size_t>(side()) * side(); }
  // Half side length of the covered square [−n_max−½, n_max+½]².
  double half_width() const { return n_max_ + 0.5; }

  bool contains(LatticePoint nu) const;
  // Row-major position of ν; requires contains(ν).
  std::size_t index(LatticePoint nu) const;
  LatticePoint at(std::size_t index) const;
  std::vector<LatticePoint> cells() const;

  friend bool operator==(const Window&, const Window&) = default;

 private:
  int n_max_;
};

// Discretization parameters shared by every quadrature in the toolkit.
// Quadrature nodes sit at ((m+½)·step, (n+½)·step), so cell edges at
// half-integers are node-cell edges whenever step divides ½.
class GridSpec {
 public:
  static constexpr double kDefaultStep = 0.05;
  static constexpr double kDefaultRadius = 16.0;
  static constexpr int kDefaultWindow = 12;

  GridSpec() : GridSpec(kDefaultStep, kDefaultRadius, Window(kDefaultWindow)) {}
  GridSpec(double step, double radius, Window window);

  double step() const { return step_; }
  double radius() const { return radius_; }
  const Window& window() const { return window_; }

  GridSpec with_step(double step) const { return {step, radius_, window_}; }
  // Keeps the radius guard satisfied by enlarging the radius when needed.
  GridSpec with_window(int n_max) const;

 private:
  double step_;
  double radius_;
  Window window_;
};

LatticePoint cell_of(Complex z);

// Distance from z to the closed rectangle (0 inside).
double distance_to_rect(Complex z, const Rect& rect);

// Every ν whose closed cell has a point at distance < radius from z,
// in row-major order.
std::vector<LatticePoint> covering_cells(Complex z, double radius);

}  // namespace carleson
