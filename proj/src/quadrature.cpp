#include "carleson/quadrature.hpp"

#include <stdexcept>

#include "carleson/errors.hpp"

namespace carleson {
namespace {

struct Moments {
  double a = 0.0, mx = 0.0, my = 0.0;
  Moments& operator+=(const Moments& o) {
    a += o.a;
    mx += o.mx;
    my += o.my;
    return *this;
  }
};

// Area and first moments of D(0, r) ∩ {X ≤ x, Y ≤ y}. Integrates the vertical
// chord of the disk below height y over X ∈ [−r, min(x, r)].
Moments corner_moments(double x, double y, double r) {
  Moments out;
  if (x <= -r || y <= -r) return out;
  const double r2 = r * r;
  const double xc = std::min(x, r);
  auto chord = [&](double X) { return std::sqrt(std::max(0.0, r2 - X * X)); };
  auto P = [&](double X) { return 0.5 * (X * chord(X) + r2 * std::asin(std::clamp(X / r, -1.0, 1.0))); };
  auto Q = [&](double X) {
    const double s = chord(X);
    return -s * s * s / 3.0;
  };
  auto full = [&](double a, double b) {
    if (b > a) out += {2.0 * (P(b) - P(a)), 2.0 * (Q(b) - Q(a)), 0.0};
  };
  if (y >= r) {
    full(-r, xc);
    return out;
  }
  const double xy = std::sqrt(r2 - y * y);
  const double a = -xy, b = std::min(xy, xc);
  if (b > a) {
    out += {y * (b - a) + P(b) - P(a), 0.5 * y * (b * b - a * a) + Q(b) - Q(a),
            0.5 * ((y * y - r2) * (b - a) + (b * b * b - a * a * a) / 3.0)};
  }
  if (y >= 0.0) {
    full(-r, std::min(-xy, xc));
    full(xy, xc);
  }
  return out;
}

Moments rect_moments(Complex center, double r, const Rect& rect) {
  const double x0 = rect.x0 - center.real(), x1 = rect.x1 - center.real();
  const double y0 = rect.y0 - center.imag(), y1 = rect.y1 - center.imag();
  const Moments a = corner_moments(x1, y1, r), b = corner_moments(x0, y1, r);
  const Moments c = corner_moments(x1, y0, r), d = corner_moments(x0, y0, r);
  return {a.a - b.a - c.a + d.a, a.mx - b.mx - c.mx + d.mx, a.my - b.my - c.my + d.my};
}

struct StencilRow {
  int dy = 0;
  int run = -1;  // full cells for |dx| ≤ run
  std::vector<std::pair<int, double>> partial;
};

std::vector<StencilRow> disk_stencil(double radius, double h) {
  const int reach = static_cast<int>(std::ceil(radius / h + 0.5)) + 1;
  std::vector<StencilRow> rows;
  for (int dy = -reach; dy <= reach; ++dy) {
    StencilRow row;
    row.dy = dy;
    for (int dx = -reach; dx <= reach; ++dx) {
      const Rect rect{(dx - 0.5) * h, (dx + 0.5) * h, (dy - 0.5) * h, (dy + 0.5) * h};
      const double fx = std::max(std::abs(rect.x0), std::abs(rect.x1));
      const double fy = std::max(std::abs(rect.y0), std::abs(rect.y1));
      if (fx * fx + fy * fy <= radius * radius) {
        row.run = std::max(row.run, std::abs(dx));
        continue;
      }
      if (distance_to_rect(0.0, rect) >= radius) continue;
      const double area = disk_rect_area(0.0, radius, rect);
      if (area > 0.0) row.partial.emplace_back(dx, area);
    }
    if (row.run >= 0 || !row.partial.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

double disk_rect_area(Complex center, double radius, const Rect& rect) {
  return std::max(0.0, rect_moments(center, radius, rect).a);
}

AreaMoment disk_rect_moment(Complex center, double radius, const Rect& rect) {
  const Moments m = rect_moments(center, radius, rect);
  AreaMoment out;
  out.area = std::max(0.0, m.a);
  const Complex mid(0.5 * (rect.x0 + rect.x1), 0.5 * (rect.y0 + rect.y1));
  const double cell_area = (rect.x1 - rect.x0) * (rect.y1 - rect.y0);
  if (out.area <= 1e-9 * cell_area) {
    out.centroid = mid;
    return out;
  }
  const double cx = std::clamp(center.real() + m.mx / m.a, rect.x0, rect.x1);
  const double cy = std::clamp(center.imag() + m.my / m.a, rect.y0, rect.y1);
  out.centroid = Complex(cx, cy);
  return out;
}

NodeField::NodeField(double step, double half_extent) : h_(step) {
  if (!(step > 0.0)) throw DomainError("node field step must be positive");
  const long cells = std::lround(std::ceil(half_extent / step - 1e-9));
  half_ = static_cast<double>(cells) * step;
  n_ = static_cast<int>(2 * cells);
  offset_ = static_cast<int>(cells);
  values_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
}

NodeField NodeField::disk_sums(double radius) const {
  const auto stencil = disk_stencil(radius, h_);
  // Row prefix sums with a leading zero.
  std::vector<double> prefix(static_cast<std::size_t>(n_) * (n_ + 1), 0.0);
  for (int iy = 0; iy < n_; ++iy) {
    double* row = &prefix[static_cast<std::size_t>(iy) * (n_ + 1)];
    for (int ix = 0; ix < n_; ++ix) row[ix + 1] = row[ix] + at(ix, iy);
  }
  NodeField out(h_, half_);
  const double cell_area = h_ * h_;
  for (int iy = 0; iy < n_; ++iy) {
    for (int ix = 0; ix < n_; ++ix) {
      double total = 0.0;
      for (const auto& row : stencil) {
        const int y = iy + row.dy;
        if (y < 0 || y >= n_) continue;
        const double* pre = &prefix[static_cast<std::size_t>(y) * (n_ + 1)];
        if (row.run >= 0) {
          const int lo = std::max(0, ix - row.run), hi = std::min(n_ - 1, ix + row.run);
          if (hi >= lo) total += cell_area * (pre[hi + 1] - pre[lo]);
        }
        for (const auto& [dx, area] : row.partial) {
          const int x = ix + dx;
          if (x >= 0 && x < n_) total += area * at(x, y);
        }
      }
      out.at(ix, iy) = total;
    }
  }
  return out;
}

double NodeField::rect_sum(const Rect& rect) const {
  const int x0 = std::max(0, edge_index(rect.x0)), x1 = std::min(n_, edge_index(rect.x1));
  const int y0 = std::max(0, edge_index(rect.y0)), y1 = std::min(n_, edge_index(rect.y1));
  CompensatedSum acc;
  for (int iy = y0; iy < y1; ++iy)
    for (int ix = x0; ix < x1; ++ix) acc.add(at(ix, iy));
  return acc.value() * h_ * h_;
}

double NodeField::disk_integral(Complex center, double radius) const {
  CompensatedSum acc;
  for_each_disk_cell(center, radius, h_, [&](int m, int n, double area, Complex) {
    const int ix = global_to_local(m), iy = global_to_local(n);
    if (in_range(ix, iy)) acc.add(area * at(ix, iy));
  });
  return acc.value();
}

}  // namespace carleson
