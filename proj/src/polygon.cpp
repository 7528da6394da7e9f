#include "tigris/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tigris {

namespace {

constexpr double kBoundaryTol = 1e-9;

double cross(Point2 o, Point2 a, Point2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(Point2 a, Point2 b, Point2 p) {
  const double len = std::hypot(b.x - a.x, b.y - a.y);
  if (std::fabs(cross(a, b, p)) > kBoundaryTol * std::max(1.0, len)) return false;
  return p.x >= std::min(a.x, b.x) - kBoundaryTol && p.x <= std::max(a.x, b.x) + kBoundaryTol &&
         p.y >= std::min(a.y, b.y) - kBoundaryTol && p.y <= std::max(a.y, b.y) + kBoundaryTol;
}

int orientation(Point2 a, Point2 b, Point2 c) {
  const double v = cross(a, b, c);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

bool segments_intersect(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

}  // namespace

bool polygon_contains(std::span<const Point2> polygon, Point2 p) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 a = polygon[i];
    const Point2 b = polygon[j];
    if (on_segment(a, b, p)) return true;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

bool polygon_is_simple(std::span<const Point2> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a1 = polygon[i];
    const Point2 a2 = polygon[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      // Adjacent edges share a vertex by construction.
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_intersect(a1, a2, polygon[j], polygon[(j + 1) % n])) return false;
    }
  }
  return true;
}

void NoFlyZone::validate() const {
  if (!polygon_is_simple(polygon)) {
    throw std::invalid_argument("no-fly zone must be a simple polygon with at least 3 vertices");
  }
}

}  // namespace tigris
