#pragma once

#include <span>
#include <vector>

namespace tigris {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Point-in-polygon for a simple polygon; points on the boundary count as
/// inside. Vertex order may be either orientation.
bool polygon_contains(std::span<const Point2> polygon, Point2 p);

/// True if the polygon has at least three vertices and no two non-adjacent
/// edges intersect.
bool polygon_is_simple(std::span<const Point2> polygon);

/// Obstacle region that the vehicle may not enter.
struct NoFlyZone {
  std::vector<Point2> polygon;

  /// Throws std::invalid_argument unless the polygon is simple with >= 3 vertices.
  void validate() const;
  [[nodiscard]] bool contains(Point2 p) const { return polygon_contains(polygon, p); }
};

}  // namespace tigris
