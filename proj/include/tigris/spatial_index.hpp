#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace tigris {

/// Incremental 3-d tree keyed by caller-assigned ids. Points are never
/// removed. Query results are deterministic: ties resolve to the lower id.
class KdTree3 {
 public:
  using Point = std::array<double, 3>;

  void insert(const Point& p, std::size_t id);
  [[nodiscard]] std::size_t size() const { return nodes_.size(); }

  [[nodiscard]] std::optional<std::size_t> nearest(const Point& q) const;

  /// Ids of all points within `radius` (inclusive), ascending.
  [[nodiscard]] std::vector<std::size_t> within(const Point& q, double radius) const;

  /// True if `pred(id)` holds for some point within `radius`. Stops at the
  /// first hit.
  template <class Pred>
  bool any_within(const Point& q, double radius, Pred&& pred) const {
    return any_within_impl(root_, q, radius * radius, pred);
  }

 private:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  struct Node {
    Point p;
    std::size_t id;
    std::uint32_t left = kNone;
    std::uint32_t right = kNone;
    std::uint8_t axis = 0;
  };

  static double dist2(const Point& a, const Point& b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return dx * dx + dy * dy + dz * dz;
  }

  template <class Pred>
  bool any_within_impl(std::uint32_t at, const Point& q, double r2, Pred& pred) const {
    while (at != kNone) {
      const Node& n = nodes_[at];
      if (dist2(n.p, q) <= r2 && pred(n.id)) return true;
      const double diff = q[n.axis] - n.p[n.axis];
      const std::uint32_t near_side = diff < 0.0 ? n.left : n.right;
      const std::uint32_t far_side = diff < 0.0 ? n.right : n.left;
      if (diff * diff <= r2 && any_within_impl(far_side, q, r2, pred)) return true;
      at = near_side;
    }
    return false;
  }

  std::vector<Node> nodes_;
  std::uint32_t root_ = kNone;
};

}  // namespace tigris
