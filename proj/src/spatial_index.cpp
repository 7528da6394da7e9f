#include "tigris/spatial_index.hpp"

#include <algorithm>
#include <utility>

namespace tigris {

void KdTree3::insert(const Point& p, std::size_t id) {
  const auto index = static_cast<std::uint32_t>(nodes_.size());
  Node fresh{p, id};
  if (root_ == kNone) {
    nodes_.push_back(fresh);
    root_ = index;
    return;
  }
  std::uint32_t at = root_;
  while (true) {
    Node& n = nodes_[at];
    std::uint32_t& child = p[n.axis] < n.p[n.axis] ? n.left : n.right;
    if (child == kNone) {
      fresh.axis = static_cast<std::uint8_t>((n.axis + 1) % 3);
      child = index;
      nodes_.push_back(fresh);
      return;
    }
    at = child;
  }
}

std::optional<std::size_t> KdTree3::nearest(const Point& q) const {
  if (root_ == kNone) return std::nullopt;
  std::pair<double, std::size_t> best{std::numeric_limits<double>::infinity(), 0};

  // Explicit stack of (node, lower bound on squared distance to its region).
  std::vector<std::pair<std::uint32_t, double>> stack;
  stack.emplace_back(root_, 0.0);
  while (!stack.empty()) {
    const auto [at, bound] = stack.back();
    stack.pop_back();
    if (at == kNone || bound > best.first) continue;
    const Node& n = nodes_[at];
    const std::pair<double, std::size_t> cand{dist2(n.p, q), n.id};
    if (cand < best) best = cand;
    const double diff = q[n.axis] - n.p[n.axis];
    const std::uint32_t near_side = diff < 0.0 ? n.left : n.right;
    const std::uint32_t far_side = diff < 0.0 ? n.right : n.left;
    stack.emplace_back(far_side, std::max(bound, diff * diff));
    stack.emplace_back(near_side, bound);
  }
  return best.second;
}

std::vector<std::size_t> KdTree3::within(const Point& q, double radius) const {
  std::vector<std::size_t> out;
  const double r2 = radius * radius;
  std::vector<std::uint32_t> stack;
  if (root_ != kNone) stack.push_back(root_);
  while (!stack.empty()) {
    const Node& n = nodes_[stack.back()];
    stack.pop_back();
    if (dist2(n.p, q) <= r2) out.push_back(n.id);
    const double diff = q[n.axis] - n.p[n.axis];
    const std::uint32_t near_side = diff < 0.0 ? n.left : n.right;
    const std::uint32_t far_side = diff < 0.0 ? n.right : n.left;
    if (near_side != kNone) stack.push_back(near_side);
    if (far_side != kNone && diff * diff <= r2) stack.push_back(far_side);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tigris
