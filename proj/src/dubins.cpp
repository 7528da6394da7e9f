#include "tigris/dubins.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tigris {

double wrap_two_pi(double angle) {
  double w = std::fmod(angle, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

namespace {

// Angles this close to a full turn are numerical noise around zero.
constexpr double kLoopSnap = 1e-10;

double snap_turn(double a) {
  a = wrap_two_pi(a);
  return (kTwoPi - a < kLoopSnap) ? 0.0 : a;
}

struct WordSolution {
  bool feasible = false;
  std::array<double, 3> params{};  // normalized by turn radius
};

constexpr std::array<std::array<SegmentKind, 3>, 6> kWordKinds = {{
    {SegmentKind::Left, SegmentKind::Straight, SegmentKind::Left},
    {SegmentKind::Right, SegmentKind::Straight, SegmentKind::Right},
    {SegmentKind::Left, SegmentKind::Straight, SegmentKind::Right},
    {SegmentKind::Right, SegmentKind::Straight, SegmentKind::Left},
    {SegmentKind::Right, SegmentKind::Left, SegmentKind::Right},
    {SegmentKind::Left, SegmentKind::Right, SegmentKind::Left},
}};

struct Normalized {
  double d, alpha, beta;
  double sa, sb, ca, cb, c_ab;
};

Normalized normalize(const VehicleState& from, const VehicleState& to, double radius) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  const double dist = std::hypot(dx, dy);
  const double theta = dist > 0.0 ? std::atan2(dy, dx) : 0.0;
  Normalized n{};
  n.d = dist / radius;
  n.alpha = wrap_two_pi(from.psi - theta);
  n.beta = wrap_two_pi(to.psi - theta);
  n.sa = std::sin(n.alpha);
  n.sb = std::sin(n.beta);
  n.ca = std::cos(n.alpha);
  n.cb = std::cos(n.beta);
  n.c_ab = std::cos(n.alpha - n.beta);
  return n;
}

WordSolution solve(DubinsWord word, const Normalized& n) {
  WordSolution s;
  const double d = n.d;
  switch (word) {
    case DubinsWord::LSL: {
      const double p_sq = 2.0 + d * d - 2.0 * n.c_ab + 2.0 * d * (n.sa - n.sb);
      if (p_sq < 0.0) return s;
      const double tmp = std::atan2(n.cb - n.ca, d + n.sa - n.sb);
      s.params = {snap_turn(tmp - n.alpha), std::sqrt(p_sq), snap_turn(n.beta - tmp)};
      break;
    }
    case DubinsWord::RSR: {
      const double p_sq = 2.0 + d * d - 2.0 * n.c_ab + 2.0 * d * (n.sb - n.sa);
      if (p_sq < 0.0) return s;
      const double tmp = std::atan2(n.ca - n.cb, d - n.sa + n.sb);
      s.params = {snap_turn(n.alpha - tmp), std::sqrt(p_sq), snap_turn(tmp - n.beta)};
      break;
    }
    case DubinsWord::LSR: {
      const double p_sq = -2.0 + d * d + 2.0 * n.c_ab + 2.0 * d * (n.sa + n.sb);
      if (p_sq < 0.0) return s;
      const double p = std::sqrt(p_sq);
      const double tmp = std::atan2(-n.ca - n.cb, d + n.sa + n.sb) - std::atan2(-2.0, p);
      s.params = {snap_turn(tmp - n.alpha), p, snap_turn(tmp - n.beta)};
      break;
    }
    case DubinsWord::RSL: {
      const double p_sq = -2.0 + d * d + 2.0 * n.c_ab - 2.0 * d * (n.sa + n.sb);
      if (p_sq < 0.0) return s;
      const double p = std::sqrt(p_sq);
      const double tmp = std::atan2(n.ca + n.cb, d - n.sa - n.sb) - std::atan2(2.0, p);
      s.params = {snap_turn(n.alpha - tmp), p, snap_turn(n.beta - tmp)};
      break;
    }
    case DubinsWord::RLR: {
      const double tmp = (6.0 - d * d + 2.0 * n.c_ab + 2.0 * d * (n.sa - n.sb)) / 8.0;
      if (std::fabs(tmp) > 1.0) return s;
      const double phi = std::atan2(n.ca - n.cb, d - n.sa + n.sb);
      const double p = wrap_two_pi(kTwoPi - std::acos(tmp));
      const double t = snap_turn(n.alpha - phi + p / 2.0);
      s.params = {t, p, snap_turn(n.alpha - n.beta - t + p)};
      break;
    }
    case DubinsWord::LRL: {
      const double tmp = (6.0 - d * d + 2.0 * n.c_ab + 2.0 * d * (n.sb - n.sa)) / 8.0;
      if (std::fabs(tmp) > 1.0) return s;
      const double phi = std::atan2(n.ca - n.cb, d + n.sa - n.sb);
      const double p = wrap_two_pi(kTwoPi - std::acos(tmp));
      const double t = snap_turn(-n.alpha - phi + p / 2.0);
      s.params = {t, p, snap_turn(n.beta - n.alpha - t + p)};
      break;
    }
  }
  s.feasible = true;
  return s;
}

VehicleState advance(const VehicleState& p, const Segment& seg, double radius, double length) {
  VehicleState out = p;
  switch (seg.kind) {
    case SegmentKind::Straight:
      out.x = p.x + length * std::cos(p.psi);
      out.y = p.y + length * std::sin(p.psi);
      break;
    case SegmentKind::Left: {
      const double h = p.psi + length / radius;
      out.x = p.x + radius * (std::sin(h) - std::sin(p.psi));
      out.y = p.y - radius * (std::cos(h) - std::cos(p.psi));
      out.psi = wrap_two_pi(h);
      break;
    }
    case SegmentKind::Right: {
      const double h = p.psi - length / radius;
      out.x = p.x - radius * (std::sin(h) - std::sin(p.psi));
      out.y = p.y + radius * (std::cos(h) - std::cos(p.psi));
      out.psi = wrap_two_pi(h);
      break;
    }
  }
  return out;
}

double clamp_arclength(const PathEdge& edge, double s) {
  constexpr double kSlack = 1e-9;
  if (!(s >= -kSlack && s <= edge.total_length + kSlack)) {
    throw std::out_of_range("arc-length outside edge");
  }
  return std::clamp(s, 0.0, edge.total_length);
}

}  // namespace

double dubins_word_length(DubinsWord word, const VehicleState& from, const VehicleState& to,
                          double turn_radius) {
  const WordSolution s = solve(word, normalize(from, to, turn_radius));
  if (!s.feasible) return -1.0;
  return (s.params[0] + s.params[1] + s.params[2]) * turn_radius;
}

PathEdge connect(const VehicleState& from, const VehicleState& to, double turn_radius) {
  if (!(turn_radius > 0.0)) throw std::invalid_argument("turn_radius must be positive");

  PathEdge edge;
  edge.start = from;
  edge.end = to;
  edge.turn_radius = turn_radius;

  const bool same_point = std::hypot(to.x - from.x, to.y - from.y) < 1e-12;
  const double dpsi = std::fabs(wrap_two_pi(to.psi - from.psi));
  if (same_point && std::min(dpsi, kTwoPi - dpsi) < 1e-12) {
    edge.total_length = 0.0;
    return edge;
  }

  const Normalized n = normalize(from, to, turn_radius);
  double best = std::numeric_limits<double>::infinity();
  int best_word = -1;
  std::array<double, 3> best_params{};
  for (int w = 0; w < 6; ++w) {
    const WordSolution s = solve(static_cast<DubinsWord>(w), n);
    if (!s.feasible) continue;
    const double len = s.params[0] + s.params[1] + s.params[2];
    if (len < best) {
      best = len;
      best_word = w;
      best_params = s.params;
    }
  }
  // Some CSC word is always feasible for distinct poses.
  if (best_word < 0) throw std::logic_error("no feasible Dubins word");

  for (int i = 0; i < 3; ++i) {
    edge.segments.push_back({kWordKinds[best_word][i], best_params[i] * turn_radius});
  }
  edge.total_length = 0.0;
  for (const Segment& seg : edge.segments) edge.total_length += seg.length;
  return edge;
}

VehicleState pose_at(const PathEdge& edge, double s) {
  s = clamp_arclength(edge, s);
  if (edge.total_length <= 0.0) return edge.start;

  VehicleState p = edge.start;
  double remaining = s;
  for (const Segment& seg : edge.segments) {
    if (remaining <= 0.0) break;
    const double step = std::min(remaining, seg.length);
    p = advance(p, seg, edge.turn_radius, step);
    remaining -= step;
  }
  p.z = edge.start.z + (edge.end.z - edge.start.z) * (s / edge.total_length);
  return p;
}

PathEdge truncate(const PathEdge& edge, double s) {
  s = clamp_arclength(edge, s);
  if (s == edge.total_length) return edge;

  PathEdge out;
  out.start = edge.start;
  out.turn_radius = edge.turn_radius;
  double remaining = s;
  for (const Segment& seg : edge.segments) {
    if (remaining <= 0.0) break;
    const double take = std::min(remaining, seg.length);
    out.segments.push_back({seg.kind, take});
    remaining -= take;
  }
  out.total_length = s;
  out.end = pose_at(edge, s);
  return out;
}

}  // namespace tigris
