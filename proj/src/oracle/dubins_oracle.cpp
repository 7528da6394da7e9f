#include "tigris/oracle.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace tigris::oracle {

namespace {

enum class Turn { Left, Right };

struct Pose {
  double x, y, h;
};

struct Vec {
  double x, y;
};

Vec center_of(const Pose& p, Turn d, double r) {
  return d == Turn::Left ? Vec{p.x - r * std::sin(p.h), p.y + r * std::cos(p.h)}
                         : Vec{p.x + r * std::sin(p.h), p.y - r * std::cos(p.h)};
}

Pose arc(const Pose& p, Turn d, double angle, double r) {
  const Vec c = center_of(p, d, r);
  if (d == Turn::Left) {
    const double h = p.h + angle;
    return {c.x + r * std::sin(h), c.y - r * std::cos(h), h};
  }
  const double h = p.h - angle;
  return {c.x - r * std::sin(h), c.y + r * std::cos(h), h};
}

Pose straight(const Pose& p, double s) { return {p.x + s * std::cos(p.h), p.y + s * std::sin(p.h), p.h}; }

double turn_angle(Turn d, double from, double to) {
  double a = wrap_two_pi(d == Turn::Left ? to - from : from - to);
  if (a > kTwoPi - 1e-9) a = 0.0;
  return a;
}

// Heading of a vehicle at point q circling center c in direction d.
double heading_on_circle(Vec q, Vec c, Turn d) {
  const double dx = q.x - c.x;
  const double dy = q.y - c.y;
  return d == Turn::Left ? std::atan2(dx, -dy) : std::atan2(-dx, dy);
}

bool same_pose(const Pose& a, const Pose& b, double scale) {
  const double tol = 1e-6 * std::max(1.0, scale);
  const double dh = std::fabs(std::remainder(a.h - b.h, kTwoPi));
  return std::hypot(a.x - b.x, a.y - b.y) <= tol && dh <= 1e-6;
}

// Roots of f over [0, 2*pi] found by sampling and bisection.
std::vector<double> roots(const std::function<double(double)>& f, int samples) {
  std::vector<double> out;
  double t0 = 0.0;
  double f0 = f(t0);
  for (int k = 1; k <= samples; ++k) {
    const double t1 = kTwoPi * k / samples;
    const double f1 = f(t1);
    if (f0 == 0.0) {
      out.push_back(t0);
    } else if ((f0 < 0.0) != (f1 < 0.0) && f1 != 0.0) {
      double lo = t0, hi = t1, flo = f0;
      for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      out.push_back(0.5 * (lo + hi));
    }
    t0 = t1;
    f0 = f1;
  }
  for (double& t : out) {
    if (t > kTwoPi - 1e-9) t = 0.0;
  }
  return out;
}

double csc(Turn d1, Turn d2, const Pose& a, const Pose& b, double r, int samples) {
  const Vec cg = center_of(b, d2, r);
  const double side = d2 == Turn::Left ? r : -r;
  const auto residual = [&](double t) {
    const Pose p = arc(a, d1, t, r);
    return std::cos(p.h) * (cg.y - p.y) - std::sin(p.h) * (cg.x - p.x) - side;
  };
  double best = -1.0;
  const double scale = std::hypot(b.x - a.x, b.y - a.y) + r;
  for (double t : roots(residual, samples)) {
    const Pose p = arc(a, d1, t, r);
    const double s = std::cos(p.h) * (cg.x - p.x) + std::sin(p.h) * (cg.y - p.y);
    if (s < -1e-9 * scale) continue;
    const double u = turn_angle(d2, p.h, b.h);
    const Pose end = arc(straight(p, std::max(0.0, s)), d2, u, r);
    if (!same_pose(end, b, scale)) continue;
    const double len = r * t + std::max(0.0, s) + r * u;
    if (best < 0.0 || len < best) best = len;
  }
  return best;
}

double ccc(Turn d1, Turn d2, const Pose& a, const Pose& b, double r, int samples) {
  const Vec cg = center_of(b, d1, r);
  const auto residual = [&](double t) {
    const Vec cm = center_of(arc(a, d1, t, r), d2, r);
    return std::hypot(cm.x - cg.x, cm.y - cg.y) - 2.0 * r;
  };
  double best = -1.0;
  const double scale = std::hypot(b.x - a.x, b.y - a.y) + r;
  for (double t : roots(residual, samples)) {
    const Pose p = arc(a, d1, t, r);
    const Vec cm = center_of(p, d2, r);
    const Vec q{0.5 * (cm.x + cg.x), 0.5 * (cm.y + cg.y)};
    const double hq = heading_on_circle(q, cm, d2);
    const double mid = turn_angle(d2, p.h, hq);
    const double last = turn_angle(d1, hq, b.h);
    const Pose end = arc(arc(p, d2, mid, r), d1, last, r);
    if (!same_pose(end, b, scale)) continue;
    const double len = r * (t + mid + last);
    if (best < 0.0 || len < best) best = len;
  }
  return best;
}

}  // namespace

double dubins_word_length(DubinsWord word, const VehicleState& from, const VehicleState& to,
                          double turn_radius, int samples) {
  if (!(turn_radius > 0.0)) throw std::invalid_argument("turn_radius must be positive");
  const Pose a{from.x, from.y, from.psi};
  const Pose b{to.x, to.y, to.psi};
  const double r = turn_radius;
  switch (word) {
    case DubinsWord::LSL: return csc(Turn::Left, Turn::Left, a, b, r, samples);
    case DubinsWord::RSR: return csc(Turn::Right, Turn::Right, a, b, r, samples);
    case DubinsWord::LSR: return csc(Turn::Left, Turn::Right, a, b, r, samples);
    case DubinsWord::RSL: return csc(Turn::Right, Turn::Left, a, b, r, samples);
    case DubinsWord::RLR: return ccc(Turn::Right, Turn::Left, a, b, r, samples);
    case DubinsWord::LRL: return ccc(Turn::Left, Turn::Right, a, b, r, samples);
  }
  return -1.0;
}

double dubins_length(const VehicleState& from, const VehicleState& to, double turn_radius, int samples) {
  double best = -1.0;
  for (DubinsWord w : {DubinsWord::LSL, DubinsWord::RSR, DubinsWord::LSR, DubinsWord::RSL, DubinsWord::RLR,
                       DubinsWord::LRL}) {
    const double len = dubins_word_length(w, from, to, turn_radius, samples);
    if (len >= 0.0 && (best < 0.0 || len < best)) best = len;
  }
  return best;
}

}  // namespace tigris::oracle
