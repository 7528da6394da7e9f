#include "tigris/sensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tigris {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool nadir_in_view(const SensorConfig& cfg) { return cfg.pitch <= 0.5 * cfg.vfov; }

}  // namespace

void SensorConfig::validate() const {
  const auto fail = [](const char* what) { throw std::invalid_argument(what); };
  if (!(pitch >= 0.0 && pitch < kPi / 2.0)) fail("pitch must be in [0, pi/2)");
  if (!(vfov > 0.0 && vfov < kPi)) fail("vfov must be in (0, pi)");
  if (!(hfov > 0.0 && hfov < kPi)) fail("hfov must be in (0, pi)");
  if (!(pitch + 0.5 * vfov < kPi / 2.0)) fail("top of frame must intersect the ground");
  if (!(beta > 0.0)) fail("beta must be positive");
  if (!(a >= 1.0)) fail("a must be >= 1");
  if (!(b >= 0.0)) fail("b must be non-negative");
  if (!std::isfinite(c)) fail("c must be finite");
  if (!(v_opt >= 0.0 && v_opt <= 1.0)) fail("v_opt must be in [0, 1]");
}

void check_detection_continuity(const SensorConfig& cfg, double tolerance) {
  const double at_beta = 1.0 / (cfg.a + std::exp(cfg.b * (cfg.beta - cfg.c)));
  if (std::fabs(at_beta - 0.5) > tolerance) {
    throw std::invalid_argument("detection rate jumps by " + std::to_string(at_beta - 0.5) +
                                " at beta");
  }
}

double detection_rate(double range, const SensorConfig& cfg) {
  if (range > cfg.beta) return 0.5;
  return 1.0 / (cfg.a + std::exp(cfg.b * (range - cfg.c)));
}

FootprintShape footprint_shape(const SensorConfig& cfg, double z) {
  const double near_angle = cfg.pitch - 0.5 * cfg.vfov;
  const double far_angle = cfg.pitch + 0.5 * cfg.vfov;
  const double half_tan = std::tan(0.5 * cfg.hfov);
  FootprintShape s;
  s.near_forward = z * std::tan(near_angle);
  s.near_half_width = z / std::cos(near_angle) * half_tan;
  s.far_forward = z * std::tan(far_angle);
  s.far_half_width = z / std::cos(far_angle) * half_tan;
  return s;
}

double FootprintShape::flare() const {
  const double depth = far_forward - near_forward;
  return depth > 0.0 ? (far_half_width - near_half_width) / depth : 0.0;
}

std::optional<std::pair<double, double>> FootprintShape::forward_span(double d) const {
  d = std::fabs(d);
  if (d > far_half_width) return std::nullopt;
  double lo = near_forward;
  if (d > near_half_width) lo += (d - near_half_width) / flare();
  return std::make_pair(std::min(lo, far_forward), far_forward);
}

FootprintPolygon footprint(const VehicleState& state, const SensorConfig& cfg) {
  const FootprintShape s = footprint_shape(cfg, state.z);
  const double c = std::cos(state.psi);
  const double sn = std::sin(state.psi);
  const auto to_world = [&](double fwd, double lat) {
    return Point2{state.x + fwd * c - lat * sn, state.y + fwd * sn + lat * c};
  };
  return FootprintPolygon{{
      to_world(s.near_forward, -s.near_half_width),
      to_world(s.far_forward, -s.far_half_width),
      to_world(s.far_forward, s.far_half_width),
      to_world(s.near_forward, s.near_half_width),
  }};
}

namespace {

struct Box {
  double min_x, max_x, min_y, max_y;
};

std::vector<std::size_t> cells_in_box(const FootprintPolygon& poly, const BeliefGrid& grid,
                                      const Box& box) {
  const GridSpec& g = grid.spec();
  // Cell centers sit at origin + (i + 0.5) * cell_size.
  const auto first = [&](double lo, double origin, int n) {
    return static_cast<int>(
        std::clamp(std::ceil((lo - origin) / g.cell_size - 0.5), 0.0, static_cast<double>(n)));
  };
  const auto last = [&](double hi, double origin, int n) {
    return static_cast<int>(std::clamp(std::floor((hi - origin) / g.cell_size - 0.5), -1.0,
                                       static_cast<double>(n - 1)));
  };
  const int c0 = first(box.min_x, g.origin.x, g.width);
  const int c1 = last(box.max_x, g.origin.x, g.width);
  const int r0 = first(box.min_y, g.origin.y, g.height);
  const int r1 = last(box.max_y, g.origin.y, g.height);

  std::vector<std::size_t> cells;
  for (int row = r0; row <= r1; ++row) {
    for (int col = c0; col <= c1; ++col) {
      const std::size_t idx = grid.index(col, row);
      if (poly.contains(grid.cell_center(idx))) cells.push_back(idx);
    }
  }
  return cells;
}

Box bounding_box(const FootprintPolygon& poly) {
  Box b{poly.corners[0].x, poly.corners[0].x, poly.corners[0].y, poly.corners[0].y};
  for (const Point2& p : poly.corners) {
    b.min_x = std::min(b.min_x, p.x);
    b.max_x = std::max(b.max_x, p.x);
    b.min_y = std::min(b.min_y, p.y);
    b.max_y = std::max(b.max_y, p.y);
  }
  return b;
}

}  // namespace

std::vector<std::size_t> cells_in_footprint(const FootprintPolygon& poly, const BeliefGrid& grid) {
  return cells_in_box(poly, grid, bounding_box(poly));
}

std::vector<std::size_t> cells_in_footprint(const FootprintPolygon& poly, const BeliefGrid& grid,
                                            Point2 center, double radius) {
  Box b = bounding_box(poly);
  b.min_x = std::max(b.min_x, center.x - radius);
  b.max_x = std::min(b.max_x, center.x + radius);
  b.min_y = std::max(b.min_y, center.y - radius);
  b.max_y = std::min(b.max_y, center.y + radius);
  std::vector<std::size_t> cells = cells_in_box(poly, grid, b);
  std::erase_if(cells, [&](std::size_t idx) {
    const Point2 c = grid.cell_center(idx);
    return std::hypot(c.x - center.x, c.y - center.y) > radius;
  });
  return cells;
}

StraightPass::StraightPass(const SensorConfig& cfg, double z)
    : shape_(footprint_shape(cfg, z)), z_(z) {
  if (nadir_in_view(cfg)) {
    // Half-width of the footprint directly abeam of the vehicle.
    base_ = 0.0;
    transition_ = shape_.near_half_width - shape_.near_forward * shape_.flare();
  } else {
    base_ = shape_.near_forward;
    transition_ = shape_.near_half_width;
  }
}

double StraightPass::closest_forward(double d) const {
  d = std::fabs(d);
  if (d > shape_.far_half_width) return kInf;
  if (d < transition_) return base_;
  const double flare = shape_.flare();
  if (!(flare > 0.0)) return kInf;
  return base_ + (d - transition_) / flare;
}

double transition_distance(const SensorConfig& cfg, double z) {
  return StraightPass(cfg, z).transition();
}

double closest_forward_offset(double d, const SensorConfig& cfg, double z) {
  return StraightPass(cfg, z).closest_forward(d);
}

double min_range_to_edge(double d, const SensorConfig& cfg, double z) {
  const double forward = closest_forward_offset(d, cfg, z);
  if (!std::isfinite(forward)) return kInf;
  return std::sqrt(d * d + forward * forward + z * z);
}

void AltitudeRange::validate() const {
  if (!(lo > 0.0 && hi >= lo)) throw std::invalid_argument("altitude range must satisfy 0 < lo <= hi");
}

VehicleState place_for_view(Point2 target, double z, double psi, const SensorConfig& cfg) {
  const double offset = z * std::tan(cfg.pitch - cfg.v_opt * 0.5 * cfg.vfov);
  return VehicleState(target.x - offset * std::cos(psi), target.y - offset * std::sin(psi), z, psi);
}

InformedSampler::InformedSampler(const BeliefGrid& grid, const std::vector<double>& weights,
                                 const SensorConfig& cfg, AltitudeRange z_range)
    : grid_(&grid), cfg_(cfg), z_range_(z_range) {
  if (weights.size() != grid.size()) throw std::invalid_argument("one weight per cell required");
  z_range_.validate();
  cumulative_.reserve(weights.size());
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("sampling weights must be non-negative");
    total += w;
    cumulative_.push_back(total);
  }
  if (!(total > 0.0)) throw SamplingError("all sampling weights are zero");
}

std::size_t InformedSampler::sample_cell(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> u(0.0, cumulative_.back());
  const double draw = u(rng);
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), draw);
  const auto idx = static_cast<std::size_t>(it - cumulative_.begin());
  return std::min(idx, cumulative_.size() - 1);
}

VehicleState InformedSampler::sample(std::mt19937_64& rng) const {
  const Point2 target = grid_->cell_center(sample_cell(rng));
  std::uniform_real_distribution<double> z_dist(z_range_.lo, z_range_.hi);
  std::uniform_real_distribution<double> psi_dist(0.0, kTwoPi);
  const double z = z_dist(rng);
  const double psi = psi_dist(rng);
  return place_for_view(target, z, psi, cfg_);
}

}  // namespace tigris
