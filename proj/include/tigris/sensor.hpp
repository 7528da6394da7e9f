#pragma once

// Forward-facing camera on a fixed-wing vehicle: range-dependent detection
// rates, ground footprint projection, closest-approach geometry for a
// straight pass, and informed state sampling.

#include <array>
#include <cstddef>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tigris/belief.hpp"
#include "tigris/dubins.hpp"
#include "tigris/polygon.hpp"

namespace tigris {

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }

/// Camera mounting and detection model. Pitch is measured from nadir.
struct SensorConfig {
  double pitch = deg_to_rad(65.0);
  double vfov = deg_to_rad(40.0);
  double hfov = deg_to_rad(60.0);
  double a = 1.0;
  double b = 0.05;    // 1/m
  double c = 250.0;   // m
  double beta = 250.0;  // m, range beyond which measurements carry no information
  double v_opt = 0.5;

  /// Throws std::invalid_argument on violated geometry or model bounds.
  void validate() const;
};

/// Throws std::invalid_argument if |f(beta) - 0.5| > tolerance.
void check_detection_continuity(const SensorConfig& cfg, double tolerance = 0.02);

/// True positive rate f(r); the false positive rate is 1 - f(r).
double detection_rate(double range, const SensorConfig& cfg);

/// Ground footprint as a convex quadrilateral, counter-clockwise, starting at
/// the near-right corner.
struct FootprintPolygon {
  std::array<Point2, 4> corners;

  [[nodiscard]] bool contains(Point2 p) const { return polygon_contains(corners, p); }
};

FootprintPolygon footprint(const VehicleState& state, const SensorConfig& cfg);

/// Every cell whose center lies in the polygon, in ascending index order.
std::vector<std::size_t> cells_in_footprint(const FootprintPolygon& poly, const BeliefGrid& grid);

/// As above, restricted to cells whose centers lie within `radius` of
/// `center` (a cheap pre-filter for range-limited sensing).
std::vector<std::size_t> cells_in_footprint(const FootprintPolygon& poly, const BeliefGrid& grid,
                                            Point2 center, double radius);

/// Footprint trapezoid in the vehicle frame (forward along heading, lateral
/// positive to the left) for a level vehicle at altitude z. Near/far rows are
/// the bottom and top image edges.
struct FootprintShape {
  double near_forward = 0.0;
  double near_half_width = 0.0;
  double far_forward = 0.0;
  double far_half_width = 0.0;

  /// Lateral growth of the trapezoid side per meter of forward distance.
  [[nodiscard]] double flare() const;
  /// Forward interval [lo, hi] over which a point at |lateral| = d lies in
  /// the footprint, or nullopt if it never does.
  [[nodiscard]] std::optional<std::pair<double, double>> forward_span(double d) const;
};

FootprintShape footprint_shape(const SensorConfig& cfg, double z);

/// Closest-approach geometry for a straight pass at constant altitude,
/// precomputed once per altitude.
class StraightPass {
 public:
  StraightPass(const SensorConfig& cfg, double z);

  [[nodiscard]] const FootprintShape& shape() const { return shape_; }
  [[nodiscard]] double altitude() const { return z_; }
  [[nodiscard]] double transition() const { return transition_; }
  /// See closest_forward_offset().
  [[nodiscard]] double closest_forward(double d) const;

 private:
  FootprintShape shape_;
  double z_;
  double base_;
  double transition_;
};

/// Lateral offset L at which the closest-approach point of a passing cell
/// moves from the bottom of the image to its side.
double transition_distance(const SensorConfig& cfg, double z);

/// Forward offset (ahead of the vehicle) of a cell at perpendicular distance
/// d from a straight track at the moment of closest visible approach.
/// Infinity if a cell at that lateral offset is never seen.
double closest_forward_offset(double d, const SensorConfig& cfg, double z);

/// Minimum slant range at which a cell at perpendicular distance d is seen
/// during a straight pass.
double min_range_to_edge(double d, const SensorConfig& cfg, double z);

struct AltitudeRange {
  double lo = 80.0;
  double hi = 120.0;

  [[nodiscard]] double mid() const { return 0.5 * (lo + hi); }
  void validate() const;
};

class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Places the vehicle so that the ground point `target` appears at image
/// vertical fraction v_opt when flying at altitude z with heading psi.
VehicleState place_for_view(Point2 target, double z, double psi, const SensorConfig& cfg);

/// Reward-weighted state sampler over grid cells. The cell table is built
/// once and is immutable; the generator is owned by the caller.
class InformedSampler {
 public:
  /// Throws SamplingError when every weight is zero, std::invalid_argument
  /// on negative weights or a size mismatch.
  InformedSampler(const BeliefGrid& grid, const std::vector<double>& weights,
                  const SensorConfig& cfg, AltitudeRange z_range);

  std::size_t sample_cell(std::mt19937_64& rng) const;
  VehicleState sample(std::mt19937_64& rng) const;

 private:
  const BeliefGrid* grid_;
  SensorConfig cfg_;
  AltitudeRange z_range_;
  std::vector<double> cumulative_;
};

}  // namespace tigris
