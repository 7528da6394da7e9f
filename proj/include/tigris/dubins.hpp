#pragma once

// Planar Dubins connections for a constant-curvature fixed-wing vehicle.
// Altitude rides along linearly in arc-length and never contributes to cost.

#include <cstdint>
#include <vector>

namespace tigris {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Wraps an angle into [0, 2*pi).
double wrap_two_pi(double angle);

/// Planar position, altitude above the ground plane and heading.
struct VehicleState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double psi = 0.0;

  VehicleState() = default;
  VehicleState(double x_, double y_, double z_, double psi_)
      : x(x_), y(y_), z(z_), psi(wrap_two_pi(psi_)) {}
};

enum class SegmentKind : std::uint8_t { Left, Right, Straight };

struct Segment {
  SegmentKind kind = SegmentKind::Straight;
  double length = 0.0;  // meters
};

/// Six Dubins words, in the fixed order used for tie-breaking.
enum class DubinsWord : std::uint8_t { LSL, RSR, LSR, RSL, RLR, LRL };

struct PathEdge {
  VehicleState start;
  VehicleState end;
  std::vector<Segment> segments;
  double turn_radius = 0.0;
  double total_length = 0.0;
};

/// Shortest Dubins path between two poses. Throws std::invalid_argument if
/// turn_radius <= 0.
PathEdge connect(const VehicleState& from, const VehicleState& to, double turn_radius);

/// Pose at arc-length s along the edge. Throws std::out_of_range outside
/// [0, total_length].
VehicleState pose_at(const PathEdge& edge, double s);

/// Prefix of the edge of length s. Throws std::out_of_range outside
/// [0, total_length].
PathEdge truncate(const PathEdge& edge, double s);

/// Per-word length in meters, or a negative value when the word is
/// infeasible for this geometry. Exposed for tests.
double dubins_word_length(DubinsWord word, const VehicleState& from, const VehicleState& to,
                          double turn_radius);

}  // namespace tigris
