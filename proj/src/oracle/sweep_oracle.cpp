#include "tigris/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tigris::oracle {

double sliding_min_range(double d, const SensorConfig& cfg, double z, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  // Ground point at the origin; the vehicle sits `f` meters behind it, so the
  // point is f meters ahead in the vehicle frame.
  const Point2 target{0.0, d};
  const auto seen = [&](double f) { return footprint(VehicleState(-f, 0.0, z, 0.0), cfg).contains(target); };
  const auto range = [&](double f) { return std::sqrt(f * f + d * d + z * z); };

  const FootprintPolygon at_origin = footprint(VehicleState(0.0, 0.0, z, 0.0), cfg);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Point2& c : at_origin.corners) {
    lo = std::min(lo, c.x);
    hi = std::max(hi, c.x);
  }
  lo -= step;
  hi += step;

  double best = std::numeric_limits<double>::infinity();
  const auto n = static_cast<long>(std::ceil((hi - lo) / step));
  double prev_f = lo;
  bool prev_in = seen(prev_f);
  for (long k = 1; k <= n; ++k) {
    const double f = std::min(hi, lo + step * static_cast<double>(k));
    const bool in = seen(f);
    if (in) best = std::min(best, range(f));
    if (in != prev_in) {
      // Pin the footprint boundary between the two samples.
      double a = prev_f, b = f;
      for (int i = 0; i < 100 && b - a > 1e-12; ++i) {
        const double m = 0.5 * (a + b);
        (seen(m) == prev_in ? a : b) = m;
      }
      best = std::min(best, range(in ? b : a));
    }
    // Range has a single minimum at f = 0; a visible sample straddling it counts.
    if (in && prev_in && prev_f <= 0.0 && f >= 0.0) best = std::min(best, range(0.0));
    prev_f = f;
    prev_in = in;
  }
  return best;
}

std::vector<std::pair<std::size_t, double>> dense_sweep_ranges(const PathEdge& edge, const RewardContext& ctx,
                                                               double step) {
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  const BeliefGrid& grid = *ctx.grid;
  std::vector<double> best(grid.size(), std::numeric_limits<double>::infinity());
  const int n = edge.total_length > 0.0 ? std::max(1, static_cast<int>(std::ceil(edge.total_length / step))) : 0;
  for (int k = 0; k <= n; ++k) {
    const VehicleState pose = k == n ? edge.end : (k == 0 ? edge.start : pose_at(edge, edge.total_length * k / n));
    for (std::size_t cell : cells_in_footprint(footprint(pose, ctx.sensor), grid)) {
      const Point2 c = grid.cell_center(cell);
      const double r = std::sqrt((c.x - pose.x) * (c.x - pose.x) + (c.y - pose.y) * (c.y - pose.y) + pose.z * pose.z);
      best[cell] = std::min(best[cell], r);
    }
  }
  std::vector<std::pair<std::size_t, double>> out;
  for (std::size_t i = 0; i < best.size(); ++i) {
    if (best[i] <= ctx.sensor.beta) out.emplace_back(i, best[i]);
  }
  return out;
}

double dense_sweep_reward(const PathEdge& edge, const RewardContext& ctx, double step) {
  double total = 0.0;
  for (const auto& [cell, r] : dense_sweep_ranges(edge, ctx, step)) {
    total += cell_reward(ctx.grid->prob(cell), r, ctx.sensor, ctx.weights).reward;
  }
  return total;
}

}  // namespace tigris::oracle
