#include "tigris/information.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tigris {

void RewardWeights::validate() const {
  if (!(r_p >= 0.0 && r_n >= 0.0)) throw std::invalid_argument("reward weights must be non-negative");
  if (!(r_p > 0.0 || r_n > 0.0)) throw std::invalid_argument("at least one reward weight must be positive");
}

CellReward cell_reward(double p, double range, const SensorConfig& cfg, const RewardWeights& w) {
  if (range > cfg.beta) return {0.0, p};
  const double tpr = detection_rate(range, cfg);
  const double fpr = 1.0 - tpr;
  // Optimistic outcome: the measurement agrees with the current belief.
  const bool positive = p >= 0.5;
  const double posterior = bayes_update(p, tpr, fpr, positive);
  const double gain = std::max(0.0, entropy(p) - entropy(posterior));
  return {(positive ? w.r_p : w.r_n) * gain, posterior};
}

BeliefOverlay::BeliefOverlay(OverlayPtr parent, std::vector<Entry> touched)
    : parent_(std::move(parent)), touched_(std::move(touched)) {}

double BeliefOverlay::lookup(std::size_t cell, const BeliefGrid& prior) const {
  const auto key = static_cast<std::uint32_t>(cell);
  for (const BeliefOverlay* o = this; o != nullptr; o = o->parent_.get()) {
    const auto it = std::lower_bound(o->touched_.begin(), o->touched_.end(), key,
                                     [](const Entry& e, std::uint32_t k) { return e.first < k; });
    if (it != o->touched_.end() && it->first == key) return it->second;
  }
  return prior.prob(cell);
}

namespace {

using CellRange = std::pair<std::size_t, double>;

double current_prob(const OverlayPtr& overlay, std::size_t cell, const BeliefGrid& grid) {
  return overlay ? overlay->lookup(cell, grid) : grid.prob(cell);
}

void append_node_ranges(const VehicleState& state, const RewardContext& ctx,
                        std::vector<CellRange>& out) {
  const double beta = ctx.sensor.beta;
  if (beta <= state.z) return;
  const double ground_reach = std::sqrt(beta * beta - state.z * state.z);
  const FootprintPolygon poly = footprint(state, ctx.sensor);
  for (std::size_t cell : cells_in_footprint(poly, *ctx.grid, {state.x, state.y}, ground_reach)) {
    const Point2 c = ctx.grid->cell_center(cell);
    const double dx = c.x - state.x;
    const double dy = c.y - state.y;
    const double range = std::sqrt(dx * dx + dy * dy + state.z * state.z);
    if (range <= beta) out.emplace_back(cell, range);
  }
}

// Sweeps the footprint along the straight chord a -> b, altitude varying
// linearly, recording each visible cell's minimum slant range. The footprint
// scales with altitude, so visibility of a cell is an interval of stations.
void append_chord_ranges(const VehicleState& a, const VehicleState& b, const RewardContext& ctx,
                         std::vector<CellRange>& out) {
  const double beta = ctx.sensor.beta;
  const double z_lo = std::min(a.z, b.z);
  const double z_hi = std::max(a.z, b.z);
  if (beta <= z_lo) return;

  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len = std::hypot(dx, dy);
  const double ux = len > 1e-12 ? dx / len : std::cos(a.psi);
  const double uy = len > 1e-12 ? dy / len : std::sin(a.psi);
  const double slope = len > 1e-12 ? (b.z - a.z) / len : 0.0;  // dz per meter of chord

  const FootprintShape unit = footprint_shape(ctx.sensor, 1.0);
  const double flare = unit.flare();
  const double ground_reach = std::sqrt(beta * beta - z_lo * z_lo);
  const double fwd_min = std::max(std::min(unit.near_forward * z_lo, unit.near_forward * z_hi), -ground_reach);
  const double fwd_max = std::min(unit.far_forward * z_hi, ground_reach);
  const double lat_max = std::min(unit.far_half_width * z_hi, ground_reach);
  if (fwd_max < fwd_min) return;

  // World bounding box of the swept region in the chord frame.
  double min_x = a.x, max_x = a.x, min_y = a.y, max_y = a.y;
  for (double along : {fwd_min, len + fwd_max}) {
    for (double lat : {-lat_max, lat_max}) {
      const double wx = a.x + along * ux - lat * uy;
      const double wy = a.y + along * uy + lat * ux;
      min_x = std::min(min_x, wx);
      max_x = std::max(max_x, wx);
      min_y = std::min(min_y, wy);
      max_y = std::max(max_y, wy);
    }
  }
  const GridSpec& g = ctx.grid->spec();
  const auto lo_index = [&](double v, double origin, int n) {
    return static_cast<int>(
        std::clamp(std::ceil((v - origin) / g.cell_size - 0.5), 0.0, static_cast<double>(n)));
  };
  const auto hi_index = [&](double v, double origin, int n) {
    return static_cast<int>(
        std::clamp(std::floor((v - origin) / g.cell_size - 0.5), -1.0, static_cast<double>(n - 1)));
  };
  const int c0 = lo_index(min_x, g.origin.x, g.width);
  const int c1 = hi_index(max_x, g.origin.x, g.width);
  const int r0 = lo_index(min_y, g.origin.y, g.height);
  const int r1 = hi_index(max_y, g.origin.y, g.height);

  // Station s sees the cell when, with z(s) = a.z + slope * s and f = along - s,
  //   f >= nf z(s),  f <= ff z(s),  d <= nh z(s) + (f - nf z(s)) flare.
  // Each is linear in s: c0 + c1 s >= 0.
  const auto restrict = [](double k0, double k1, double& lo, double& hi) {
    if (std::fabs(k1) < 1e-15) {
      if (k0 < 0.0) hi = lo - 1.0;
    } else if (k1 > 0.0) {
      lo = std::max(lo, -k0 / k1);
    } else {
      hi = std::min(hi, -k0 / k1);
    }
  };
  const double nf = unit.near_forward;
  const double ff = unit.far_forward;
  const double nh = unit.near_half_width;

  for (int row = r0; row <= r1; ++row) {
    for (int col = c0; col <= c1; ++col) {
      const std::size_t cell = ctx.grid->index(col, row);
      const Point2 c = ctx.grid->cell_center(cell);
      const double rx = c.x - a.x;
      const double ry = c.y - a.y;
      const double along = rx * ux + ry * uy;
      const double lateral = std::fabs(-rx * uy + ry * ux);
      if (lateral > lat_max) continue;

      double s_lo = 0.0;
      double s_hi = len;
      restrict(along - nf * a.z, -1.0 - nf * slope, s_lo, s_hi);
      restrict(ff * a.z - along, ff * slope + 1.0, s_lo, s_hi);
      restrict(nh * a.z + (along - nf * a.z) * flare - lateral, nh * slope - (1.0 + nf * slope) * flare, s_lo,
               s_hi);
      if (s_lo > s_hi) continue;

      // Squared range (along - s)^2 + d^2 + z(s)^2 is convex in s.
      const double s_best = std::clamp((along - a.z * slope) / (1.0 + slope * slope), s_lo, s_hi);
      const double f = along - s_best;
      const double z = a.z + slope * s_best;
      const double range = std::sqrt(lateral * lateral + f * f + z * z);
      if (range <= beta) out.emplace_back(cell, range);
    }
  }
}

std::vector<CellRange> collapse_min(std::vector<CellRange> ranges) {
  std::sort(ranges.begin(), ranges.end());
  std::vector<CellRange> out;
  out.reserve(ranges.size());
  for (const CellRange& cr : ranges) {
    // Sorted by (cell, range): the first entry per cell is its minimum.
    if (out.empty() || out.back().first != cr.first) out.push_back(cr);
  }
  return out;
}

Observation observe(const std::vector<CellRange>& ranges, const OverlayPtr& overlay,
                    const RewardContext& ctx) {
  if (ranges.empty()) return {0.0, overlay};
  std::vector<BeliefOverlay::Entry> touched;
  touched.reserve(ranges.size());
  double total = 0.0;
  for (const auto& [cell, range] : ranges) {
    const double p = current_prob(overlay, cell, *ctx.grid);
    const CellReward cr = cell_reward(p, range, ctx.sensor, ctx.weights);
    total += cr.reward;
    touched.emplace_back(static_cast<std::uint32_t>(cell), cr.posterior);
  }
  return {total, std::make_shared<const BeliefOverlay>(overlay, std::move(touched))};
}

bool poses_match(const VehicleState& a, const VehicleState& b) {
  constexpr double kTol = 1e-6;
  const double dpsi = std::fabs(wrap_two_pi(a.psi - b.psi));
  return std::fabs(a.x - b.x) <= kTol && std::fabs(a.y - b.y) <= kTol &&
         std::fabs(a.z - b.z) <= kTol && std::min(dpsi, kTwoPi - dpsi) <= kTol;
}

}  // namespace

std::vector<std::pair<std::size_t, double>> edge_min_ranges(const PathEdge& edge,
                                                             const RewardContext& ctx) {
  std::vector<CellRange> ranges;
  if (edge.total_length <= 0.0) {
    append_node_ranges(edge.start, ctx, ranges);
    return collapse_min(std::move(ranges));
  }
  const int chords = std::max(1, static_cast<int>(std::ceil(edge.total_length / ctx.max_chord)));
  VehicleState prev = edge.start;
  for (int k = 1; k <= chords; ++k) {
    const VehicleState next =
        k == chords ? edge.end : pose_at(edge, edge.total_length * k / chords);
    append_chord_ranges(prev, next, ctx, ranges);
    prev = next;
  }
  // The terminal pose is observed exactly rather than through its chord.
  append_node_ranges(edge.end, ctx, ranges);
  return collapse_min(std::move(ranges));
}

Observation node_reward(const VehicleState& state, const OverlayPtr& overlay,
                        const RewardContext& ctx) {
  std::vector<CellRange> ranges;
  append_node_ranges(state, ctx, ranges);
  return observe(collapse_min(std::move(ranges)), overlay, ctx);
}

Observation edge_reward(const PathEdge& edge, const OverlayPtr& overlay, const RewardContext& ctx) {
  if (edge.total_length <= 0.0) return node_reward(edge.start, overlay, ctx);
  return observe(edge_min_ranges(edge, ctx), overlay, ctx);
}

double trajectory_reward(const VehicleState& start, std::span<const PathEdge> edges,
                         const RewardContext& ctx) {
  VehicleState at = start;
  for (const PathEdge& e : edges) {
    if (!poses_match(at, e.start)) throw std::invalid_argument("path edges are not contiguous");
    at = e.end;
  }
  Observation obs = node_reward(start, nullptr, ctx);
  double total = obs.reward;
  for (const PathEdge& e : edges) {
    obs = edge_reward(e, obs.overlay, ctx);
    total += obs.reward;
  }
  return total;
}

std::vector<double> view_rewards(const BeliefGrid& grid, const SensorConfig& cfg,
                                 const RewardWeights& w, AltitudeRange z_range) {
  const double preferred_range =
      z_range.mid() / std::cos(cfg.pitch - cfg.v_opt * 0.5 * cfg.vfov);
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out[i] = cell_reward(grid.prob(i), preferred_range, cfg, w).reward;
  }
  return out;
}

}  // namespace tigris
