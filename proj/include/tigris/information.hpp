#pragma once

// Entropy-reduction rewards under the optimistic measurement assumption,
// threaded through a chain of immutable belief overlays.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "tigris/belief.hpp"
#include "tigris/dubins.hpp"
#include "tigris/sensor.hpp"

namespace tigris {

struct RewardWeights {
  double r_p = 1.0;  // weight for raising a cell's probability
  double r_n = 0.2;  // weight for lowering it

  void validate() const;
};

struct CellReward {
  double reward = 0.0;
  double posterior = 0.0;
};

CellReward cell_reward(double p, double range, const SensorConfig& cfg, const RewardWeights& w);

class BeliefOverlay;
using OverlayPtr = std::shared_ptr<const BeliefOverlay>;

/// Posterior probabilities written by one step along a tree branch. Cells
/// not written here resolve through the parent chain and finally the prior.
class BeliefOverlay {
 public:
  using Entry = std::pair<std::uint32_t, double>;

  /// `touched` must be sorted by cell index with no duplicates.
  BeliefOverlay(OverlayPtr parent, std::vector<Entry> touched);

  [[nodiscard]] double lookup(std::size_t cell, const BeliefGrid& prior) const;
  [[nodiscard]] const OverlayPtr& parent() const { return parent_; }
  [[nodiscard]] std::span<const Entry> touched() const { return touched_; }

 private:
  OverlayPtr parent_;
  std::vector<Entry> touched_;
};

/// Everything a reward evaluation reads. All referenced objects must
/// outlive the context.
struct RewardContext {
  const BeliefGrid* grid = nullptr;
  SensorConfig sensor;
  RewardWeights weights;
  double max_chord = 25.0;  // meters; edges are swept as chords no longer than this
};

struct Observation {
  double reward = 0.0;
  OverlayPtr overlay;
};

/// Reward of one snapshot from `state`. Returns the input overlay unchanged
/// when no cell is informatively observed.
Observation node_reward(const VehicleState& state, const OverlayPtr& overlay,
                        const RewardContext& ctx);

/// Reward of sweeping the footprint along `edge`, including its terminal
/// pose. Each swept cell is updated once, at its minimum range.
Observation edge_reward(const PathEdge& edge, const OverlayPtr& overlay, const RewardContext& ctx);

/// Swept cells of an edge with their minimum observation range, sorted by
/// cell index. Only cells within beta are reported.
std::vector<std::pair<std::size_t, double>> edge_min_ranges(const PathEdge& edge,
                                                             const RewardContext& ctx);

/// Node reward at `start` followed by edge rewards along a contiguous path.
/// Throws std::invalid_argument if the edges do not chain (1e-6 tolerance).
double trajectory_reward(const VehicleState& start, std::span<const PathEdge> edges,
                         const RewardContext& ctx);

/// Per-cell reward of viewing each cell from the sampler's preferred range,
/// used as the informed-sampling weight and for rendering.
std::vector<double> view_rewards(const BeliefGrid& grid, const SensorConfig& cfg,
                                 const RewardWeights& w, AltitudeRange z_range);

}  // namespace tigris
