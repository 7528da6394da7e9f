#pragma once

// Anytime informative tree search under a path-length budget. The informed
// planner samples states in proportion to expected view reward and credits
// information gathered along edges; the baseline samples uniformly and
// credits nodes only.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tigris/belief.hpp"
#include "tigris/dubins.hpp"
#include "tigris/information.hpp"
#include "tigris/polygon.hpp"
#include "tigris/sensor.hpp"
#include "tigris/spatial_index.hpp"

namespace tigris {

enum class SamplerKind : std::uint8_t { Informed, Uniform };

struct PlannerConfig {
  double budget = 3000.0;         // B, meters
  double planning_time = 5.0;     // T, seconds; used when max_iterations == 0
  std::uint64_t max_iterations = 4000;
  std::size_t max_nodes = 0;      // stop once the tree holds this many nodes; 0 = no cap
  double extend = 400.0;          // Delta, meters
  double near_radius = 800.0;     // meters
  double turn_radius = 60.0;      // meters
  SamplerKind sampler = SamplerKind::Informed;
  bool edge_rewards = true;
  bool prune = true;
  std::uint64_t seed = 0;
  AltitudeRange altitude;

  void validate() const;
  [[nodiscard]] bool iteration_bounded() const { return max_iterations > 0; }
};

/// Raised for inputs the planner cannot start from (e.g. start in a zone).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TreeNode {
  std::size_t id = 0;
  VehicleState state;
  double cost = 0.0;  // C
  double info = 0.0;  // I
  std::optional<std::size_t> parent;
  std::optional<PathEdge> edge;  // incoming
  OverlayPtr overlay;
  bool closed = false;
};

/// Append-only search tree with spatial indices over open and all nodes.
class PlanTree {
 public:
  PlanTree(TreeNode root, double budget);

  std::size_t insert(TreeNode node);

  [[nodiscard]] const TreeNode& node(std::size_t id) const { return nodes_[id]; }
  [[nodiscard]] const std::vector<TreeNode>& nodes() const { return nodes_; }
  [[nodiscard]] std::size_t size() const { return nodes_.size(); }
  [[nodiscard]] std::size_t best_id() const { return best_; }
  [[nodiscard]] double budget() const { return budget_; }

  [[nodiscard]] std::optional<std::size_t> nearest_open(const VehicleState& s) const;
  [[nodiscard]] std::vector<std::size_t> near_open(const VehicleState& s, double radius) const;
  /// True if some node within radius has cost <= and info >= the candidate,
  /// with at least one strict.
  [[nodiscard]] bool dominated(const TreeNode& candidate, double radius) const;

 private:
  static KdTree3::Point key(const VehicleState& s) { return {s.x, s.y, s.z}; }
  bool better(const TreeNode& a, const TreeNode& b) const;

  std::vector<TreeNode> nodes_;
  KdTree3 open_;
  KdTree3 all_;
  std::size_t best_ = 0;
  double budget_;
};

bool prune(const TreeNode& candidate, const PlanTree& tree, double radius);

/// Map boundary and obstacles a steered edge must avoid.
struct Workspace {
  Point2 min;
  Point2 max;
  std::vector<NoFlyZone> zones;

  [[nodiscard]] bool free(const VehicleState& s) const;
  static Workspace of(const BeliefGrid& grid, std::vector<NoFlyZone> zones = {});
};

inline constexpr double kCollisionSpacing = 5.0;   // meters between collision checks
inline constexpr double kMinExtension = 1.0;       // meters

/// Dubins edge from `from` toward `to`, truncated to the extend distance,
/// the remaining budget, and the collision-free prefix. nullopt if shorter
/// than kMinExtension.
std::optional<PathEdge> steer(const TreeNode& from, const VehicleState& to,
                              const PlannerConfig& cfg, const Workspace& ws);

struct CurvePoint {
  std::uint64_t iteration = 0;
  double seconds = 0.0;
  double tree_info = 0.0;  // planner's own estimate for the best node
  double path_info = 0.0;  // full trajectory reward of that node's path
};

struct PlanResult {
  std::string planner;
  std::vector<VehicleState> states;
  std::vector<PathEdge> edges;
  std::vector<double> cumulative_cost;  // per state
  std::vector<double> cumulative_info;  // per state, tree estimate
  double info = 0.0;       // full trajectory reward of the returned path
  double tree_info = 0.0;  // planner's estimate for the returned path
  double cost = 0.0;
  std::size_t node_count = 0;
  std::uint64_t iterations = 0;
  bool time_bounded = false;
  std::vector<CurvePoint> curve;  // one point per improvement of the best node
};

/// Path from the root to the tree's best node.
PlanResult extract_best(const PlanTree& tree);

struct PlanProblem {
  VehicleState start;
  const BeliefGrid* grid = nullptr;
  SensorConfig sensor;
  RewardWeights weights;
  PlannerConfig config;
  std::vector<NoFlyZone> zones;
};

/// Called for every node inserted into the tree, root included.
using NodeObserver = std::function<void(const TreeNode&)>;

/// Runs the tree search with the sampler and reward mode in problem.config.
/// Throws InputError if the start is outside the map or inside a zone.
PlanResult plan(const PlanProblem& problem, const NodeObserver& observer = {});

/// Informed sampling with edge rewards.
PlanResult tigris_plan(PlanProblem problem, const NodeObserver& observer = {});
/// Uniform sampling with node-only rewards; the reported info is re-evaluated
/// with the full trajectory reward.
PlanResult rig_plan(PlanProblem problem, const NodeObserver& observer = {});

}  // namespace tigris
