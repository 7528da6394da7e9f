#include "tigris/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <variant>

namespace tigris {

namespace {

constexpr double kClosedTolerance = 1e-6;

}  // namespace

void PlannerConfig::validate() const {
  const auto fail = [](const char* what) { throw std::invalid_argument(what); };
  if (!(budget >= 0.0)) fail("budget must be non-negative");
  if (!iteration_bounded() && !(planning_time > 0.0)) fail("planning_time must be positive");
  if (!(extend > 0.0)) fail("extend distance must be positive");
  if (!(near_radius >= extend)) fail("near_radius must be >= extend distance");
  if (!(turn_radius > 0.0)) fail("turn_radius must be positive");
  altitude.validate();
}

PlanTree::PlanTree(TreeNode root, double budget) : budget_(budget) {
  root.parent.reset();
  root.edge.reset();
  root.cost = 0.0;
  insert(std::move(root));
}

bool PlanTree::better(const TreeNode& a, const TreeNode& b) const {
  if (a.info != b.info) return a.info > b.info;
  if (a.cost != b.cost) return a.cost < b.cost;
  return a.id < b.id;
}

std::size_t PlanTree::insert(TreeNode node) {
  if (node.cost > budget_ + kClosedTolerance) throw std::logic_error("node exceeds budget");
  node.closed = budget_ - node.cost <= kClosedTolerance;
  if (node.closed) node.cost = budget_;
  node.id = nodes_.size();
  all_.insert(key(node.state), node.id);
  if (!node.closed) open_.insert(key(node.state), node.id);
  nodes_.push_back(std::move(node));
  const TreeNode& added = nodes_.back();
  if (better(added, nodes_[best_])) best_ = added.id;
  return added.id;
}

std::optional<std::size_t> PlanTree::nearest_open(const VehicleState& s) const {
  return open_.nearest(key(s));
}

std::vector<std::size_t> PlanTree::near_open(const VehicleState& s, double radius) const {
  return open_.within(key(s), radius);
}

bool PlanTree::dominated(const TreeNode& candidate, double radius) const {
  return all_.any_within(key(candidate.state), radius, [&](std::size_t id) {
    const TreeNode& n = nodes_[id];
    return n.cost <= candidate.cost && n.info >= candidate.info &&
           (n.cost < candidate.cost || n.info > candidate.info);
  });
}

bool prune(const TreeNode& candidate, const PlanTree& tree, double radius) {
  return tree.dominated(candidate, radius);
}

bool Workspace::free(const VehicleState& s) const {
  if (s.x < min.x || s.y < min.y || s.x > max.x || s.y > max.y) return false;
  const Point2 p{s.x, s.y};
  return std::none_of(zones.begin(), zones.end(), [&](const NoFlyZone& z) { return z.contains(p); });
}

Workspace Workspace::of(const BeliefGrid& grid, std::vector<NoFlyZone> zones) {
  const GridSpec& g = grid.spec();
  return Workspace{g.origin, {g.origin.x + g.extent_x(), g.origin.y + g.extent_y()}, std::move(zones)};
}

std::optional<PathEdge> steer(const TreeNode& from, const VehicleState& to,
                              const PlannerConfig& cfg, const Workspace& ws) {
  const double remaining = cfg.budget - from.cost;
  if (from.closed || remaining <= 0.0) return std::nullopt;

  const PathEdge full = connect(from.state, to, cfg.turn_radius);
  double length = std::min({full.total_length, cfg.extend, remaining});

  const int checks = static_cast<int>(std::ceil(length / kCollisionSpacing));
  for (int k = 1; k <= checks; ++k) {
    const double s = length * k / checks;
    if (!ws.free(pose_at(full, s))) {
      length = std::max(0.0, s - kCollisionSpacing);
      break;
    }
  }
  if (length < kMinExtension) return std::nullopt;
  return length < full.total_length ? truncate(full, length) : full;
}

PlanResult extract_best(const PlanTree& tree) {
  std::vector<std::size_t> chain;
  for (std::optional<std::size_t> at = tree.best_id(); at; at = tree.node(*at).parent) {
    chain.push_back(*at);
  }
  std::reverse(chain.begin(), chain.end());

  PlanResult r;
  for (std::size_t id : chain) {
    const TreeNode& n = tree.node(id);
    r.states.push_back(n.state);
    r.cumulative_cost.push_back(n.cost);
    r.cumulative_info.push_back(n.info);
    if (n.edge) r.edges.push_back(*n.edge);
  }
  const TreeNode& best = tree.node(tree.best_id());
  r.cost = best.cost;
  r.tree_info = best.info;
  r.info = best.info;
  r.node_count = tree.size();
  return r;
}

namespace {

class UniformSampler {
 public:
  UniformSampler(const Workspace& ws, AltitudeRange alt) : ws_(ws), alt_(alt) {}
  VehicleState sample(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> x(ws_.min.x, ws_.max.x);
    std::uniform_real_distribution<double> y(ws_.min.y, ws_.max.y);
    std::uniform_real_distribution<double> z(alt_.lo, alt_.hi);
    std::uniform_real_distribution<double> psi(0.0, kTwoPi);
    const double sx = x(rng);
    const double sy = y(rng);
    const double sz = z(rng);
    return VehicleState(sx, sy, sz, psi(rng));
  }

 private:
  Workspace ws_;
  AltitudeRange alt_;
};

using Sampler = std::variant<InformedSampler, UniformSampler>;

Sampler make_sampler(const PlanProblem& p, const Workspace& ws) {
  if (p.config.sampler == SamplerKind::Informed) {
    try {
      return InformedSampler(*p.grid, view_rewards(*p.grid, p.sensor, p.weights, p.config.altitude),
                             p.sensor, p.config.altitude);
    } catch (const SamplingError&) {
      // Nothing worth viewing anywhere: explore uniformly instead.
    }
  }
  return UniformSampler(ws, p.config.altitude);
}

}  // namespace

PlanResult plan(const PlanProblem& problem, const NodeObserver& observer) {
  if (problem.grid == nullptr) throw std::invalid_argument("plan requires a belief grid");
  const PlannerConfig& cfg = problem.config;
  cfg.validate();
  problem.sensor.validate();
  problem.weights.validate();
  for (const NoFlyZone& z : problem.zones) z.validate();

  const Workspace ws = Workspace::of(*problem.grid, problem.zones);
  if (!ws.free(problem.start)) throw InputError("start state is outside the map or inside a no-fly zone");

  const RewardContext ctx{problem.grid, problem.sensor, problem.weights};
  const auto clock_start = std::chrono::steady_clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
  };

  std::mt19937_64 rng(cfg.seed);
  const Sampler sampler = make_sampler(problem, ws);

  TreeNode root;
  root.state = problem.start;
  const Observation root_obs = node_reward(problem.start, nullptr, ctx);
  root.info = root_obs.reward;
  root.overlay = root_obs.overlay;
  PlanTree tree(std::move(root), cfg.budget);
  if (observer) observer(tree.node(0));

  std::vector<CurvePoint> curve;
  const auto record_best = [&](std::uint64_t iteration) {
    const TreeNode& best = tree.node(tree.best_id());
    CurvePoint pt{iteration, cfg.iteration_bounded() ? 0.0 : elapsed(), best.info, best.info};
    if (!cfg.edge_rewards) {
      const PlanResult path = extract_best(tree);
      pt.path_info = trajectory_reward(problem.start, path.edges, ctx);
    }
    curve.push_back(pt);
  };
  record_best(0);

  const auto full = [&] { return cfg.max_nodes > 0 && tree.size() >= cfg.max_nodes; };
  std::uint64_t iteration = 0;
  while (!full() && (cfg.iteration_bounded() ? iteration < cfg.max_iterations : elapsed() < cfg.planning_time)) {
    ++iteration;
    const VehicleState sample = std::visit([&](const auto& s) { return s.sample(rng); }, sampler);

    const auto nearest = tree.nearest_open(sample);
    if (!nearest) break;  // every node has exhausted the budget
    const auto reach = steer(tree.node(*nearest), sample, cfg, ws);
    if (!reach) continue;
    const VehicleState feasible = reach->end;

    const std::size_t best_before = tree.best_id();
    for (std::size_t near_id : tree.near_open(feasible, cfg.near_radius)) {
      const TreeNode& near = tree.node(near_id);
      auto edge = steer(near, feasible, cfg, ws);
      if (!edge) continue;

      const Observation obs = cfg.edge_rewards ? edge_reward(*edge, near.overlay, ctx)
                                               : node_reward(edge->end, near.overlay, ctx);
      TreeNode candidate;
      candidate.state = edge->end;
      candidate.cost = std::min(cfg.budget, near.cost + edge->total_length);
      candidate.info = near.info + obs.reward;
      candidate.parent = near_id;
      candidate.overlay = obs.overlay;
      candidate.edge = std::move(*edge);

      if (cfg.prune && prune(candidate, tree, cfg.near_radius)) continue;
      if (full()) break;
      const std::size_t id = tree.insert(std::move(candidate));
      if (observer) observer(tree.node(id));
    }
    if (tree.best_id() != best_before) record_best(iteration);
  }

  PlanResult result = extract_best(tree);
  result.info = trajectory_reward(problem.start, result.edges, ctx);
  result.iterations = iteration;
  result.time_bounded = !cfg.iteration_bounded();
  result.curve = std::move(curve);
  result.planner = "custom";
  return result;
}

PlanResult tigris_plan(PlanProblem problem, const NodeObserver& observer) {
  problem.config.sampler = SamplerKind::Informed;
  problem.config.edge_rewards = true;
  PlanResult r = plan(problem, observer);
  r.planner = "tigris";
  return r;
}

PlanResult rig_plan(PlanProblem problem, const NodeObserver& observer) {
  problem.config.sampler = SamplerKind::Uniform;
  problem.config.edge_rewards = false;
  PlanResult r = plan(problem, observer);
  r.planner = "rig";
  return r;
}

}  // namespace tigris
