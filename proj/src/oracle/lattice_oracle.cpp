#include "tigris/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace tigris::oracle {

Scenario toy_world() {
  Scenario s;
  s.width_m = 100.0;
  s.height_m = 100.0;
  s.cell_size = 10.0;
  s.background = 0.1;
  s.centroids = {{{30.0, 70.0}, 0.9, 12.0}, {{75.0, 35.0}, 0.7, 10.0}, {{70.0, 80.0}, 0.5, 8.0}};
  s.sensor.b = 0.5;
  s.sensor.c = 25.0;
  s.sensor.beta = 25.0;
  s.planner.budget = 40.0;
  s.planner.extend = 10.0;
  s.planner.near_radius = 10.0;
  s.planner.turn_radius = 2.0;
  s.planner.altitude = {10.0, 10.0};
  s.planner.max_iterations = 100000;
  s.planner.max_nodes = 1000000;
  s.planner.prune = false;
  s.start = VehicleState(50.0, 50.0, 10.0, 0.0);
  return s;
}

namespace {

struct LatticeEdge {
  std::size_t to;
  double length;
  std::vector<std::pair<std::size_t, double>> ranges;
};

class Search {
 public:
  Search(const Scenario& s, const LatticeConfig& cfg, const BeliefGrid& grid)
      : s_(s), cfg_(cfg), ctx_{&grid, s.sensor, s.weights}, ws_(Workspace::of(grid, s.zones)) {
    nx_ = static_cast<int>(std::floor(s.width_m / cfg.spacing + 1e-9)) + 1;
    ny_ = static_cast<int>(std::floor(s.height_m / cfg.spacing + 1e-9)) + 1;
    prob_.assign(grid.probs().begin(), grid.probs().end());
  }

  LatticeResult run() {
    LatticeResult res;
    const Observation root = node_reward(s_.start, nullptr, ctx_);
    for (const auto& e : root.overlay ? root.overlay->touched() : std::span<const BeliefOverlay::Entry>{}) {
      prob_[e.first] = e.second;
    }
    best_ = {root.reward, 0.0, {s_.start}};
    path_ = {s_.start};
    start_edges_ = successors_of(s_.start);
    dfs(start_edges_, root.reward, 0.0, 0, res);
    res.best_info = best_.info;
    res.best_cost = best_.cost;
    res.best_states = best_.states;
    res.lattice_edges = edge_count_;
    return res;
  }

 private:
  struct Best {
    double info;
    double cost;
    std::vector<VehicleState> states;
  };

  VehicleState state_of(std::size_t id) const {
    const auto h = static_cast<int>(id % cfg_.headings);
    const auto cell = id / cfg_.headings;
    const auto ix = static_cast<int>(cell % nx_);
    const auto iy = static_cast<int>(cell / nx_);
    return VehicleState(ix * cfg_.spacing, iy * cfg_.spacing, s_.start.z, kTwoPi * h / cfg_.headings);
  }

  bool collision_free(const PathEdge& e) const {
    const int checks = std::max(1, static_cast<int>(std::ceil(e.total_length / kCollisionSpacing)));
    for (int k = 0; k <= checks; ++k) {
      if (!ws_.free(pose_at(e, e.total_length * k / checks))) return false;
    }
    return true;
  }

  std::vector<LatticeEdge> successors_of(const VehicleState& from) {
    std::vector<LatticeEdge> out;
    const double reach = s_.planner.extend;
    const int x0 = std::max(0, static_cast<int>(std::floor((from.x - reach) / cfg_.spacing)));
    const int x1 = std::min(nx_ - 1, static_cast<int>(std::ceil((from.x + reach) / cfg_.spacing)));
    const int y0 = std::max(0, static_cast<int>(std::floor((from.y - reach) / cfg_.spacing)));
    const int y1 = std::min(ny_ - 1, static_cast<int>(std::ceil((from.y + reach) / cfg_.spacing)));
    for (int iy = y0; iy <= y1; ++iy) {
      for (int ix = x0; ix <= x1; ++ix) {
        for (int h = 0; h < cfg_.headings; ++h) {
          const std::size_t id = (static_cast<std::size_t>(iy) * nx_ + ix) * cfg_.headings + h;
          const VehicleState to = state_of(id);
          if (std::hypot(to.x - from.x, to.y - from.y) > reach) continue;
          const PathEdge e = connect(from, to, s_.planner.turn_radius);
          if (e.total_length < kMinExtension || e.total_length > reach + 1e-9) continue;
          if (!collision_free(e)) continue;
          out.push_back({id, e.total_length, edge_min_ranges(e, ctx_)});
        }
      }
    }
    edge_count_ += out.size();
    return out;
  }

  const std::vector<LatticeEdge>& successors(std::size_t id) {
    auto it = cache_.find(id);
    if (it == cache_.end()) it = cache_.emplace(id, successors_of(state_of(id))).first;
    return it->second;
  }

  void dfs(const std::vector<LatticeEdge>& edges, double info, double cost, int depth, LatticeResult& res) {
    if (depth >= cfg_.max_edges) return;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const LatticeEdge& e = edges[i];
      if (cost + e.length > s_.planner.budget + 1e-9) continue;
      const std::size_t mark = undo_.size();
      double gained = 0.0;
      for (const auto& [cell, r] : e.ranges) {
        const CellReward cr = cell_reward(prob_[cell], r, s_.sensor, s_.weights);
        gained += cr.reward;
        undo_.emplace_back(cell, prob_[cell]);
        prob_[cell] = cr.posterior;
      }
      ++res.paths;
      const std::size_t to = e.to;
      const double next_info = info + gained;
      const double next_cost = cost + e.length;
      path_.push_back(state_of(to));
      if (next_info > best_.info || (next_info == best_.info && next_cost < best_.cost)) {
        best_ = {next_info, next_cost, path_};
      }
      dfs(successors(to), next_info, next_cost, depth + 1, res);
      path_.pop_back();
      while (undo_.size() > mark) {
        prob_[undo_.back().first] = undo_.back().second;
        undo_.pop_back();
      }
    }
  }

  const Scenario& s_;
  LatticeConfig cfg_;
  RewardContext ctx_;
  Workspace ws_;
  int nx_ = 0;
  int ny_ = 0;
  std::vector<double> prob_;
  std::vector<std::pair<std::size_t, double>> undo_;
  std::vector<VehicleState> path_;
  std::vector<LatticeEdge> start_edges_;
  std::unordered_map<std::size_t, std::vector<LatticeEdge>> cache_;
  std::size_t edge_count_ = 0;
  Best best_{};
};

}  // namespace

LatticeResult lattice_optimum(const Scenario& scenario, const LatticeConfig& cfg) {
  if (!(cfg.spacing > 0.0) || cfg.headings < 1 || cfg.max_edges < 0) {
    throw std::invalid_argument("invalid lattice configuration");
  }
  scenario.validate();
  const BeliefGrid grid = scenario.build_belief();
  Search search(scenario, cfg, grid);
  LatticeResult res = search.run();
  // Rescore the winner through the public path reward.
  std::vector<PathEdge> edges;
  for (std::size_t i = 1; i < res.best_states.size(); ++i) {
    edges.push_back(connect(res.best_states[i - 1], res.best_states[i], scenario.planner.turn_radius));
  }
  res.best_info = trajectory_reward(scenario.start, edges, RewardContext{&grid, scenario.sensor, scenario.weights});
  return res;
}

}  // namespace tigris::oracle
