#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tigris/planner.hpp"
#include "tigris/scenario.hpp"

using namespace tigris;

namespace {

BeliefGrid grid_with_blobs() {
  GridSpec g;
  g.width = 30;
  g.height = 30;
  g.cell_size = 50.0;
  const std::vector<GaussianCentroid> c{{{400, 1100}, 0.85, 150}, {{1100, 400}, 0.7, 200}};
  return build_prior(g, c, 0.1);
}

PlanProblem small_problem(const BeliefGrid& grid) {
  PlanProblem p;
  p.grid = &grid;
  p.start = {750, 750, 100, 0};
  p.config.budget = 1500;
  p.config.extend = 200;
  p.config.near_radius = 400;
  p.config.max_iterations = 150;
  p.config.seed = 5;
  return p;
}

TreeNode make_node(VehicleState s, double cost, double info, std::optional<std::size_t> parent) {
  TreeNode n;
  n.state = s;
  n.cost = cost;
  n.info = info;
  n.parent = parent;
  return n;
}

}  // namespace

TEST_CASE("steer") {
  const BeliefGrid grid = grid_with_blobs();
  const Workspace ws = Workspace::of(grid);
  PlannerConfig cfg;
  cfg.budget = 1000;
  cfg.extend = 400;

  SUBCASE("budget truncation closes the node") {
    const TreeNode from = make_node({100, 100, 100, 0}, cfg.budget - 10, 0, std::nullopt);
    const auto e = steer(from, {600, 100, 100, 0}, cfg, ws);
    REQUIRE(e);
    CHECK(e->total_length == doctest::Approx(10.0).epsilon(1e-9));
    PlanTree tree(make_node({0, 0, 100, 0}, 0, 0, std::nullopt), cfg.budget);
    const std::size_t id = tree.insert(make_node(e->end, from.cost + e->total_length, 1, 0));
    CHECK(tree.node(id).closed);
    CHECK(tree.node(id).cost == cfg.budget);
    CHECK(tree.nearest_open({0, 0, 100, 0}) == std::optional<std::size_t>(0));
  }
  SUBCASE("reachable target is hit exactly") {
    const TreeNode from = make_node({100, 100, 100, 0}, 0, 0, std::nullopt);
    const VehicleState target{300, 150, 110, 0.3};
    const auto e = steer(from, target, cfg, ws);
    REQUIRE(e);
    CHECK(e->end.x == doctest::Approx(target.x));
    CHECK(e->end.y == doctest::Approx(target.y));
    CHECK(e->end.z == doctest::Approx(target.z));
  }
  SUBCASE("extension is capped") {
    const TreeNode from = make_node({100, 100, 100, 0}, 0, 0, std::nullopt);
    const auto e = steer(from, {1400, 100, 100, 0}, cfg, ws);
    REQUIRE(e);
    CHECK(e->total_length == doctest::Approx(cfg.extend));
  }
  SUBCASE("closed or exhausted nodes do not extend") {
    TreeNode from = make_node({100, 100, 100, 0}, cfg.budget, 0, std::nullopt);
    CHECK(!steer(from, {300, 100, 100, 0}, cfg, ws));
    from.cost = 0;
    from.closed = true;
    CHECK(!steer(from, {300, 100, 100, 0}, cfg, ws));
  }
  SUBCASE("no-fly zone across the track") {
    NoFlyZone zone{{{300, 0}, {340, 0}, {340, 300}, {300, 300}}};
    const Workspace blocked = Workspace::of(grid, {zone});
    const TreeNode from = make_node({100, 100, 100, 0}, 0, 0, std::nullopt);
    const auto e = steer(from, {480, 100, 100, 0}, cfg, blocked);
    REQUIRE(e);
    CHECK(e->total_length < 200.0);
    CHECK(e->total_length > 190.0);
    for (double s = 0.0; s <= e->total_length; s += 0.05) {
      const VehicleState p = pose_at(*e, s);
      REQUIRE(!zone.contains({p.x, p.y}));
    }
  }
  SUBCASE("map boundary") {
    const TreeNode from = make_node({1400, 100, 100, 0}, 0, 0, std::nullopt);
    const auto e = steer(from, {1800, 100, 100, 0}, cfg, ws);
    REQUIRE(e);
    CHECK(e->end.x <= 1500.0);
  }
}

TEST_CASE("pruning") {
  PlanTree tree(make_node({0, 0, 100, 0}, 0, 0, std::nullopt), 1000);
  TreeNode candidate = make_node({500, 500, 100, 0}, 100, 5, 0);
  CHECK(!prune(candidate, tree, 50));

  tree.insert(make_node({500, 500, 100, 0}, 80, 7, 0));
  CHECK(prune(candidate, tree, 50));

  candidate.info = 9;
  CHECK(!prune(candidate, tree, 50));

  candidate.state = {800, 800, 100, 0};
  candidate.info = 1;
  CHECK(!prune(candidate, tree, 50));
}

TEST_CASE("best path extraction") {
  SUBCASE("root only") {
    PlanTree tree(make_node({0, 0, 100, 0}, 0, 2, std::nullopt), 1000);
    const PlanResult r = extract_best(tree);
    CHECK(r.states.size() == 1);
    CHECK(r.cost == 0.0);
    CHECK(r.edges.empty());
  }
  SUBCASE("chain returns the leaf") {
    PlanTree tree(make_node({0, 0, 100, 0}, 0, 1, std::nullopt), 1000);
    tree.insert(make_node({100, 0, 100, 0}, 100, 2, 0));
    tree.insert(make_node({200, 0, 100, 0}, 200, 5, 1));
    const PlanResult r = extract_best(tree);
    CHECK(r.states.size() == 3);
    CHECK(r.tree_info == 5);
    CHECK(r.cumulative_info == std::vector<double>{1, 2, 5});
  }
  SUBCASE("equal info prefers the cheaper leaf") {
    PlanTree tree(make_node({0, 0, 100, 0}, 0, 1, std::nullopt), 1000);
    tree.insert(make_node({100, 0, 100, 0}, 100, 4, 0));
    tree.insert(make_node({0, 90, 100, 0}, 90, 4, 0));
    const PlanResult r = extract_best(tree);
    CHECK(r.cost == 90);
  }
}

TEST_CASE("planning") {
  const BeliefGrid grid = grid_with_blobs();

  SUBCASE("zero budget returns the root") {
    PlanProblem p = small_problem(grid);
    p.config.budget = 0;
    const RewardContext ctx{&grid, p.sensor, p.weights};
    const PlanResult a = tigris_plan(p);
    const PlanResult b = rig_plan(p);
    CHECK(a.states.size() == 1);
    CHECK(a.info == doctest::Approx(node_reward(p.start, nullptr, ctx).reward));
    CHECK(serialize_result(a).size() > 0);
    CHECK(b.states.size() == 1);
    CHECK(b.info == a.info);
  }
  SUBCASE("every node respects the budget") {
    const PlanProblem p = small_problem(grid);
    double worst = 0;
    std::size_t seen = 0;
    const auto watch = [&](const TreeNode& n) {
      worst = std::max(worst, n.cost);
      ++seen;
    };
    const PlanResult a = tigris_plan(p, watch);
    CHECK(seen == a.node_count);
    const PlanResult b = rig_plan(p, watch);
    CHECK(worst <= p.config.budget);
    CHECK(a.cost <= p.config.budget);
    CHECK(b.cost <= p.config.budget);
  }
  SUBCASE("returned path is contiguous and its info is re-evaluated") {
    const PlanProblem p = small_problem(grid);
    const RewardContext ctx{&grid, p.sensor, p.weights};
    for (const PlanResult& r : {tigris_plan(p), rig_plan(p)}) {
      REQUIRE(r.states.size() == r.edges.size() + 1);
      double length = 0;
      for (const PathEdge& e : r.edges) length += e.total_length;
      CHECK(length == doctest::Approx(r.cost));
      CHECK(r.info == doctest::Approx(trajectory_reward(p.start, r.edges, ctx)));
    }
  }
  SUBCASE("informed planner's own estimate is the trajectory reward") {
    const PlanResult r = tigris_plan(small_problem(grid));
    CHECK(r.tree_info == doctest::Approx(r.info).epsilon(1e-9));
    for (std::size_t i = 1; i < r.curve.size(); ++i) CHECK(r.curve[i].tree_info >= r.curve[i - 1].tree_info);
  }
  SUBCASE("deterministic for a fixed seed") {
    const PlanProblem p = small_problem(grid);
    CHECK(serialize_result(tigris_plan(p)) == serialize_result(tigris_plan(p)));
    CHECK(serialize_result(rig_plan(p)) == serialize_result(rig_plan(p)));
  }
  SUBCASE("node cap") {
    PlanProblem p = small_problem(grid);
    p.config.max_nodes = 25;
    CHECK(tigris_plan(p).node_count <= 25);
  }
  SUBCASE("falls back to uniform sampling when nothing is worth viewing") {
    PlanProblem p = small_problem(grid);
    p.sensor.c = 150;
    p.sensor.beta = 150;
    const RewardContext ctx{&grid, p.sensor, p.weights};
    const PlanResult r = tigris_plan(p);
    CHECK(r.node_count > 1);
    CHECK(r.info >= node_reward(p.start, nullptr, ctx).reward);
  }
  SUBCASE("invalid starts") {
    PlanProblem p = small_problem(grid);
    p.zones.push_back({{{700, 700}, {800, 700}, {800, 800}, {700, 800}}});
    CHECK_THROWS_AS(tigris_plan(p), InputError);
    p.zones.clear();
    p.start = {-10, 50, 100, 0};
    CHECK_THROWS_AS(rig_plan(p), InputError);
  }
}

TEST_CASE("time-bounded planning stops") {
  const BeliefGrid grid = grid_with_blobs();
  PlanProblem p = small_problem(grid);
  p.config.max_iterations = 0;
  p.config.planning_time = 0.2;
  const PlanResult r = tigris_plan(p);
  CHECK(r.time_bounded);
  CHECK(r.node_count >= 1);
}
