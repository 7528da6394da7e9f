#include <algorithm>
#include <cmath>
#include <random>

#include "tigris/oracle.hpp"

namespace tigris::oracle {

namespace {

double rel_error(double got, double want) {
  if (std::isinf(got) && std::isinf(want)) return 0.0;
  if (std::isinf(got) || std::isinf(want)) return std::numeric_limits<double>::infinity();
  const double denom = std::max(std::fabs(want), 1e-12);
  return std::fabs(got - want) / denom;
}

void tally(AgreementReport& rep, double err) {
  ++rep.cases;
  rep.max_rel_error = std::max(rep.max_rel_error, err);
  if (err > rep.tolerance) ++rep.failures;
}

}  // namespace

AgreementReport check_min_range(std::size_t cases, std::uint64_t seed, double tolerance) {
  AgreementReport rep;
  rep.tolerance = tolerance;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (rep.cases < cases) {
    SensorConfig cfg;
    cfg.vfov = deg_to_rad(10.0 + 50.0 * unit(rng));
    cfg.hfov = deg_to_rad(20.0 + 80.0 * unit(rng));
    cfg.pitch = deg_to_rad(80.0 * unit(rng));
    if (cfg.pitch + 0.5 * cfg.vfov > deg_to_rad(85.0)) continue;
    const double z = 30.0 + 170.0 * unit(rng);
    const FootprintShape shape = footprint_shape(cfg, z);
    const double d = 1.1 * shape.far_half_width * unit(rng);
    tally(rep, rel_error(min_range_to_edge(d, cfg, z), sliding_min_range(d, cfg, z)));
  }
  return rep;
}

AgreementReport check_edge_reward(std::size_t cases, std::uint64_t seed, double tolerance) {
  AgreementReport rep;
  rep.tolerance = tolerance;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Scenario base;
  const GridSpec spec = base.grid_spec();
  while (rep.cases < cases) {
    std::vector<double> probs(spec.cell_count());
    for (double& p : probs) p = 0.05 + 0.9 * unit(rng);
    const BeliefGrid grid(spec, probs);
    const RewardContext ctx{&grid, base.sensor, base.weights};
    const double len = 100.0 + 500.0 * unit(rng);
    const double psi = kTwoPi * unit(rng);
    const double x = 300.0 + 1900.0 * unit(rng);
    const double y = 300.0 + 1900.0 * unit(rng);
    const double z0 = 80.0 + 40.0 * unit(rng);
    const double z1 = 80.0 + 40.0 * unit(rng);
    const VehicleState a(x, y, z0, psi);
    const VehicleState b(x + len * std::cos(psi), y + len * std::sin(psi), z1, psi);
    const PathEdge edge = connect(a, b, base.planner.turn_radius);
    const double want = dense_sweep_reward(edge, ctx);
    if (want <= 0.0) continue;
    tally(rep, rel_error(edge_reward(edge, nullptr, ctx).reward, want));
  }
  return rep;
}

LatticeReport check_lattice(std::size_t runs, std::uint64_t base_seed, std::uint64_t iterations, double ratio) {
  LatticeReport rep;
  rep.ratio = ratio;
  Scenario world = toy_world();
  world.planner.max_iterations = iterations;
  rep.oracle = lattice_optimum(world);
  const BeliefGrid grid = world.build_belief();
  for (std::size_t i = 0; i < runs; ++i) {
    PlanProblem problem = world.problem(grid);
    problem.config.seed = base_seed + i;
    const double info = tigris_plan(problem).info;
    rep.planner_info.push_back(info);
    if (info >= ratio * rep.oracle.best_info) ++rep.passing;
  }
  return rep;
}

}  // namespace tigris::oracle
