#pragma once

// Slow reference computations used to check the fast paths: brute-force
// Dubins search, a sliding-pose range search, a dense edge sweep, and an
// exhaustive lattice search over a toy world.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tigris/dubins.hpp"
#include "tigris/information.hpp"
#include "tigris/scenario.hpp"
#include "tigris/sensor.hpp"

namespace tigris::oracle {

/// Shortest length of one Dubins word found by sampling the first turn angle
/// (`samples` points over a full turn) and refining every sign change of the
/// tangency residual. -1 if no root is found.
double dubins_word_length(DubinsWord word, const VehicleState& from, const VehicleState& to,
                          double turn_radius, int samples = 100000);

/// Minimum over the six words; -1 if none was found.
double dubins_length(const VehicleState& from, const VehicleState& to, double turn_radius,
                     int samples = 100000);

/// Slides a level vehicle along a straight track in `step` increments and
/// returns the smallest slant range at which a ground point at lateral offset
/// d lies inside the footprint. Infinity if it is never inside.
double sliding_min_range(double d, const SensorConfig& cfg, double z, double step = 0.1);

/// Per-cell minimum slant range over poses spaced `step` apart along the
/// edge (endpoints included), footprint containment tested per pose. Cells
/// beyond beta are dropped. Sorted by cell.
std::vector<std::pair<std::size_t, double>> dense_sweep_ranges(const PathEdge& edge, const RewardContext& ctx,
                                                               double step = 1.0);

/// One cell update per swept cell, at its dense-sweep minimum range, against
/// the prior.
double dense_sweep_reward(const PathEdge& edge, const RewardContext& ctx, double step = 1.0);

/// Small world for exhaustive search: 10 x 10 cells of 10 m, B = 40 m,
/// extend 10 m, near radius 10 m, pruning off, sensor scaled down to match,
/// constant altitude. Planning stops at 10^5 iterations or 10^6 nodes.
Scenario toy_world();

struct LatticeConfig {
  double spacing = 5.0;   // m between lattice positions
  int headings = 8;       // evenly spaced, starting at 0
  int max_edges = 6;
};

struct LatticeResult {
  double best_info = 0.0;
  double best_cost = 0.0;
  std::vector<VehicleState> best_states;
  std::size_t lattice_edges = 0;   // distinct (state, successor) pairs
  std::uint64_t paths = 0;         // paths enumerated
};

/// Exhaustive search over lattice-aligned paths from scenario.start: every
/// edge is a Dubins path of length <= extend between lattice states at the
/// start altitude, total length <= budget, at most max_edges edges. Paths are
/// scored with the full trajectory reward.
LatticeResult lattice_optimum(const Scenario& scenario, const LatticeConfig& cfg = {});

struct AgreementReport {
  std::size_t cases = 0;
  std::size_t failures = 0;  // relative error above tolerance
  double max_rel_error = 0.0;
  double tolerance = 0.0;
};

/// min_range_to_edge against sliding_min_range on random valid sensor
/// geometries and offsets.
AgreementReport check_min_range(std::size_t cases, std::uint64_t seed, double tolerance = 0.01);

/// edge_reward against dense_sweep_reward on random straight edges over the
/// desk-scale map with a random uniform prior.
AgreementReport check_edge_reward(std::size_t cases, std::uint64_t seed, double tolerance = 0.02);

struct LatticeReport {
  LatticeResult oracle;
  std::vector<double> planner_info;  // one per seeded run
  std::size_t passing = 0;           // runs with info >= ratio * oracle optimum
  double ratio = 0.0;
};

/// Runs the informed planner `runs` times on the toy world (seeds base_seed,
/// base_seed + 1, ...) and compares each with the lattice optimum.
LatticeReport check_lattice(std::size_t runs, std::uint64_t base_seed, std::uint64_t iterations = 100000,
                            double ratio = 0.9);

}  // namespace tigris::oracle
