#pragma once

// Paired Monte Carlo comparison of two planners over generated scenarios.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tigris/planner.hpp"
#include "tigris/scenario.hpp"

namespace tigris {

/// Runs the named planner ("tigris" or "rig"). Throws std::invalid_argument
/// for any other name.
PlanResult run_planner(const std::string& name, const PlanProblem& problem,
                       const NodeObserver& observer = {});

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;  // scenario seed
  int centroid_count = 0;
  std::string planner;
  bool failed = false;
  std::string error;
  double info = 0.0;
  double tree_info = 0.0;
  double cost = 0.0;
  double budget = 0.0;
  double max_node_cost = 0.0;  // over every node the planner inserted
  std::size_t node_count = 0;
  std::uint64_t iterations = 0;
  bool curve_decreased = false;  // path_info dropped between improvements
  std::vector<CurvePoint> curve;
};

struct PlannerStats {
  std::string planner;
  double mean = 0.0;
  double stddev = 0.0;
};

/// Statistics over trials whose centroid count lies in [lo, hi].
struct BucketStats {
  int lo = 0;
  int hi = 0;
  std::size_t trials = 0;  // paired, non-failed
  PlannerStats a;
  PlannerStats b;
  double mean_diff = 0.0;     // a - b
  double stddev_diff = 0.0;
  double percent_diff = 0.0;  // 100 (mean_a - mean_b) / mean_b
  double p_value = 0.0;       // one-tailed, H1: a > b
};

struct BenchReport {
  std::vector<std::string> planners;  // a, b
  std::size_t trials = 0;
  std::size_t failed_trials = 0;
  BucketStats overall;
  std::vector<BucketStats> buckets;  // 1-3, 4-6, 7-9, 10-12
  std::vector<double> curve_decrease_fraction;  // per planner
  std::size_t budget_violations = 0;
};

struct BenchConfig {
  ScenarioTemplate tmpl = desk_template();
  std::size_t trials = 200;
  std::uint64_t base_seed = 1;
  std::vector<std::string> planners{"tigris", "rig"};
  unsigned jobs = 1;
  /// When the template leaves the count free, trials cycle through every
  /// count, alternating between the quarter ranges (1, 4, 7, 10, 2, 5, ...)
  /// so 200 trials put exactly 50 in each reporting bucket.
  bool stratify = true;
  std::uint64_t max_iterations = 0;  // overrides the template when nonzero
};

struct BenchRun {
  std::vector<TrialRecord> records;  // ordered by trial, then planner
  BenchReport report;
};

/// Scenario for trial i of a benchmark.
Scenario trial_scenario(const BenchConfig& cfg, std::size_t trial);

BenchRun run_benchmark(const BenchConfig& cfg);

BenchReport summarize(std::span<const TrialRecord> records, const std::vector<std::string>& planners);

/// One-tailed p-value of a paired t-test on the differences (H1: mean > 0).
double paired_one_tailed_p(std::span<const double> diffs);
/// p-value of Pearson's chi-square test against a uniform distribution.
double chi_square_uniform_p(std::span<const std::size_t> counts);

bool curve_decreases(std::span<const CurvePoint> curve);

std::string serialize_records(std::span<const TrialRecord> records);  // JSON Lines
std::string serialize_report(const BenchReport& report);
void save_bench(const BenchRun& run, const std::filesystem::path& prefix);

}  // namespace tigris
