#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tigris/bench.hpp"

using namespace tigris;

namespace {

BenchConfig tiny() {
  BenchConfig cfg;
  cfg.trials = 6;
  cfg.base_seed = 100;
  cfg.max_iterations = 40;
  return cfg;
}

TrialRecord record(std::size_t trial, int count, const std::string& planner, double info) {
  TrialRecord r;
  r.trial = trial;
  r.centroid_count = count;
  r.planner = planner;
  r.info = info;
  return r;
}

}  // namespace

TEST_CASE("one-tailed paired test") {
  const std::vector<double> none{0, 0, 0};
  CHECK(paired_one_tailed_p(none) == doctest::Approx(0.5));
  const std::vector<double> up{1, 1, 1};
  CHECK(paired_one_tailed_p(up) == 0.0);
  // t = 6.3246 with 4 dof
  const std::vector<double> d{1, 2, 3, 2, 2};
  CHECK(paired_one_tailed_p(d) == doctest::Approx(0.0015991).epsilon(1e-3));
  const std::vector<double> mixed{1.0, -0.5, 0.8, -0.2, 0.4, 0.1};
  const double p = paired_one_tailed_p(mixed);
  // t = 1.1291 with 5 dof
  CHECK(p == doctest::Approx(0.155045).epsilon(1e-4));
  const std::vector<double> down{-1.0, 0.5, -0.8, 0.2, -0.4, -0.1};
  CHECK(paired_one_tailed_p(down) == doctest::Approx(1 - p).epsilon(1e-9));
}

TEST_CASE("chi-square against uniform") {
  const std::vector<std::size_t> flat{100, 100, 100, 100};
  CHECK(chi_square_uniform_p(flat) == doctest::Approx(1.0));
  const std::vector<std::size_t> skewed{400, 100, 100, 100};
  CHECK(chi_square_uniform_p(skewed) < 1e-10);
  // statistic 2.0 with 3 dof
  const std::vector<std::size_t> mild{110, 90, 100, 100};
  CHECK(chi_square_uniform_p(mild) == doctest::Approx(0.5724).epsilon(1e-3));
}

TEST_CASE("curve decrease detection") {
  std::vector<CurvePoint> c{{0, 0, 1, 1}, {5, 0, 2, 2}, {9, 0, 3, 3}};
  CHECK(!curve_decreases(c));
  c[1].path_info = 2.5;
  c[2].path_info = 2.4;
  CHECK(curve_decreases(c));
}

TEST_CASE("summary pairs trials and buckets by centroid count") {
  std::vector<TrialRecord> recs;
  for (std::size_t t = 0; t < 12; ++t) {
    recs.push_back(record(t, static_cast<int>(t + 1), "a", 110 + t));
    recs.push_back(record(t, static_cast<int>(t + 1), "b", 100 + t));
  }
  recs[5].failed = true;
  const BenchReport rep = summarize(recs, {"a", "b"});
  CHECK(rep.trials == 12);
  CHECK(rep.failed_trials == 1);
  CHECK(rep.overall.trials == 11);
  CHECK(rep.overall.mean_diff == doctest::Approx(10.0));
  REQUIRE(rep.buckets.size() == 4);
  CHECK(rep.buckets[0].lo == 1);
  CHECK(rep.buckets[0].hi == 3);
  CHECK(rep.buckets[0].trials == 2);
  CHECK(rep.buckets[1].trials == 3);
  CHECK(rep.buckets[0].percent_diff == doctest::Approx(100.0 * 10 / 100.5));
}

TEST_CASE("stratified trial scenarios") {
  const BenchConfig cfg = tiny();
  const std::vector<std::size_t> order{1, 4, 7, 10, 2, 5, 8, 11, 3, 6, 9, 12};
  for (std::size_t i = 0; i < 24; ++i) CHECK(trial_scenario(cfg, i).centroids.size() == order[i % 12]);
  std::vector<std::size_t> per_bucket(4, 0);
  for (std::size_t i = 0; i < 200; ++i) ++per_bucket[(trial_scenario(cfg, i).centroids.size() - 1) / 3];
  CHECK(per_bucket == std::vector<std::size_t>{50, 50, 50, 50});
  CHECK(serialize_scenario(trial_scenario(cfg, 3)) == serialize_scenario(trial_scenario(cfg, 3)));
}

TEST_CASE("self comparison shows no difference") {
  BenchConfig cfg = tiny();
  cfg.planners = {"tigris", "tigris"};
  const BenchRun run = run_benchmark(cfg);
  CHECK(run.report.overall.percent_diff == 0.0);
  CHECK(run.report.overall.p_value == doctest::Approx(0.5));
}

TEST_CASE("benchmark is independent of the worker count") {
  BenchConfig one = tiny();
  BenchConfig three = tiny();
  three.jobs = 3;
  const BenchRun a = run_benchmark(one);
  const BenchRun b = run_benchmark(three);
  CHECK(serialize_records(a.records) == serialize_records(b.records));
  CHECK(serialize_report(a.report) == serialize_report(b.report));
  CHECK(a.report.budget_violations == 0);
  for (const TrialRecord& r : a.records) {
    CHECK(!r.failed);
    CHECK(r.max_node_cost <= r.budget);
  }
}

TEST_CASE("unknown planner names are rejected up front") {
  BenchConfig cfg = tiny();
  cfg.planners = {"tigris", "nope"};
  CHECK_THROWS_AS(run_benchmark(cfg), std::invalid_argument);
}
