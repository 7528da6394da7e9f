#include "tigris/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <json.hpp>

namespace tigris {

using nlohmann::json;

PlanResult run_planner(const std::string& name, const PlanProblem& problem, const NodeObserver& observer) {
  if (name == "tigris") return tigris_plan(problem, observer);
  if (name == "rig") return rig_plan(problem, observer);
  throw std::invalid_argument("unknown planner '" + name + "'");
}

Scenario trial_scenario(const BenchConfig& cfg, std::size_t trial) {
  ScenarioTemplate tmpl = cfg.tmpl;
  if (cfg.stratify && tmpl.centroid_count == 0) {
    const int span = tmpl.max_centroids - tmpl.min_centroids + 1;
    const int j = static_cast<int>(trial % static_cast<std::size_t>(span));
    // Visit the four quarter ranges in turn so any prefix of trials fills them evenly.
    const int offset = span % 4 == 0 ? (j % 4) * (span / 4) + j / 4 : j;
    tmpl.centroid_count = tmpl.min_centroids + offset;
  }
  if (cfg.max_iterations > 0) tmpl.base.planner.max_iterations = cfg.max_iterations;
  return generate_scenario(cfg.base_seed + trial, tmpl);
}

namespace {

TrialRecord run_trial(const Scenario& scenario, const BeliefGrid& grid, const std::string& planner) {
  TrialRecord rec;
  rec.seed = scenario.seed;
  rec.centroid_count = static_cast<int>(scenario.centroids.size());
  rec.planner = planner;
  rec.budget = scenario.planner.budget;
  try {
    const PlanResult r = run_planner(planner, scenario.problem(grid), [&](const TreeNode& n) {
      rec.max_node_cost = std::max(rec.max_node_cost, n.cost);
    });
    rec.info = r.info;
    rec.tree_info = r.tree_info;
    rec.cost = r.cost;
    rec.node_count = r.node_count;
    rec.iterations = r.iterations;
    rec.curve = r.curve;
    rec.curve_decreased = curve_decreases(r.curve);
  } catch (const std::exception& e) {
    rec.failed = true;
    rec.error = e.what();
  }
  return rec;
}

PlannerStats mean_std(const std::string& name, const std::vector<double>& xs) {
  PlannerStats s{name, 0.0, 0.0};
  if (xs.empty()) return s;
  s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

BucketStats bucket_stats(int lo, int hi, const std::vector<std::pair<double, double>>& pairs,
                         const std::vector<std::string>& planners) {
  BucketStats b;
  b.lo = lo;
  b.hi = hi;
  b.trials = pairs.size();
  std::vector<double> xa, xb, diffs;
  for (const auto& [a, bb] : pairs) {
    xa.push_back(a);
    xb.push_back(bb);
    diffs.push_back(a - bb);
  }
  b.a = mean_std(planners[0], xa);
  b.b = mean_std(planners[1], xb);
  const PlannerStats d = mean_std("diff", diffs);
  b.mean_diff = d.mean;
  b.stddev_diff = d.stddev;
  b.percent_diff = b.b.mean != 0.0 ? 100.0 * (b.a.mean - b.b.mean) / b.b.mean
                                   : std::numeric_limits<double>::quiet_NaN();
  b.p_value = paired_one_tailed_p(diffs);
  return b;
}

json curve_json(const std::vector<CurvePoint>& curve) {
  json out = json::array();
  for (const CurvePoint& c : curve) out.push_back({c.iteration, c.tree_info, c.path_info});
  return out;
}

json bucket_json(const BucketStats& b) {
  const auto planner = [](const PlannerStats& s) {
    return json{{"planner", s.planner}, {"mean", s.mean}, {"std", s.stddev}};
  };
  return json{{"centroids", {b.lo, b.hi}},
              {"trials", b.trials},
              {"a", planner(b.a)},
              {"b", planner(b.b)},
              {"mean_diff", b.mean_diff},
              {"std_diff", b.stddev_diff},
              {"percent_diff", b.percent_diff},
              {"p_value", b.p_value}};
}

}  // namespace

bool curve_decreases(std::span<const CurvePoint> curve) {
  for (std::size_t i = 1; i < curve.size(); ++i) {
    const double prev = curve[i - 1].path_info;
    if (curve[i].path_info < prev - 1e-9 * std::max(1.0, std::fabs(prev))) return true;
  }
  return false;
}

double paired_one_tailed_p(std::span<const double> diffs) {
  const std::size_t n = diffs.size();
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double mean = std::accumulate(diffs.begin(), diffs.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double d : diffs) ss += (d - mean) * (d - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (sd == 0.0) return mean > 0.0 ? 0.0 : (mean < 0.0 ? 1.0 : 0.5);
  const double t = mean / (sd / std::sqrt(static_cast<double>(n)));
  const boost::math::students_t dist(static_cast<double>(n - 1));
  return boost::math::cdf(boost::math::complement(dist, t));
}

double chi_square_uniform_p(std::span<const std::size_t> counts) {
  if (counts.size() < 2) throw std::invalid_argument("chi-square test needs at least two categories");
  const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::size_t{0}));
  if (total == 0.0) throw std::invalid_argument("chi-square test needs observations");
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0.0;
  for (std::size_t c : counts) stat += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  const boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

BenchReport summarize(std::span<const TrialRecord> records, const std::vector<std::string>& planners) {
  if (planners.size() != 2) throw std::invalid_argument("a benchmark compares exactly two planners");
  BenchReport rep;
  rep.planners = planners;

  // Pair the two planners' records per trial; order-independent by construction.
  std::vector<const TrialRecord*> sorted;
  for (const TrialRecord& r : records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const TrialRecord* x, const TrialRecord* y) { return x->trial < y->trial; });

  std::vector<std::size_t> decreased(2, 0), completed(2, 0);
  std::vector<std::pair<int, std::pair<double, double>>> pairs;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    const TrialRecord* rec[2] = {nullptr, nullptr};
    bool failed = false;
    for (; j < sorted.size() && sorted[j]->trial == sorted[i]->trial; ++j) {
      const TrialRecord& r = *sorted[j];
      if (r.max_node_cost > r.budget || r.cost > r.budget) ++rep.budget_violations;
      failed = failed || r.failed;
      if (rec[0] == nullptr && r.planner == planners[0]) {
        rec[0] = &r;
      } else if (rec[1] == nullptr && r.planner == planners[1]) {
        rec[1] = &r;
      }
    }
    ++rep.trials;
    if (failed || rec[0] == nullptr || rec[1] == nullptr) {
      ++rep.failed_trials;
    } else {
      for (std::size_t k = 0; k < 2; ++k) {
        ++completed[k];
        if (rec[k]->curve_decreased) ++decreased[k];
      }
      pairs.push_back({rec[0]->centroid_count, {rec[0]->info, rec[1]->info}});
    }
    i = j;
  }

  const auto collect = [&](int lo, int hi) {
    std::vector<std::pair<double, double>> out;
    for (const auto& [n, ab] : pairs) {
      if (n >= lo && n <= hi) out.push_back(ab);
    }
    return out;
  };
  rep.overall = bucket_stats(std::numeric_limits<int>::min(), std::numeric_limits<int>::max(),
                             collect(std::numeric_limits<int>::min(), std::numeric_limits<int>::max()),
                             planners);
  for (int lo : {1, 4, 7, 10}) rep.buckets.push_back(bucket_stats(lo, lo + 2, collect(lo, lo + 2), planners));
  for (std::size_t k = 0; k < 2; ++k) {
    rep.curve_decrease_fraction.push_back(
        completed[k] > 0 ? static_cast<double>(decreased[k]) / static_cast<double>(completed[k]) : 0.0);
  }
  return rep;
}

BenchRun run_benchmark(const BenchConfig& cfg) {
  if (cfg.planners.size() != 2) throw std::invalid_argument("a benchmark compares exactly two planners");
  for (const std::string& p : cfg.planners) {
    if (p != "tigris" && p != "rig") throw std::invalid_argument("unknown planner '" + p + "'");
  }
  if (cfg.trials == 0) throw std::invalid_argument("trials must be positive");
  cfg.tmpl.validate();

  const std::size_t per_trial = cfg.planners.size();
  std::vector<TrialRecord> records(cfg.trials * per_trial);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < cfg.trials; i = next++) {
      const Scenario scenario = trial_scenario(cfg, i);
      const BeliefGrid grid = scenario.build_belief();
      for (std::size_t k = 0; k < per_trial; ++k) {
        TrialRecord rec = run_trial(scenario, grid, cfg.planners[k]);
        rec.trial = i;
        records[i * per_trial + k] = std::move(rec);
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(cfg.trials)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  BenchRun run;
  run.report = summarize(records, cfg.planners);
  run.records = std::move(records);
  return run;
}

std::string serialize_records(std::span<const TrialRecord> records) {
  std::string out;
  for (const TrialRecord& r : records) {
    json j{{"trial", r.trial},
           {"seed", r.seed},
           {"centroids", r.centroid_count},
           {"planner", r.planner},
           {"failed", r.failed}};
    if (r.failed) {
      j["error"] = r.error;
    } else {
      j["info"] = r.info;
      j["tree_info"] = r.tree_info;
      j["cost"] = r.cost;
      j["max_node_cost"] = r.max_node_cost;
      j["nodes"] = r.node_count;
      j["iterations"] = r.iterations;
      j["curve_decreased"] = r.curve_decreased;
      j["curve"] = curve_json(r.curve);
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string serialize_report(const BenchReport& rep) {
  json buckets = json::array();
  for (const BucketStats& b : rep.buckets) buckets.push_back(bucket_json(b));
  json overall = bucket_json(rep.overall);
  overall.erase("centroids");
  json j{{"planners", rep.planners},
         {"trials", rep.trials},
         {"failed_trials", rep.failed_trials},
         {"budget_violations", rep.budget_violations},
         {"overall", overall},
         {"buckets", buckets},
         {"curve_decrease_fraction", rep.curve_decrease_fraction}};
  return j.dump(2) + "\n";
}

void save_bench(const BenchRun& run, const std::filesystem::path& prefix) {
  write_text(prefix.string() + "_trials.jsonl", serialize_records(run.records));
  write_text(prefix.string() + "_report.json", serialize_report(run.report));
}

}  // namespace tigris
