// Command-line front end: plan, bench, render, oracle, generate.

#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tigris/tigris.h"

namespace {

enum Exit { kOk = 0, kInputError = 1, kRuntimeError = 2 };

struct Failure {
  int code;
};

// Input-side calls report I/O trouble as bad input; output-side as runtime.
void check(tigris_status st, bool input_side) {
  if (st == TIGRIS_OK) return;
  std::cerr << "error: " << tigris_last_error() << '\n';
  switch (st) {
    case TIGRIS_ERR_INVALID_ARGUMENT:
    case TIGRIS_ERR_PARSE: throw Failure{kInputError};
    case TIGRIS_ERR_IO: throw Failure{input_side ? kInputError : kRuntimeError};
    default: throw Failure{kRuntimeError};
  }
}

struct ScenarioDeleter {
  void operator()(tigris_scenario* s) const { tigris_scenario_free(s); }
};
struct ResultDeleter {
  void operator()(tigris_result* r) const { tigris_result_free(r); }
};
struct BenchDeleter {
  void operator()(tigris_bench* b) const { tigris_bench_free(b); }
};
using ScenarioPtr = std::unique_ptr<tigris_scenario, ScenarioDeleter>;
using ResultPtr = std::unique_ptr<tigris_result, ResultDeleter>;
using BenchPtr = std::unique_ptr<tigris_bench, BenchDeleter>;

void emit(char* text, const std::string& out_path) {
  const std::unique_ptr<char, void (*)(char*)> owned(text, tigris_string_free);
  if (out_path.empty()) {
    std::fputs(text, stdout);
    return;
  }
  std::FILE* f = std::fopen(out_path.c_str(), "wb");
  if (f == nullptr) {
    std::cerr << "error: cannot open '" << out_path << "' for writing\n";
    throw Failure{kRuntimeError};
  }
  const bool ok = std::fputs(text, f) >= 0;
  if (std::fclose(f) != 0 || !ok) {
    std::cerr << "error: failed writing '" << out_path << "'\n";
    throw Failure{kRuntimeError};
  }
}

ScenarioPtr load(const std::string& path) {
  tigris_scenario* s = nullptr;
  check(tigris_scenario_load(path.c_str(), &s), true);
  return ScenarioPtr(s);
}

void apply_budget(tigris_scenario* s, const std::optional<std::uint64_t>& iterations,
                  const std::optional<double>& seconds) {
  if (iterations) check(tigris_scenario_set_iterations(s, *iterations), true);
  if (seconds) check(tigris_scenario_set_seconds(s, *seconds), true);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Informative path planning with informed sampling and edge rewards"};
  app.require_subcommand(1);

  std::string scenario_path, result_path, template_path, out;
  std::string planner = "tigris";
  std::string kind = "lattice";
  std::optional<std::uint64_t> seed, iterations;
  std::optional<double> seconds;
  std::uint64_t trials = 200;
  unsigned jobs = 1;
  bool no_overlay = false;

  auto* plan = app.add_subcommand("plan", "Plan one scenario with one planner");
  plan->add_option("--scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);
  plan->add_option("--planner", planner, "Planner")->check(CLI::IsMember({"tigris", "rig"}));
  plan->add_option("--seed", seed, "Planner random seed");
  auto* plan_iter = plan->add_option("--iterations", iterations, "Iteration-bounded planning");
  plan->add_option("--seconds", seconds, "Time-bounded planning")->excludes(plan_iter);
  plan->add_option("--out", out, "Result file (default: stdout)");

  auto* bench = app.add_subcommand("bench", "Paired Monte Carlo comparison of tigris and rig");
  bench->add_option("--template", template_path, "Scenario template file")->check(CLI::ExistingFile);
  bench->add_option("--trials", trials, "Number of paired trials")->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed, "Seed of the first trial");
  bench->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_option("--iterations", iterations, "Iterations per plan");
  bench->add_option("--out", out, "Output prefix for <prefix>_trials.jsonl and <prefix>_report.json");

  auto* render = app.add_subcommand("render", "Heatmap, path CSV and overlay image for a result");
  render->add_option("--scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);
  render->add_option("--result", result_path, "Result file")->required()->check(CLI::ExistingFile);
  render->add_option("--out", out, "Output prefix")->required();
  render->add_flag("--no-overlay", no_overlay, "Skip the annotated image");

  auto* oracle = app.add_subcommand("oracle", "Run reference checks");
  oracle->add_option("--kind", kind, "Check to run")->check(CLI::IsMember({"lattice", "range", "edge"}));
  oracle->add_option("--trials", trials, "Runs or random cases (0 = default)");
  oracle->add_option("--seed", seed, "Random seed");
  oracle->add_option("--out", out, "Report file (default: stdout)");

  auto* generate = app.add_subcommand("generate", "Write a random scenario from a template");
  generate->add_option("--template", template_path, "Scenario template file")->check(CLI::ExistingFile);
  generate->add_option("--seed", seed, "Scenario seed");
  generate->add_option("--out", out, "Scenario file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*plan) {
      ScenarioPtr s = load(scenario_path);
      if (seed) check(tigris_scenario_set_planner_seed(s.get(), *seed), true);
      apply_budget(s.get(), iterations, seconds);
      tigris_result* raw = nullptr;
      check(tigris_plan(s.get(), planner == "rig" ? TIGRIS_PLANNER_RIG : TIGRIS_PLANNER_TIGRIS, &raw), false);
      ResultPtr r(raw);
      char* text = nullptr;
      check(tigris_result_to_json(r.get(), &text), false);
      emit(text, out);
    } else if (*bench) {
      tigris_bench_options opts;
      tigris_bench_options_init(&opts);
      opts.trials = trials;
      opts.jobs = jobs;
      if (seed) opts.base_seed = *seed;
      if (iterations) opts.iterations = *iterations;
      if (!template_path.empty()) opts.template_path = template_path.c_str();
      tigris_bench* raw = nullptr;
      check(tigris_bench_run(&opts, &raw), true);
      BenchPtr b(raw);
      if (!out.empty()) check(tigris_bench_save(b.get(), out.c_str()), false);
      char* text = nullptr;
      check(tigris_bench_report_json(b.get(), &text), false);
      emit(text, "");
    } else if (*render) {
      ScenarioPtr s = load(scenario_path);
      tigris_result* raw = nullptr;
      check(tigris_result_load(result_path.c_str(), &raw), true);
      ResultPtr r(raw);
      check(tigris_render(r.get(), s.get(), out.c_str(), no_overlay ? 0 : 1), false);
    } else if (*oracle) {
      const std::uint64_t cases = oracle->count("--trials") ? trials : 0;
      char* text = nullptr;
      check(tigris_oracle_run(kind.c_str(), cases, seed.value_or(1), &text), false);
      emit(text, out);
    } else if (*generate) {
      tigris_scenario* raw = nullptr;
      check(tigris_scenario_generate(seed.value_or(1), template_path.empty() ? nullptr : template_path.c_str(),
                                     &raw),
            true);
      ScenarioPtr s(raw);
      char* text = nullptr;
      check(tigris_scenario_to_json(s.get(), &text), false);
      emit(text, out);
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return kOk;
}
