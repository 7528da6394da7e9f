#include "tigris/tigris.h"

#include <cstring>
#include <ios>
#include <string>

#include <json.hpp>

#include "tigris/bench.hpp"
#include "tigris/oracle.hpp"
#include "tigris/render.hpp"
#include "tigris/scenario.hpp"

struct tigris_scenario {
  tigris::Scenario value;
};

struct tigris_result {
  tigris::PlanResult value;
};

struct tigris_bench {
  tigris::BenchRun value;
};

namespace {

thread_local std::string g_last_error;

tigris_status fail(tigris_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <class Fn>
tigris_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return TIGRIS_OK;
  } catch (const tigris::FormatError& e) {
    return fail(TIGRIS_ERR_PARSE, e.what());
  } catch (const std::ios_base::failure& e) {
    return fail(TIGRIS_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(TIGRIS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(TIGRIS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(TIGRIS_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(TIGRIS_ERR_RUNTIME, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw std::invalid_argument(std::string(what) + " must not be null");
}

std::string report_json(const tigris::oracle::AgreementReport& r) {
  return nlohmann::json{{"cases", r.cases},
                        {"failures", r.failures},
                        {"max_rel_error", r.max_rel_error},
                        {"tolerance", r.tolerance}}
             .dump(2);
}

}  // namespace

extern "C" {

const char* tigris_version(void) { return "1.0.0"; }

const char* tigris_last_error(void) { return g_last_error.c_str(); }

void tigris_string_free(char* s) { delete[] s; }

tigris_status tigris_scenario_load(const char* path, tigris_scenario** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new tigris_scenario{tigris::load_scenario(path)};
  });
}

tigris_status tigris_scenario_parse(const char* json_text, tigris_scenario** out) {
  return guarded([&] {
    require(json_text, "json_text");
    require(out, "out");
    *out = new tigris_scenario{tigris::parse_scenario(json_text)};
  });
}

tigris_status tigris_scenario_generate(uint64_t seed, const char* template_path, tigris_scenario** out) {
  return guarded([&] {
    require(out, "out");
    const tigris::ScenarioTemplate tmpl =
        template_path ? tigris::load_template(template_path) : tigris::desk_template();
    *out = new tigris_scenario{tigris::generate_scenario(seed, tmpl)};
  });
}

tigris_status tigris_scenario_save(const tigris_scenario* s, const char* path) {
  return guarded([&] {
    require(s, "scenario");
    require(path, "path");
    tigris::save_scenario(s->value, path);
  });
}

tigris_status tigris_scenario_to_json(const tigris_scenario* s, char** out) {
  return guarded([&] {
    require(s, "scenario");
    require(out, "out");
    *out = dup_string(tigris::serialize_scenario(s->value));
  });
}

tigris_status tigris_scenario_set_iterations(tigris_scenario* s, uint64_t iterations) {
  return guarded([&] {
    require(s, "scenario");
    tigris::PlannerConfig cfg = s->value.planner;
    cfg.max_iterations = iterations;
    cfg.validate();
    s->value.planner = cfg;
  });
}

tigris_status tigris_scenario_set_seconds(tigris_scenario* s, double seconds) {
  return guarded([&] {
    require(s, "scenario");
    tigris::PlannerConfig cfg = s->value.planner;
    cfg.max_iterations = 0;
    cfg.planning_time = seconds;
    cfg.validate();
    s->value.planner = cfg;
  });
}

tigris_status tigris_scenario_set_planner_seed(tigris_scenario* s, uint64_t seed) {
  return guarded([&] {
    require(s, "scenario");
    s->value.planner.seed = seed;
  });
}

void tigris_scenario_free(tigris_scenario* s) { delete s; }

tigris_status tigris_plan(const tigris_scenario* s, tigris_planner_kind kind, tigris_result** out) {
  return guarded([&] {
    require(s, "scenario");
    require(out, "out");
    const tigris::BeliefGrid grid = s->value.build_belief();
    const tigris::PlanProblem problem = s->value.problem(grid);
    switch (kind) {
      case TIGRIS_PLANNER_TIGRIS: *out = new tigris_result{tigris::tigris_plan(problem)}; return;
      case TIGRIS_PLANNER_RIG: *out = new tigris_result{tigris::rig_plan(problem)}; return;
    }
    throw std::invalid_argument("unknown planner kind");
  });
}

tigris_status tigris_result_load(const char* path, tigris_result** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new tigris_result{tigris::load_result(path)};
  });
}

tigris_status tigris_result_save(const tigris_result* r, const char* path) {
  return guarded([&] {
    require(r, "result");
    require(path, "path");
    tigris::save_result(r->value, path);
  });
}

tigris_status tigris_result_to_json(const tigris_result* r, char** out) {
  return guarded([&] {
    require(r, "result");
    require(out, "out");
    *out = dup_string(tigris::serialize_result(r->value));
  });
}

double tigris_result_info(const tigris_result* r) { return r ? r->value.info : 0.0; }

double tigris_result_cost(const tigris_result* r) { return r ? r->value.cost : 0.0; }

size_t tigris_result_node_count(const tigris_result* r) { return r ? r->value.node_count : 0; }

size_t tigris_result_state_count(const tigris_result* r) { return r ? r->value.states.size() : 0; }

tigris_status tigris_result_state(const tigris_result* r, size_t i, double xyzpsi[4]) {
  return guarded([&] {
    require(r, "result");
    require(xyzpsi, "xyzpsi");
    const tigris::VehicleState& s = r->value.states.at(i);
    xyzpsi[0] = s.x;
    xyzpsi[1] = s.y;
    xyzpsi[2] = s.z;
    xyzpsi[3] = s.psi;
  });
}

void tigris_result_free(tigris_result* r) { delete r; }

tigris_status tigris_render(const tigris_result* r, const tigris_scenario* s, const char* prefix, int overlay) {
  return guarded([&] {
    require(r, "result");
    require(s, "scenario");
    require(prefix, "prefix");
    tigris::render(r->value, s->value, prefix, overlay != 0);
  });
}

void tigris_bench_options_init(tigris_bench_options* opts) {
  if (opts == nullptr) return;
  opts->trials = 200;
  opts->base_seed = 1;
  opts->jobs = 1;
  opts->iterations = 0;
  opts->planner_a = "tigris";
  opts->planner_b = "rig";
  opts->template_path = nullptr;
}

tigris_status tigris_bench_run(const tigris_bench_options* opts, tigris_bench** out) {
  return guarded([&] {
    require(opts, "options");
    require(out, "out");
    require(opts->planner_a, "planner_a");
    require(opts->planner_b, "planner_b");
    tigris::BenchConfig cfg;
    if (opts->template_path) cfg.tmpl = tigris::load_template(opts->template_path);
    cfg.trials = opts->trials;
    cfg.base_seed = opts->base_seed;
    cfg.jobs = opts->jobs;
    cfg.max_iterations = opts->iterations;
    cfg.planners = {opts->planner_a, opts->planner_b};
    *out = new tigris_bench{tigris::run_benchmark(cfg)};
  });
}

tigris_status tigris_bench_save(const tigris_bench* b, const char* prefix) {
  return guarded([&] {
    require(b, "bench");
    require(prefix, "prefix");
    tigris::save_bench(b->value, prefix);
  });
}

tigris_status tigris_bench_report_json(const tigris_bench* b, char** out) {
  return guarded([&] {
    require(b, "bench");
    require(out, "out");
    *out = dup_string(tigris::serialize_report(b->value.report));
  });
}

void tigris_bench_free(tigris_bench* b) { delete b; }

tigris_status tigris_oracle_run(const char* kind, uint64_t cases, uint64_t seed, char** out) {
  return guarded([&] {
    require(kind, "kind");
    require(out, "out");
    const std::string k = kind;
    std::string text;
    if (k == "range") {
      text = report_json(tigris::oracle::check_min_range(cases ? cases : 1000, seed));
    } else if (k == "edge") {
      text = report_json(tigris::oracle::check_edge_reward(cases ? cases : 100, seed));
    } else if (k == "lattice") {
      const auto rep = tigris::oracle::check_lattice(cases ? cases : 20, seed);
      nlohmann::json path = nlohmann::json::array();
      for (const auto& s : rep.oracle.best_states) path.push_back({s.x, s.y, s.z, s.psi});
      text = nlohmann::json{{"oracle_info", rep.oracle.best_info},
                            {"oracle_cost", rep.oracle.best_cost},
                            {"oracle_path", path},
                            {"lattice_edges", rep.oracle.lattice_edges},
                            {"paths_enumerated", rep.oracle.paths},
                            {"planner_info", rep.planner_info},
                            {"ratio", rep.ratio},
                            {"passing", rep.passing},
                            {"runs", rep.planner_info.size()}}
                 .dump(2);
    } else {
      throw std::invalid_argument("unknown oracle kind '" + k + "'");
    }
    *out = dup_string(text + "\n");
  });
}

}  // extern "C"
