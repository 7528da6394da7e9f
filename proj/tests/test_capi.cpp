#include <doctest.h>

#include <cstdio>
#include <stdexcept>
#include <string>

#include "tigris/tigris.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  tigris_string_free(s);
  return out;
}

tigris_scenario* small_scenario(uint64_t seed) {
  tigris_scenario* s = nullptr;
  REQUIRE(tigris_scenario_generate(seed, nullptr, &s) == TIGRIS_OK);
  REQUIRE(tigris_scenario_set_iterations(s, 50) == TIGRIS_OK);
  return s;
}

}  // namespace

TEST_CASE("version") { CHECK(std::string(tigris_version()).size() > 0); }

TEST_CASE("plan, save, load and render") {
  tigris_scenario* s = small_scenario(7);
  tigris_result* r = nullptr;
  REQUIRE(tigris_plan(s, TIGRIS_PLANNER_TIGRIS, &r) == TIGRIS_OK);
  CHECK(tigris_result_info(r) > 0.0);
  CHECK(tigris_result_cost(r) <= 3000.0);
  CHECK(tigris_result_node_count(r) >= tigris_result_state_count(r));

  double pose[4];
  REQUIRE(tigris_result_state(r, 0, pose) == TIGRIS_OK);
  CHECK(pose[0] == doctest::Approx(1250.0));
  CHECK(tigris_result_state(r, 1u << 30, pose) == TIGRIS_ERR_INVALID_ARGUMENT);

  REQUIRE(tigris_result_save(r, "capi_result.json") == TIGRIS_OK);
  tigris_result* back = nullptr;
  REQUIRE(tigris_result_load("capi_result.json", &back) == TIGRIS_OK);
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(tigris_result_to_json(r, &a) == TIGRIS_OK);
  REQUIRE(tigris_result_to_json(back, &b) == TIGRIS_OK);
  CHECK(take(a) == take(b));

  CHECK(tigris_render(r, s, "capi_render", 1) == TIGRIS_OK);
  std::FILE* f = std::fopen("capi_render_overlay.ppm", "r");
  CHECK(f != nullptr);
  if (f) std::fclose(f);

  tigris_result_free(back);
  tigris_result_free(r);
  tigris_scenario_free(s);
}

TEST_CASE("same seed gives the same result") {
  tigris_scenario* s = small_scenario(8);
  tigris_result* x = nullptr;
  tigris_result* y = nullptr;
  REQUIRE(tigris_plan(s, TIGRIS_PLANNER_RIG, &x) == TIGRIS_OK);
  REQUIRE(tigris_plan(s, TIGRIS_PLANNER_RIG, &y) == TIGRIS_OK);
  char* a = nullptr;
  char* b = nullptr;
  tigris_result_to_json(x, &a);
  tigris_result_to_json(y, &b);
  CHECK(take(a) == take(b));
  tigris_result_free(x);
  tigris_result_free(y);
  tigris_scenario_free(s);
}

TEST_CASE("scenario round trip through text") {
  tigris_scenario* s = small_scenario(9);
  char* text = nullptr;
  REQUIRE(tigris_scenario_to_json(s, &text) == TIGRIS_OK);
  tigris_scenario* t = nullptr;
  REQUIRE(tigris_scenario_parse(text, &t) == TIGRIS_OK);
  char* again = nullptr;
  REQUIRE(tigris_scenario_to_json(t, &again) == TIGRIS_OK);
  CHECK(take(text) == take(again));
  tigris_scenario_free(s);
  tigris_scenario_free(t);
}

TEST_CASE("error codes") {
  tigris_scenario* s = nullptr;
  CHECK(tigris_scenario_parse("{oops", &s) == TIGRIS_ERR_PARSE);
  CHECK(std::string(tigris_last_error()).size() > 0);
  CHECK(s == nullptr);
  CHECK(tigris_scenario_load("/nonexistent/file.json", &s) == TIGRIS_ERR_IO);
  CHECK(tigris_scenario_parse(nullptr, &s) == TIGRIS_ERR_INVALID_ARGUMENT);

  s = small_scenario(1);
  CHECK(tigris_scenario_set_seconds(s, -1.0) == TIGRIS_ERR_INVALID_ARGUMENT);
  tigris_result* r = nullptr;
  CHECK(tigris_plan(s, static_cast<tigris_planner_kind>(9), &r) == TIGRIS_ERR_INVALID_ARGUMENT);
  CHECK(tigris_scenario_save(s, "/nonexistent/dir/s.json") == TIGRIS_ERR_IO);
  CHECK(tigris_scenario_set_iterations(s, 10) == TIGRIS_OK);
  CHECK(std::string(tigris_last_error()).empty());
  tigris_scenario_free(s);

  char* out = nullptr;
  CHECK(tigris_oracle_run("bogus", 0, 0, &out) == TIGRIS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("small benchmark") {
  tigris_bench_options opts;
  tigris_bench_options_init(&opts);
  CHECK(opts.trials == 200);
  opts.trials = 4;
  opts.iterations = 30;
  opts.jobs = 2;
  tigris_bench* b = nullptr;
  REQUIRE(tigris_bench_run(&opts, &b) == TIGRIS_OK);
  char* report = nullptr;
  REQUIRE(tigris_bench_report_json(b, &report) == TIGRIS_OK);
  CHECK(take(report).find("\"budget_violations\": 0") != std::string::npos);
  CHECK(tigris_bench_save(b, "capi_bench") == TIGRIS_OK);
  tigris_bench_free(b);

  opts.planner_b = "other";
  b = nullptr;
  CHECK(tigris_bench_run(&opts, &b) == TIGRIS_ERR_INVALID_ARGUMENT);
  CHECK(b == nullptr);
}

TEST_CASE("range oracle through the C interface") {
  char* out = nullptr;
  REQUIRE(tigris_oracle_run("range", 50, 3, &out) == TIGRIS_OK);
  CHECK(take(out).find("\"failures\": 0") != std::string::npos);
}
