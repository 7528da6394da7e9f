#ifndef TIGRIS_TIGRIS_H
#define TIGRIS_TIGRIS_H

/* C interface to the informative path planner, benchmark harness and
 * renderers. All handles are opaque; every fallible call returns a status
 * and leaves a message retrievable with tigris_last_error() on the calling
 * thread. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(TIGRIS_BUILDING_LIBRARY)
#define TIGRIS_API __declspec(dllexport)
#else
#define TIGRIS_API __declspec(dllimport)
#endif
#else
#define TIGRIS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tigris_status {
  TIGRIS_OK = 0,
  TIGRIS_ERR_INVALID_ARGUMENT = 1, /* bad value or configuration */
  TIGRIS_ERR_IO = 2,               /* file could not be read or written */
  TIGRIS_ERR_PARSE = 3,            /* malformed input document */
  TIGRIS_ERR_RUNTIME = 4           /* anything else */
} tigris_status;

typedef enum tigris_planner_kind {
  TIGRIS_PLANNER_TIGRIS = 0, /* informed sampling, edge rewards */
  TIGRIS_PLANNER_RIG = 1     /* uniform sampling, node rewards */
} tigris_planner_kind;

typedef struct tigris_scenario tigris_scenario;
typedef struct tigris_result tigris_result;
typedef struct tigris_bench tigris_bench;

TIGRIS_API const char* tigris_version(void);
/* Message for the last failed call on this thread; "" if none. */
TIGRIS_API const char* tigris_last_error(void);
/* Frees strings returned through char** out-parameters. */
TIGRIS_API void tigris_string_free(char* s);

/* ---- scenarios ---- */

TIGRIS_API tigris_status tigris_scenario_load(const char* path, tigris_scenario** out);
TIGRIS_API tigris_status tigris_scenario_parse(const char* json_text, tigris_scenario** out);
/* template_path may be NULL for the desk-scale template. */
TIGRIS_API tigris_status tigris_scenario_generate(uint64_t seed, const char* template_path,
                                                  tigris_scenario** out);
TIGRIS_API tigris_status tigris_scenario_save(const tigris_scenario* s, const char* path);
TIGRIS_API tigris_status tigris_scenario_to_json(const tigris_scenario* s, char** out);
/* Iteration-bounded planning; 0 switches to time-bounded. */
TIGRIS_API tigris_status tigris_scenario_set_iterations(tigris_scenario* s, uint64_t iterations);
/* Time-bounded planning for the given number of seconds. */
TIGRIS_API tigris_status tigris_scenario_set_seconds(tigris_scenario* s, double seconds);
TIGRIS_API tigris_status tigris_scenario_set_planner_seed(tigris_scenario* s, uint64_t seed);
TIGRIS_API void tigris_scenario_free(tigris_scenario* s);

/* ---- planning ---- */

TIGRIS_API tigris_status tigris_plan(const tigris_scenario* s, tigris_planner_kind kind, tigris_result** out);
TIGRIS_API tigris_status tigris_result_load(const char* path, tigris_result** out);
TIGRIS_API tigris_status tigris_result_save(const tigris_result* r, const char* path);
TIGRIS_API tigris_status tigris_result_to_json(const tigris_result* r, char** out);
TIGRIS_API double tigris_result_info(const tigris_result* r);
TIGRIS_API double tigris_result_cost(const tigris_result* r);
TIGRIS_API size_t tigris_result_node_count(const tigris_result* r);
TIGRIS_API size_t tigris_result_state_count(const tigris_result* r);
/* Writes x, y, z, psi of state i into xyzpsi[0..3]. */
TIGRIS_API tigris_status tigris_result_state(const tigris_result* r, size_t i, double xyzpsi[4]);
TIGRIS_API void tigris_result_free(tigris_result* r);

/* Writes <prefix>_heatmap.pgm, <prefix>_path.csv and, when overlay != 0,
 * <prefix>_overlay.ppm. */
TIGRIS_API tigris_status tigris_render(const tigris_result* r, const tigris_scenario* s, const char* prefix,
                                       int overlay);

/* ---- benchmark ---- */

typedef struct tigris_bench_options {
  uint64_t trials;
  uint64_t base_seed;
  unsigned jobs;
  uint64_t iterations;       /* 0 keeps the template's setting */
  const char* planner_a;     /* "tigris" or "rig" */
  const char* planner_b;
  const char* template_path; /* NULL for the desk-scale template */
} tigris_bench_options;

TIGRIS_API void tigris_bench_options_init(tigris_bench_options* opts);
TIGRIS_API tigris_status tigris_bench_run(const tigris_bench_options* opts, tigris_bench** out);
/* Writes <prefix>_trials.jsonl and <prefix>_report.json. */
TIGRIS_API tigris_status tigris_bench_save(const tigris_bench* b, const char* prefix);
TIGRIS_API tigris_status tigris_bench_report_json(const tigris_bench* b, char** out);
TIGRIS_API void tigris_bench_free(tigris_bench* b);

/* ---- reference checks ----
 * kind is "lattice" (toy-world exhaustive search vs the informed planner),
 * "range" (closed-form minimum range vs sliding poses) or "edge" (edge
 * reward vs a dense sweep). `cases` is the number of runs or random cases;
 * 0 picks the default. The JSON report is returned through out. */
TIGRIS_API tigris_status tigris_oracle_run(const char* kind, uint64_t cases, uint64_t seed, char** out);

#ifdef __cplusplus
}
#endif

#endif
