/* C interface to the UGV-assisted backscatter network planner/simulator.
 *
 * All functions return ugvbc_status; on failure ugvbc_last_error() holds a
 * message for the calling thread. Handles are opaque and must be released
 * with their matching _free function.
 */
#ifndef UGVBC_H
#define UGVBC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ugvbc_status {
  UGVBC_OK = 0,
  UGVBC_ERR_VALIDATION = 2, /* bad config, bad arguments, parse errors */
  UGVBC_ERR_INFEASIBLE = 3, /* planning or allocation infeasible */
  UGVBC_ERR_RUNTIME = 4,    /* I/O or internal failure */
} ugvbc_status;

typedef struct ugvbc_config ugvbc_config;
typedef struct ugvbc_plan ugvbc_plan;
typedef struct ugvbc_run ugvbc_run;

const char* ugvbc_version(void);
/* Message describing the last failure on this thread ("" when none). */
const char* ugvbc_last_error(void);

/* ---- scenario configuration -------------------------------------------- */
ugvbc_status ugvbc_config_load(const char* path, ugvbc_config** out);
ugvbc_status ugvbc_config_parse(const char* text, ugvbc_config** out);
void ugvbc_config_free(ugvbc_config* config);
/* Overrides one numeric field by its config-file key. */
ugvbc_status ugvbc_config_set(ugvbc_config* config, const char* key,
                              double value);
ugvbc_status ugvbc_config_get(const ugvbc_config* config, const char* key,
                              double* out);

/* ---- network planning --------------------------------------------------- */
ugvbc_status ugvbc_plan_compute(const ugvbc_config* config, ugvbc_plan** out);
void ugvbc_plan_free(ugvbc_plan* plan);
int ugvbc_plan_layers(const ugvbc_plan* plan);
double ugvbc_plan_radius(const ugvbc_plan* plan);
long ugvbc_plan_cells(const ugvbc_plan* plan);
double ugvbc_plan_tags_per_cell(const ugvbc_plan* plan);
int ugvbc_plan_tags_per_cell_int(const ugvbc_plan* plan);
double ugvbc_plan_motion_time(const ugvbc_plan* plan);
double ugvbc_plan_block_length(const ugvbc_plan* plan);
double ugvbc_plan_tx_energy_budget(const ugvbc_plan* plan);
int ugvbc_plan_cell_layer(const ugvbc_plan* plan, long cell);
double ugvbc_plan_cell_distance(const ugvbc_plan* plan, long cell);
/* Human-readable summary; caller keeps the returned buffer until the plan is
 * freed. */
const char* ugvbc_plan_describe(const ugvbc_plan* plan);
ugvbc_status ugvbc_plan_trajectory_csv(const ugvbc_plan* plan,
                                       const char* path);

/* Closed-form layer count vs. the exhaustive oracle for this config. */
ugvbc_status ugvbc_oracle_check(const ugvbc_config* config, int* closed_form,
                                int* oracle);
/* Random-config comparison sweep; returns the number of mismatches and, when
 * report_path is non-NULL, writes one CSV line per draw. */
ugvbc_status ugvbc_oracle_sweep(int draws, uint64_t seed,
                                const char* report_path, int* mismatches);

/* ---- experiments --------------------------------------------------------- */
ugvbc_run* ugvbc_run_new(void);
void ugvbc_run_free(ugvbc_run* run);
ugvbc_status ugvbc_run_set_seed(ugvbc_run* run, uint64_t seed);
ugvbc_status ugvbc_run_set_trials(ugvbc_run* run, int trials);
ugvbc_status ugvbc_run_set_jobs(ugvbc_run* run, int jobs);
ugvbc_status ugvbc_run_set_mode(ugvbc_run* run, const char* mode); /* hd|fd */
ugvbc_status ugvbc_run_set_experiment_id(ugvbc_run* run, const char* id);
/* Comma-separated algorithm list: jo-sca,so-epa,so-fb,mrc-mrt,rzf. */
ugvbc_status ugvbc_run_set_algorithms(ugvbc_run* run, const char* algorithms);
/* At most two sweeps; values is a comma-separated numeric list. */
ugvbc_status ugvbc_run_add_sweep(ugvbc_run* run, const char* param,
                                 const char* values);
ugvbc_status ugvbc_run_set_channel_dump(ugvbc_run* run, const char* path);
/* Executes the experiment and writes the results CSV to out_path ("-" for
 * stdout). */
ugvbc_status ugvbc_run_execute(const ugvbc_config* config, const ugvbc_run* run,
                               const char* out_path);

/* ---- invariant selftest -------------------------------------------------- */
/* Prints one line per check when verbose; returns UGVBC_OK iff all pass. */
ugvbc_status ugvbc_selftest(int verbose);

#ifdef __cplusplus
}
#endif

#endif /* UGVBC_H */
