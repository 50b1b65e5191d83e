/*
 * vcsim — deterministic connected-vehicle traffic simulator with pluggable
 * cyberattack and defense models.
 *
 * C API of the shared library. All objects are opaque handles created and
 * destroyed through these functions; every fallible call returns a
 * vcsim_status, with a thread-local description available from
 * vcsim_last_error().
 */
#ifndef VCSIM_H
#define VCSIM_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vcsim_status {
    VCSIM_OK = 0,
    VCSIM_ERR_INVALID_ARGUMENT = 1,
    VCSIM_ERR_PARSE = 2,      /* malformed config / data file */
    VCSIM_ERR_VALIDATION = 3, /* well-formed but violates an invariant */
    VCSIM_ERR_IO = 4,
    VCSIM_ERR_MISMATCH = 5,   /* comparison inputs are incompatible */
    VCSIM_ERR_INTERNAL = 6
} vcsim_status;

typedef enum vcsim_scenario_kind {
    VCSIM_SCENARIO_SINGLE_ROAD = 0,
    VCSIM_SCENARIO_NETWORK = 1
} vcsim_scenario_kind;

typedef struct vcsim_scenario vcsim_scenario;     /* parsed experiment spec */
typedef struct vcsim_result vcsim_result;         /* one finished run */
typedef struct vcsim_comparison vcsim_comparison; /* baseline/attack/defense */

const char* vcsim_version(void);
const char* vcsim_status_name(vcsim_status status);

/* Description of the most recent error on this thread; empty string if the
 * last call succeeded. The pointer stays valid until the next API call on
 * the same thread. */
const char* vcsim_last_error(void);

/* ---- scenario ---------------------------------------------------------- */

/* Parses a JSON scenario config. base_dir (may be NULL) anchors relative
 * network/demand file paths, typically the config file's directory. */
vcsim_status vcsim_scenario_parse(const char* config_text,
                                  const char* base_dir, vcsim_scenario** out);
vcsim_status vcsim_scenario_load(const char* config_path, vcsim_scenario** out);
void vcsim_scenario_free(vcsim_scenario* scenario);

vcsim_scenario_kind vcsim_scenario_get_kind(const vcsim_scenario* scenario);

/* Canonical JSON rendering of the resolved config. Free with
 * vcsim_string_free. */
vcsim_status vcsim_scenario_render(const vcsim_scenario* scenario, char** out);
void vcsim_string_free(char* text);

/* Overrides applied after parsing (CLI flags). */
vcsim_status vcsim_scenario_set_dt(vcsim_scenario* scenario, double dt);
vcsim_status vcsim_scenario_set_seed(vcsim_scenario* scenario,
                                     unsigned long long seed);
vcsim_status vcsim_scenario_set_out_dir(vcsim_scenario* scenario,
                                        const char* dir);

/* Baseline / attack-only variants of a fully configured scenario, differing
 * only in the attack and defense blocks. */
vcsim_status vcsim_scenario_derive_baseline(const vcsim_scenario* full,
                                            vcsim_scenario** out);
vcsim_status vcsim_scenario_derive_attack_only(const vcsim_scenario* full,
                                               vcsim_scenario** out);

/* ---- runs -------------------------------------------------------------- */

/* Runs the scenario to completion (or its time horizon). A run that hits
 * the horizon with vehicles still en route still succeeds; inspect
 * vcsim_result_is_complete. */
vcsim_status vcsim_run(const vcsim_scenario* scenario, vcsim_result** out);
void vcsim_result_free(vcsim_result* result);

int vcsim_result_is_complete(const vcsim_result* result);
int vcsim_result_vehicle_count(const vcsim_result* result);
vcsim_status vcsim_result_travel_time(const vcsim_result* result,
                                      int vehicle_id, double* out);
double vcsim_result_mean_travel_time(const vcsim_result* result);
double vcsim_result_makespan(const vcsim_result* result);
double vcsim_result_throughput(const vcsim_result* result);
double vcsim_result_end_time(const vcsim_result* result);

/* Writes the run's full output set (trajectory CSV, plot series, metrics
 * summary; route records for network runs) into out_dir. */
vcsim_status vcsim_result_write_outputs(const vcsim_result* result,
                                        const char* out_dir);

/* ---- comparison -------------------------------------------------------- */

vcsim_status vcsim_compare(const vcsim_result* baseline,
                           const vcsim_result* attack,
                           const vcsim_result* defense,
                           vcsim_comparison** out);
void vcsim_comparison_free(vcsim_comparison* comparison);

double vcsim_comparison_attack_delta_pct(const vcsim_comparison* comparison);
double vcsim_comparison_defense_recovery_pct(
    const vcsim_comparison* comparison);
double vcsim_comparison_residual_delay_s(const vcsim_comparison* comparison);

vcsim_status vcsim_comparison_write(const vcsim_comparison* comparison,
                                    const char* path);

#ifdef __cplusplus
}
#endif

#endif /* VCSIM_H */
