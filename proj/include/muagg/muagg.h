/* muagg - MU-MIMO downlink aggregation simulator, C API.
 *
 * All simulator functionality is reachable through this header: build a
 * configuration (defaults, preset, file, key=value), run it, and read the
 * resulting metrics. Handles are opaque; every fallible call returns a
 * muagg_status and leaves a message retrievable via muagg_last_error().
 * Distinct handles may be used from distinct threads concurrently.
 */
#ifndef MUAGG_H
#define MUAGG_H

#include <stddef.h>

#if defined(_WIN32)
#define MUAGG_API __declspec(dllexport)
#else
#define MUAGG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    MUAGG_OK = 0,
    MUAGG_ERR_INVALID_ARGUMENT = 1, /* bad parameter or config value */
    MUAGG_ERR_IO = 2,               /* file could not be read or written */
    MUAGG_ERR_UNKNOWN_NAME = 3,     /* no such preset, key, or metric */
    MUAGG_ERR_INTERNAL = 4          /* simulator invariant violated */
} muagg_status;

typedef struct muagg_config_s muagg_config;
typedef struct muagg_result_s muagg_result;

MUAGG_API const char* muagg_version(void);

/* Message for the most recent failing call on this thread ("" if none). */
MUAGG_API const char* muagg_last_error(void);

/* --- configuration ------------------------------------------------------ */

MUAGG_API muagg_config* muagg_config_new(void); /* defaults */
MUAGG_API muagg_config* muagg_config_preset(const char* name); /* NULL if unknown */
MUAGG_API muagg_config* muagg_config_clone(const muagg_config* cfg);
MUAGG_API void muagg_config_free(muagg_config* cfg);

MUAGG_API muagg_status muagg_config_load(muagg_config* cfg, const char* path);
MUAGG_API muagg_status muagg_config_set(muagg_config* cfg, const char* key,
                                        const char* value);
MUAGG_API muagg_status muagg_config_get(const muagg_config* cfg, const char* key,
                                        char* buf, size_t bufsize);

/* Resolved configuration as a JSON object (owned by cfg, valid until the
 * next call on it). */
MUAGG_API const char* muagg_config_json(muagg_config* cfg);

/* Appends one scripted arrival; a non-empty script replaces the Poisson
 * process and the run drains the buffer after the last arrival. */
MUAGG_API muagg_status muagg_config_script_arrival(muagg_config* cfg,
                                                   double time_us,
                                                   unsigned destination);

/* --- simulation --------------------------------------------------------- */

MUAGG_API muagg_status muagg_run(const muagg_config* cfg, muagg_result** out);

/* As muagg_run, additionally writing the event trace to trace_path
 * (tab-separated; see README for the columns). */
MUAGG_API muagg_status muagg_run_traced(const muagg_config* cfg,
                                        const char* trace_path,
                                        muagg_result** out);

/* --- results ------------------------------------------------------------ */

/* Named scalar metric: blocking_probability, mean_delay_s, throughput_bps,
 * mean_streams, mean_ampdu, mean_aggregated, their *_ci half-widths, and the
 * counts offered, accepted, blocked, delivered, residual, cycles,
 * sim_time_s, mean_occupancy. */
MUAGG_API muagg_status muagg_result_metric(const muagg_result* res,
                                           const char* name, double* out);

/* Full result (config echo + metrics) as JSON, owned by the result. */
MUAGG_API const char* muagg_result_json(const muagg_result* res);

MUAGG_API void muagg_result_free(muagg_result* res);

/* --- parameter sweeps ----------------------------------------------------- */

typedef struct muagg_sweep_s muagg_sweep;

/* Sweep spec file: base config keys plus axis, values (or range), and
 * replications. NULL on error (see muagg_last_error). */
MUAGG_API muagg_sweep* muagg_sweep_load(const char* path);
MUAGG_API muagg_sweep* muagg_sweep_preset(const char* name);
MUAGG_API void muagg_sweep_free(muagg_sweep* sweep);

MUAGG_API const char* muagg_sweep_axis(const muagg_sweep* sweep);
MUAGG_API size_t muagg_sweep_point_count(const muagg_sweep* sweep);
MUAGG_API double muagg_sweep_point_value(const muagg_sweep* sweep, size_t i);
MUAGG_API int muagg_sweep_replications(const muagg_sweep* sweep);

/* Resolved spec as JSON (owned by the sweep handle). */
MUAGG_API const char* muagg_sweep_json(muagg_sweep* sweep);

/* Fully resolved config for one (point, replication): base config with the
 * axis value applied and seed = base seed + replication. Caller frees. */
MUAGG_API muagg_config* muagg_sweep_point_config(const muagg_sweep* sweep,
                                                 size_t i, int replication);

/* --- analytical timing --------------------------------------------------- */

typedef struct {
    double backoff_us;
    double difs_us;
    double rts_us;
    double cts_phase_us;
    double ampdu_us;
    double ba_phase_us;
    double total_us;
} muagg_cycle_breakdown;

/* Mean duration of one cycle with m streams of b packets under cfg's PHY
 * parameters and antenna count. */
MUAGG_API muagg_status muagg_timing(const muagg_config* cfg, int m, int b,
                                    muagg_cycle_breakdown* out);

/* Saturation throughput (bits/s) for cfg's antenna count and A-MPDU limit. */
MUAGG_API muagg_status muagg_smax(const muagg_config* cfg, double* out_bps);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MUAGG_H */
