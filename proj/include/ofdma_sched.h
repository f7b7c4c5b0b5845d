#ifndef OFDMA_SCHED_H
#define OFDMA_SCHED_H

/*
 * C interface to the OFDMA uplink scheduling-duration simulator.
 *
 * Ownership:
 *   - Handles returned through out-parameters belong to the caller and are
 *     released with the matching *_free function. Passing NULL to a *_free
 *     function is a no-op.
 *   - Strings returned by ofdma_last_error() and ofdma_version() are owned by
 *     the library. The error string is per thread and valid until the next
 *     failing call on that thread.
 *
 * Every fallible call returns an ofdma_status; OFDMA_OK is zero.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(OFDMA_SCHED_BUILDING)
#    define OFDMA_API __declspec(dllexport)
#  else
#    define OFDMA_API __declspec(dllimport)
#  endif
#else
#  define OFDMA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ofdma_status {
  OFDMA_OK = 0,
  OFDMA_ERR_INVALID_ARGUMENT = 1,
  OFDMA_ERR_CONFIG = 2,
  OFDMA_ERR_IO = 3,
  OFDMA_ERR_INFEASIBLE = 4,
  OFDMA_ERR_INTERNAL = 5
} ofdma_status;

typedef enum ofdma_policy_kind {
  OFDMA_POLICY_FIXED = 0,
  OFDMA_POLICY_THROUGHPUT_OPTIMAL = 1,
  OFDMA_POLICY_DPPDU = 2,
  OFDMA_POLICY_EADPPDU = 3
} ofdma_policy_kind;

typedef enum ofdma_problem {
  OFDMA_PROBLEM_PADDING = 0,
  OFDMA_PROBLEM_ENERGY = 1
} ofdma_problem;

/* Opaque handles. */
typedef struct ofdma_config ofdma_config;
typedef struct ofdma_report ofdma_report;

/* Headline (group 1) scalars of one run. Per-user arrays are owned by the
 * report and stay valid until it is freed. */
typedef struct ofdma_metrics {
  int policy; /* ofdma_policy_kind */
  double v;
  double fixed_ts_ms;
  uint64_t measured_slots;
  double avg_h_tot_ms;
  double avg_ts_ms;
  double avg_s_tot;
  double avg_x_sum;
  double avg_y_sum;
  double avg_exchange_us;
  double x_sum_quarter_mean[4];
  size_t num_users;
  const double* avg_f;
  const double* avg_e_mj;
} ofdma_metrics;

OFDMA_API const char* ofdma_version(void);
OFDMA_API const char* ofdma_last_error(void);
OFDMA_API const char* ofdma_status_name(ofdma_status status);

/* Configuration. */
OFDMA_API ofdma_status ofdma_config_load(const char* path, ofdma_config** out);
OFDMA_API ofdma_status ofdma_config_parse(const char* json_text,
                                          ofdma_config** out);
OFDMA_API void ofdma_config_free(ofdma_config* config);
OFDMA_API ofdma_status ofdma_config_set_seed(ofdma_config* config,
                                             uint64_t seed);
OFDMA_API ofdma_status ofdma_config_set_horizon(ofdma_config* config,
                                                uint64_t horizon_slots);
OFDMA_API ofdma_status ofdma_config_set_trace(ofdma_config* config,
                                              int enabled);
OFDMA_API ofdma_status ofdma_config_set_out_dir(ofdma_config* config,
                                                const char* out_dir);
/* Copies the resolved output directory into buf (NUL-terminated). */
OFDMA_API ofdma_status ofdma_config_out_dir(const ofdma_config* config,
                                            char* buf, size_t buf_len);
/* V values from the config's v_list. Writes up to cap values, sets *count to
 * the total available. */
OFDMA_API ofdma_status ofdma_config_v_list(const ofdma_config* config,
                                           double* values, size_t cap,
                                           size_t* count);

/* Experiments. */
OFDMA_API ofdma_status ofdma_run(const ofdma_config* config,
                                 ofdma_report** out);
OFDMA_API ofdma_status ofdma_sweep(const ofdma_config* config,
                                   const double* v_values, size_t count,
                                   ofdma_report** out);
/* Always yields a report with the per-candidate table. When no candidate is
 * feasible, ofdma_report_search_best() returns OFDMA_ERR_INFEASIBLE. */
OFDMA_API ofdma_status ofdma_search(const ofdma_config* config,
                                    ofdma_problem problem, ofdma_report** out);

OFDMA_API size_t ofdma_report_count(const ofdma_report* report);
OFDMA_API ofdma_status ofdma_report_metrics(const ofdma_report* report,
                                            size_t index, ofdma_metrics* out);
OFDMA_API ofdma_status ofdma_report_search_best(const ofdma_report* report,
                                                double* best_ts_ms);
/* Writes metrics.csv, run.json, traces.csv (when tracing) and, for searches,
 * search.csv into out_dir. */
OFDMA_API ofdma_status ofdma_report_write(const ofdma_report* report,
                                          const char* out_dir);
OFDMA_API void ofdma_report_free(ofdma_report* report);

/* Protocol-time arithmetic, microseconds. */
OFDMA_API ofdma_status ofdma_trigger_frame_time_us(int num_users,
                                                   double* out_us);
OFDMA_API ofdma_status ofdma_exchange_time_us(ofdma_policy_kind kind,
                                              double ts_ms, int num_users,
                                              double* out_us);
/* 1 when D-PPDU saves air time versus a fixed ts, 0 otherwise, -1 on bad
 * input. */
OFDMA_API int ofdma_dppdu_breakeven(double ts_fixed_ms, double t_min_ms);

#ifdef __cplusplus
}
#endif

#endif /* OFDMA_SCHED_H */
