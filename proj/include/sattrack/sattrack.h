/*
 * C interface to the sattrack library: satellite pass trajectories, the
 * open-loop alt-azimuth mount simulator, the velocity pattern search, and
 * pointing-loss analysis.
 *
 * Objects are opaque handles created by sattrack_*_create/load/generate
 * functions and released with the matching *_free function. Every fallible
 * call returns a sattrack_status; on failure sattrack_last_error() returns a
 * message describing the most recent error on the calling thread.
 */
#ifndef SATTRACK_SATTRACK_H
#define SATTRACK_SATTRACK_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(SATTRACK_BUILDING)
#    define SATTRACK_API __declspec(dllexport)
#  else
#    define SATTRACK_API __declspec(dllimport)
#  endif
#else
#  define SATTRACK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sattrack_status {
  SATTRACK_OK = 0,
  SATTRACK_E_INVALID_ARGUMENT = 1,
  SATTRACK_E_PARSE = 2,
  SATTRACK_E_IO = 3,
  SATTRACK_E_DOMAIN = 4,
  SATTRACK_E_RUNTIME = 5
} sattrack_status;

typedef enum sattrack_profile_label {
  SATTRACK_PROFILE_A = 0,      /* mount maximum velocities */
  SATTRACK_PROFILE_B = 1,      /* satellite maximum axis rates */
  SATTRACK_PROFILE_C = 2,      /* pattern-search optimum, velocities supplied */
  SATTRACK_PROFILE_CUSTOM = 3  /* velocities supplied */
} sattrack_profile_label;

typedef enum sattrack_phase {
  SATTRACK_PHASE_WAIT = 0,
  SATTRACK_PHASE_LATENCY = 1,
  SATTRACK_PHASE_MOVE_AZ = 2,
  SATTRACK_PHASE_MOVE_EL = 3
} sattrack_phase;

typedef struct sattrack_mount_config {
  double v_max_az;           /* deg/s */
  double v_max_el;           /* deg/s */
  double accel_az;           /* deg/s^2 */
  double accel_el;           /* deg/s^2 */
  double latency_s;
  double command_interval_s;
  double sim_step_s;
} sattrack_mount_config;

typedef struct sattrack_antenna_config {
  double gain_dbi;
  double efficiency;
  double frequency_hz;
  double hpbw_deg; /* NaN when not given */
} sattrack_antenna_config;

typedef struct sattrack_trace_record {
  double t;
  double sat_az;   /* unwrapped */
  double sat_el;
  double mount_az; /* unwrapped */
  double mount_el;
  sattrack_phase phase;
  double pointing_error;
} sattrack_trace_record;

typedef struct sattrack_summary {
  size_t records;
  double max_deg;
  double mean_deg;
  double rmse_deg;
  double p50_deg;
  double p90_deg;
  double p99_deg;
  double phase_fraction[4]; /* indexed by sattrack_phase */
} sattrack_summary;

typedef struct sattrack_report_info {
  double v_az;
  double v_el;
  double rmse_deg;
  int iterations;
  int evaluations;
  double final_step;
} sattrack_report_info;

typedef struct sattrack_trajectory sattrack_trajectory;
typedef struct sattrack_config sattrack_config;
typedef struct sattrack_trace sattrack_trace;
typedef struct sattrack_report sattrack_report;

SATTRACK_API const char* sattrack_version(void);
SATTRACK_API const char* sattrack_last_error(void);

/* ---- trajectories ---- */

SATTRACK_API sattrack_status sattrack_trajectory_load(const char* path,
                                                      sattrack_trajectory** out);
/* Azimuths may be wrapped; they are unwrapped on construction. */
SATTRACK_API sattrack_status sattrack_trajectory_from_samples(
    const double* t, const double* az, const double* el, size_t count,
    sattrack_trajectory** out);
SATTRACK_API sattrack_status sattrack_trajectory_generate(
    double peak_el_deg, double altitude_km, double step_s, double min_el_deg,
    sattrack_trajectory** out);
SATTRACK_API void sattrack_trajectory_free(sattrack_trajectory* traj);

SATTRACK_API size_t sattrack_trajectory_size(const sattrack_trajectory* traj);
SATTRACK_API double sattrack_trajectory_duration(const sattrack_trajectory* traj);
SATTRACK_API sattrack_status sattrack_trajectory_sample(
    const sattrack_trajectory* traj, size_t index, double* t, double* az, double* el);
SATTRACK_API sattrack_status sattrack_trajectory_sample_at(
    const sattrack_trajectory* traj, double t, double* az, double* el);
SATTRACK_API sattrack_status sattrack_trajectory_max_rates(
    const sattrack_trajectory* traj, double* v_az, double* v_el);
SATTRACK_API sattrack_status sattrack_trajectory_write(
    const sattrack_trajectory* traj, const char* path);

/* ---- configuration ---- */

SATTRACK_API void sattrack_mount_config_default(sattrack_mount_config* out);
SATTRACK_API sattrack_status sattrack_config_create(sattrack_config** out);
SATTRACK_API sattrack_status sattrack_config_load(const char* path,
                                                  sattrack_config** out);
SATTRACK_API void sattrack_config_free(sattrack_config* cfg);
SATTRACK_API sattrack_status sattrack_config_get_mount(const sattrack_config* cfg,
                                                       sattrack_mount_config* out);
SATTRACK_API sattrack_status sattrack_config_set_mount(sattrack_config* cfg,
                                                       const sattrack_mount_config* mount);
/* Returns SATTRACK_E_INVALID_ARGUMENT when the config has no [antenna]. */
SATTRACK_API sattrack_status sattrack_config_get_antenna(const sattrack_config* cfg,
                                                         sattrack_antenna_config* out);
SATTRACK_API sattrack_status sattrack_config_set_antenna(
    sattrack_config* cfg, const sattrack_antenna_config* antenna);

/* ---- simulation ---- */

SATTRACK_API sattrack_status sattrack_profile_a(const sattrack_config* cfg,
                                                double* v_az, double* v_el);
SATTRACK_API sattrack_status sattrack_profile_b(const sattrack_trajectory* traj,
                                                double* v_az, double* v_el);
/* For PROFILE_A and PROFILE_B the velocities are derived and v_az/v_el are
 * ignored. */
SATTRACK_API sattrack_status sattrack_simulate(const sattrack_trajectory* traj,
                                               const sattrack_config* cfg,
                                               sattrack_profile_label label,
                                               double v_az, double v_el,
                                               sattrack_trace** out);
SATTRACK_API double sattrack_pointing_error(double mount_az, double mount_el,
                                            double sat_az, double sat_el);

SATTRACK_API sattrack_status sattrack_trace_load(const char* path, sattrack_trace** out);
SATTRACK_API void sattrack_trace_free(sattrack_trace* trace);
SATTRACK_API size_t sattrack_trace_size(const sattrack_trace* trace);
SATTRACK_API sattrack_status sattrack_trace_record_at(const sattrack_trace* trace,
                                                      size_t index,
                                                      sattrack_trace_record* out);
SATTRACK_API size_t sattrack_trace_diagnostic_count(const sattrack_trace* trace);
SATTRACK_API const char* sattrack_trace_diagnostic(const sattrack_trace* trace,
                                                   size_t index);
SATTRACK_API sattrack_status sattrack_trace_write(const sattrack_trace* trace,
                                                  const char* path);
SATTRACK_API sattrack_status sattrack_trace_summary(const sattrack_trace* trace,
                                                    sattrack_summary* out);
SATTRACK_API sattrack_status sattrack_trace_write_summary(const sattrack_trace* trace,
                                                          const char* path);

/* ---- velocity optimization ---- */

/* Uses the mount and [aps] settings of cfg; starts from profile B. */
SATTRACK_API sattrack_status sattrack_optimize(const sattrack_trajectory* traj,
                                               const sattrack_config* cfg,
                                               sattrack_report** out);
SATTRACK_API void sattrack_report_free(sattrack_report* report);
SATTRACK_API sattrack_status sattrack_report_info_get(const sattrack_report* report,
                                                      sattrack_report_info* out);
SATTRACK_API sattrack_status sattrack_report_write(const sattrack_report* report,
                                                   const char* text_path,
                                                   const char* history_path);

/* ---- link budget ---- */

SATTRACK_API sattrack_status sattrack_aperture_from_gain(double gain_dbi,
                                                         double efficiency,
                                                         double frequency_hz,
                                                         double* aperture_m2);
SATTRACK_API sattrack_status sattrack_pointing_loss(
    double alpha_e_deg, const sattrack_antenna_config* antenna, double* loss_db);
SATTRACK_API sattrack_status sattrack_far_field_ok(double distance_m, double gain_tx,
                                                   double gain_rx, double wavelength_m,
                                                   double margin, int* ok,
                                                   double* ratio);
SATTRACK_API sattrack_status sattrack_received_power(double p_t_watts,
                                                     double spreading_db,
                                                     double absorption_db,
                                                     double pointing_db,
                                                     double* p_r_watts);
/* out_of_domain may be NULL. */
SATTRACK_API sattrack_status sattrack_write_loss_series(
    const sattrack_trace* trace, const sattrack_antenna_config* antenna,
    const char* path, size_t* out_of_domain);
SATTRACK_API sattrack_status sattrack_write_roc(const sattrack_trace* trace,
                                                const sattrack_antenna_config* antenna,
                                                double window_s, double step_s,
                                                const char* path);
/* Rate of change of a uniform (t, lp_db) series. Writes at most `capacity`
 * outputs and always stores the full output length in *count. */
SATTRACK_API sattrack_status sattrack_roc(const double* t, const double* lp_db,
                                          size_t n, double window_s, double step_s,
                                          double* t_out, double* roc_out,
                                          size_t capacity, size_t* count);

/* ---- analysis ---- */

SATTRACK_API sattrack_status sattrack_write_ecdf(const sattrack_trace* trace,
                                                 const char* path);
/* x_out and f_out need room for n values; *m receives the number written. */
SATTRACK_API sattrack_status sattrack_ecdf(const double* values, size_t n,
                                           double* x_out, double* f_out, size_t* m);
SATTRACK_API sattrack_status sattrack_fraction_within(const double* values, size_t n,
                                                      double threshold,
                                                      double* fraction);

#ifdef __cplusplus
}
#endif

#endif /* SATTRACK_SATTRACK_H */
