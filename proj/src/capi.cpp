#include "sattrack/sattrack.h"

#include <cmath>
#include <exception>
#include <limits>
#include <new>
#include <string>

#include "sattrack/analysis.hpp"
#include "sattrack/config.hpp"
#include "sattrack/error.hpp"
#include "sattrack/link_budget.hpp"
#include "sattrack/optimizer.hpp"
#include "sattrack/simulation.hpp"
#include "sattrack/trajectory.hpp"

struct sattrack_trajectory {
  sattrack::PassTrajectory value;
};
struct sattrack_config {
  sattrack::RunConfig value;
};
struct sattrack_trace {
  sattrack::SimulationTrace value;
};
struct sattrack_report {
  sattrack::OptimizationReport value;
};

namespace {

thread_local std::string g_last_error;

sattrack_status to_status(sattrack::ErrorKind kind) {
  switch (kind) {
    case sattrack::ErrorKind::InvalidArgument: return SATTRACK_E_INVALID_ARGUMENT;
    case sattrack::ErrorKind::Parse: return SATTRACK_E_PARSE;
    case sattrack::ErrorKind::Io: return SATTRACK_E_IO;
    case sattrack::ErrorKind::Domain: return SATTRACK_E_DOMAIN;
    case sattrack::ErrorKind::Runtime: return SATTRACK_E_RUNTIME;
  }
  return SATTRACK_E_RUNTIME;
}

template <class F>
sattrack_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return SATTRACK_OK;
  } catch (const sattrack::Error& e) {
    g_last_error = e.what();
    return to_status(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SATTRACK_E_RUNTIME;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SATTRACK_E_RUNTIME;
  }
}

template <class T>
void require(const T* p, const char* name) {
  if (!p)
    sattrack::fail(sattrack::ErrorKind::InvalidArgument,
                   std::string(name) + " must not be null");
}

sattrack::AntennaConfig to_cpp(const sattrack_antenna_config& a) {
  sattrack::AntennaConfig out{a.gain_dbi, a.efficiency, a.frequency_hz, std::nullopt};
  if (!std::isnan(a.hpbw_deg)) out.hpbw_deg = a.hpbw_deg;
  return out;
}

sattrack_antenna_config to_c(const sattrack::AntennaConfig& a) {
  return {a.gain_dbi, a.efficiency, a.frequency_hz,
          a.hpbw_deg.value_or(std::numeric_limits<double>::quiet_NaN())};
}

}  // namespace

extern "C" {

const char* sattrack_version(void) { return "1.0.0"; }

const char* sattrack_last_error(void) { return g_last_error.c_str(); }

sattrack_status sattrack_trajectory_load(const char* path, sattrack_trajectory** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new sattrack_trajectory{sattrack::load_trajectory(path)};
  });
}

sattrack_status sattrack_trajectory_from_samples(const double* t, const double* az,
                                                 const double* el, size_t count,
                                                 sattrack_trajectory** out) {
  return guarded([&] {
    require(out, "out");
    if (count > 0) {
      require(t, "t");
      require(az, "az");
      require(el, "el");
    }
    const auto unwrapped = sattrack::unwrap_azimuth(std::span<const double>(az, count));
    std::vector<sattrack::AngularSample> samples(count);
    for (size_t i = 0; i < count; ++i) samples[i] = {t[i], unwrapped[i], el[i]};
    *out = new sattrack_trajectory{sattrack::PassTrajectory(std::move(samples))};
  });
}

sattrack_status sattrack_trajectory_generate(double peak_el_deg, double altitude_km,
                                             double step_s, double min_el_deg,
                                             sattrack_trajectory** out) {
  return guarded([&] {
    require(out, "out");
    *out = new sattrack_trajectory{sattrack::generate_synthetic_pass(
        {peak_el_deg, altitude_km, step_s, min_el_deg})};
  });
}

void sattrack_trajectory_free(sattrack_trajectory* traj) { delete traj; }

size_t sattrack_trajectory_size(const sattrack_trajectory* traj) {
  return traj ? traj->value.size() : 0;
}

double sattrack_trajectory_duration(const sattrack_trajectory* traj) {
  return traj ? traj->value.duration() : 0.0;
}

sattrack_status sattrack_trajectory_sample(const sattrack_trajectory* traj, size_t index,
                                           double* t, double* az, double* el) {
  return guarded([&] {
    require(traj, "trajectory");
    if (index >= traj->value.size())
      sattrack::fail(sattrack::ErrorKind::InvalidArgument, "sample index out of range");
    const auto& s = traj->value.samples()[index];
    if (t) *t = s.t;
    if (az) *az = s.az;
    if (el) *el = s.el;
  });
}

sattrack_status sattrack_trajectory_sample_at(const sattrack_trajectory* traj, double t,
                                              double* az, double* el) {
  return guarded([&] {
    require(traj, "trajectory");
    const auto p = sattrack::sample_at(traj->value, t);
    if (az) *az = p.az;
    if (el) *el = p.el;
  });
}

sattrack_status sattrack_trajectory_max_rates(const sattrack_trajectory* traj,
                                              double* v_az, double* v_el) {
  return guarded([&] {
    require(traj, "trajectory");
    const auto r = sattrack::max_axis_rates(traj->value);
    if (v_az) *v_az = r.az;
    if (v_el) *v_el = r.el;
  });
}

sattrack_status sattrack_trajectory_write(const sattrack_trajectory* traj,
                                          const char* path) {
  return guarded([&] {
    require(traj, "trajectory");
    require(path, "path");
    sattrack::write_trajectory(traj->value, path);
  });
}

void sattrack_mount_config_default(sattrack_mount_config* out) {
  if (!out) return;
  const sattrack::MountConfig m;
  *out = {m.v_max_az, m.v_max_el, m.accel_az, m.accel_el,
          m.latency_l, m.command_interval_dt, m.sim_step};
}

sattrack_status sattrack_config_create(sattrack_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new sattrack_config{};
  });
}

sattrack_status sattrack_config_load(const char* path, sattrack_config** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new sattrack_config{sattrack::load_run_config(path)};
  });
}

void sattrack_config_free(sattrack_config* cfg) { delete cfg; }

sattrack_status sattrack_config_get_mount(const sattrack_config* cfg,
                                          sattrack_mount_config* out) {
  return guarded([&] {
    require(cfg, "config");
    require(out, "out");
    const auto& m = cfg->value.mount;
    *out = {m.v_max_az, m.v_max_el, m.accel_az, m.accel_el,
            m.latency_l, m.command_interval_dt, m.sim_step};
  });
}

sattrack_status sattrack_config_set_mount(sattrack_config* cfg,
                                          const sattrack_mount_config* mount) {
  return guarded([&] {
    require(cfg, "config");
    require(mount, "mount");
    const sattrack::MountConfig m{mount->v_max_az,  mount->v_max_el,
                                  mount->accel_az,  mount->accel_el,
                                  mount->latency_s, mount->command_interval_s,
                                  mount->sim_step_s};
    m.validate();
    cfg->value.mount = m;
  });
}

sattrack_status sattrack_config_get_antenna(const sattrack_config* cfg,
                                            sattrack_antenna_config* out) {
  return guarded([&] {
    require(cfg, "config");
    require(out, "out");
    if (!cfg->value.antenna)
      sattrack::fail(sattrack::ErrorKind::InvalidArgument,
                     "configuration has no [antenna] section");
    *out = to_c(*cfg->value.antenna);
  });
}

sattrack_status sattrack_config_set_antenna(sattrack_config* cfg,
                                            const sattrack_antenna_config* antenna) {
  return guarded([&] {
    require(cfg, "config");
    require(antenna, "antenna");
    auto a = to_cpp(*antenna);
    a.validate();
    cfg->value.antenna = a;
  });
}

sattrack_status sattrack_profile_a(const sattrack_config* cfg, double* v_az,
                                   double* v_el) {
  return guarded([&] {
    require(cfg, "config");
    const auto p = sattrack::profile_A(cfg->value.mount);
    if (v_az) *v_az = p.v_az;
    if (v_el) *v_el = p.v_el;
  });
}

sattrack_status sattrack_profile_b(const sattrack_trajectory* traj, double* v_az,
                                   double* v_el) {
  return guarded([&] {
    require(traj, "trajectory");
    const auto p = sattrack::profile_B(traj->value);
    if (v_az) *v_az = p.v_az;
    if (v_el) *v_el = p.v_el;
  });
}

sattrack_status sattrack_simulate(const sattrack_trajectory* traj,
                                  const sattrack_config* cfg,
                                  sattrack_profile_label label, double v_az,
                                  double v_el, sattrack_trace** out) {
  return guarded([&] {
    require(traj, "trajectory");
    require(cfg, "config");
    require(out, "out");
    sattrack::VelocityProfile profile;
    switch (label) {
      case SATTRACK_PROFILE_A: profile = sattrack::profile_A(cfg->value.mount); break;
      case SATTRACK_PROFILE_B: profile = sattrack::profile_B(traj->value); break;
      case SATTRACK_PROFILE_C: profile = {sattrack::ProfileLabel::C, v_az, v_el}; break;
      case SATTRACK_PROFILE_CUSTOM:
        profile = {sattrack::ProfileLabel::Custom, v_az, v_el};
        break;
      default:
        sattrack::fail(sattrack::ErrorKind::InvalidArgument, "unknown profile label");
    }
    sattrack::SimulationOptions options;
    options.axis_order = cfg->value.axis_order;
    *out = new sattrack_trace{
        sattrack::simulate(traj->value, cfg->value.mount, profile, options)};
  });
}

double sattrack_pointing_error(double mount_az, double mount_el, double sat_az,
                               double sat_el) {
  return sattrack::pointing_error(mount_az, mount_el, sat_az, sat_el);
}

sattrack_status sattrack_trace_load(const char* path, sattrack_trace** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new sattrack_trace{sattrack::load_trace(path)};
  });
}

void sattrack_trace_free(sattrack_trace* trace) { delete trace; }

size_t sattrack_trace_size(const sattrack_trace* trace) {
  return trace ? trace->value.records.size() : 0;
}

sattrack_status sattrack_trace_record_at(const sattrack_trace* trace, size_t index,
                                         sattrack_trace_record* out) {
  return guarded([&] {
    require(trace, "trace");
    require(out, "out");
    if (index >= trace->value.records.size())
      sattrack::fail(sattrack::ErrorKind::InvalidArgument, "record index out of range");
    const auto& r = trace->value.records[index];
    *out = {r.t,        r.sat_az, r.sat_el, r.mount_az, r.mount_el,
            static_cast<sattrack_phase>(r.phase), r.pointing_error};
  });
}

size_t sattrack_trace_diagnostic_count(const sattrack_trace* trace) {
  return trace ? trace->value.diagnostics.size() : 0;
}

const char* sattrack_trace_diagnostic(const sattrack_trace* trace, size_t index) {
  if (!trace || index >= trace->value.diagnostics.size()) return nullptr;
  return trace->value.diagnostics[index].c_str();
}

sattrack_status sattrack_trace_write(const sattrack_trace* trace, const char* path) {
  return guarded([&] {
    require(trace, "trace");
    require(path, "path");
    sattrack::write_trace(trace->value, path);
  });
}

sattrack_status sattrack_trace_summary(const sattrack_trace* trace,
                                       sattrack_summary* out) {
  return guarded([&] {
    require(trace, "trace");
    require(out, "out");
    const auto s = sattrack::summarize(trace->value);
    *out = {s.records, s.max_deg, s.mean_deg, s.rmse_deg, s.p50_deg, s.p90_deg,
            s.p99_deg, {}};
    for (int i = 0; i < 4; ++i) out->phase_fraction[i] = s.phase_fraction[i];
  });
}

sattrack_status sattrack_trace_write_summary(const sattrack_trace* trace,
                                             const char* path) {
  return guarded([&] {
    require(trace, "trace");
    require(path, "path");
    sattrack::write_summary(sattrack::summarize(trace->value), path);
  });
}

sattrack_status sattrack_optimize(const sattrack_trajectory* traj,
                                  const sattrack_config* cfg, sattrack_report** out) {
  return guarded([&] {
    require(traj, "trajectory");
    require(cfg, "config");
    require(out, "out");
    *out = new sattrack_report{
        sattrack::aps_optimize(traj->value, cfg->value.mount, cfg->value.aps)};
  });
}

void sattrack_report_free(sattrack_report* report) { delete report; }

sattrack_status sattrack_report_info_get(const sattrack_report* report,
                                         sattrack_report_info* out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    const auto& r = report->value;
    *out = {r.best_profile.v_az, r.best_profile.v_el, r.best_rmse,
            r.iterations,        r.evaluations,       r.final_step};
  });
}

sattrack_status sattrack_report_write(const sattrack_report* report,
                                      const char* text_path, const char* history_path) {
  return guarded([&] {
    require(report, "report");
    require(text_path, "text_path");
    require(history_path, "history_path");
    sattrack::write_report(report->value, text_path, history_path);
  });
}

sattrack_status sattrack_aperture_from_gain(double gain_dbi, double efficiency,
                                            double frequency_hz, double* aperture_m2) {
  return guarded([&] {
    require(aperture_m2, "aperture_m2");
    *aperture_m2 = sattrack::aperture_from_gain(gain_dbi, efficiency, frequency_hz);
  });
}

sattrack_status sattrack_pointing_loss(double alpha_e_deg,
                                       const sattrack_antenna_config* antenna,
                                       double* loss_db) {
  return guarded([&] {
    require(antenna, "antenna");
    require(loss_db, "loss_db");
    *loss_db = sattrack::pointing_loss(alpha_e_deg, to_cpp(*antenna)).db;
  });
}

sattrack_status sattrack_far_field_ok(double distance_m, double gain_tx, double gain_rx,
                                      double wavelength_m, double margin, int* ok,
                                      double* ratio) {
  return guarded([&] {
    const auto r =
        sattrack::far_field_ok(distance_m, gain_tx, gain_rx, wavelength_m, margin);
    if (ok) *ok = r.ok ? 1 : 0;
    if (ratio) *ratio = r.ratio;
  });
}

sattrack_status sattrack_received_power(double p_t_watts, double spreading_db,
                                        double absorption_db, double pointing_db,
                                        double* p_r_watts) {
  return guarded([&] {
    require(p_r_watts, "p_r_watts");
    *p_r_watts = sattrack::received_power(
        p_t_watts, {spreading_db, absorption_db, pointing_db});
  });
}

sattrack_status sattrack_write_loss_series(const sattrack_trace* trace,
                                           const sattrack_antenna_config* antenna,
                                           const char* path, size_t* out_of_domain) {
  return guarded([&] {
    require(trace, "trace");
    require(antenna, "antenna");
    require(path, "path");
    const auto series = sattrack::pointing_loss_series(trace->value, to_cpp(*antenna));
    sattrack::write_loss_series(series, path);
    if (out_of_domain) *out_of_domain = series.out_of_domain_count;
  });
}

sattrack_status sattrack_write_roc(const sattrack_trace* trace,
                                   const sattrack_antenna_config* antenna,
                                   double window_s, double step_s, const char* path) {
  return guarded([&] {
    require(trace, "trace");
    require(antenna, "antenna");
    require(path, "path");
    const auto series = sattrack::pointing_loss_series(trace->value, to_cpp(*antenna));
    sattrack::write_roc(sattrack::roc(series.samples, window_s, step_s), path);
  });
}

sattrack_status sattrack_roc(const double* t, const double* lp_db, size_t n,
                             double window_s, double step_s, double* t_out,
                             double* roc_out, size_t capacity, size_t* count) {
  return guarded([&] {
    require(count, "count");
    if (n > 0) {
      require(t, "t");
      require(lp_db, "lp_db");
    }
    std::vector<sattrack::LossSample> series(n);
    for (size_t i = 0; i < n; ++i) series[i] = {t[i], lp_db[i], false};
    const auto r = sattrack::roc(series, window_s, step_s);
    *count = r.size();
    for (size_t i = 0; i < r.size() && i < capacity; ++i) {
      if (t_out) t_out[i] = r[i].t;
      if (roc_out) roc_out[i] = r[i].db_per_s;
    }
  });
}

sattrack_status sattrack_write_ecdf(const sattrack_trace* trace, const char* path) {
  return guarded([&] {
    require(trace, "trace");
    require(path, "path");
    sattrack::write_ecdf(sattrack::ecdf(sattrack::pointing_errors(trace->value)), path);
  });
}

sattrack_status sattrack_ecdf(const double* values, size_t n, double* x_out,
                              double* f_out, size_t* m) {
  return guarded([&] {
    require(m, "m");
    if (n > 0) require(values, "values");
    const auto e = sattrack::ecdf(std::span<const double>(values, n));
    *m = e.points.size();
    for (size_t i = 0; i < e.points.size(); ++i) {
      if (x_out) x_out[i] = e.points[i].x;
      if (f_out) f_out[i] = e.points[i].F;
    }
  });
}

sattrack_status sattrack_fraction_within(const double* values, size_t n,
                                         double threshold, double* fraction) {
  return guarded([&] {
    require(fraction, "fraction");
    if (n > 0) require(values, "values");
    *fraction = sattrack::fraction_within(std::span<const double>(values, n), threshold);
  });
}

}  // extern "C"
