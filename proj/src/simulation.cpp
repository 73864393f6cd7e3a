#include "sattrack/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "io_util.hpp"
#include "sattrack/angles.hpp"
#include "sattrack/error.hpp"

namespace sattrack {

std::string_view to_string(ProfileLabel label) {
  switch (label) {
    case ProfileLabel::A: return "A";
    case ProfileLabel::B: return "B";
    case ProfileLabel::C: return "C";
    case ProfileLabel::Custom: return "custom";
  }
  return "custom";
}

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::Wait: return "WAIT";
    case Phase::Latency: return "LATENCY";
    case Phase::MoveAz: return "MOVE_AZ";
    case Phase::MoveEl: return "MOVE_EL";
  }
  return "WAIT";
}

Phase parse_phase(std::string_view name) {
  for (Phase p : {Phase::Wait, Phase::Latency, Phase::MoveAz, Phase::MoveEl})
    if (to_string(p) == name) return p;
  fail(ErrorKind::Parse, "unknown phase '" + std::string(name) + "'");
}

double pointing_error(double mount_az, double mount_el, double sat_az,
                      double sat_el) {
  const double d_el = deg2rad(sat_el - mount_el);
  const double d_az = deg2rad(wrap180(sat_az - mount_az));
  const double s_el = std::sin(0.5 * d_el);
  const double s_az = std::sin(0.5 * d_az);
  double h = s_el * s_el +
             std::cos(deg2rad(mount_el)) * std::cos(deg2rad(sat_el)) * s_az * s_az;
  h = std::clamp(h, 0.0, 1.0);
  return rad2deg(2.0 * std::asin(std::sqrt(h)));
}

VelocityProfile clamp_profile(const VelocityProfile& profile,
                              const MountConfig& cfg,
                              std::vector<std::string>* diagnostics) {
  VelocityProfile out = profile;
  if (out.v_az > cfg.v_max_az) {
    if (diagnostics)
      diagnostics->push_back("azimuth velocity " + io::fmt(out.v_az) +
                             " clamped to mount limit " + io::fmt(cfg.v_max_az));
    out.v_az = cfg.v_max_az;
  }
  if (out.v_el > cfg.v_max_el) {
    if (diagnostics)
      diagnostics->push_back("elevation velocity " + io::fmt(out.v_el) +
                             " clamped to mount limit " + io::fmt(cfg.v_max_el));
    out.v_el = cfg.v_max_el;
  }
  return out;
}

VelocityProfile profile_A(const MountConfig& cfg) {
  cfg.validate();
  return {ProfileLabel::A, cfg.v_max_az, cfg.v_max_el};
}

VelocityProfile profile_B(const PassTrajectory& traj) {
  const auto rates = max_axis_rates(traj);
  if (!(rates.az > 0.0) || !(rates.el > 0.0))
    fail(ErrorKind::InvalidArgument,
         "profile B: satellite is stationary on at least one axis (max rates " +
             io::fmt(rates.az) + ", " + io::fmt(rates.el) +
             " deg/s); a zero velocity profile cannot move the mount");
  return {ProfileLabel::B, rates.az, rates.el};
}

namespace {

// Number of whole simulation steps needed to cover `seconds`, rounding up.
// The small slack absorbs representation error in exact multiples.
long steps_for(double seconds, double step) {
  if (seconds <= 0.0) return 0;
  return static_cast<long>(std::ceil(seconds / step - 1e-9));
}

}  // namespace

SimulationTrace simulate(const PassTrajectory& traj, const MountConfig& cfg,
                         const VelocityProfile& profile,
                         const SimulationOptions& options) {
  cfg.validate();
  if (!(profile.v_az > 0.0) || !(profile.v_el > 0.0) ||
      !std::isfinite(profile.v_az) || !std::isfinite(profile.v_el))
    fail(ErrorKind::InvalidArgument,
         "velocity profile must be positive on both axes (got " +
             io::fmt(profile.v_az) + ", " + io::fmt(profile.v_el) + ")");
  if (traj.duration() < 2.0 * cfg.command_interval_dt)
    fail(ErrorKind::InvalidArgument,
         "trajectory spans " + io::fmt(traj.duration()) +
             " s, shorter than two command intervals");

  SimulationTrace trace;
  trace.mount = cfg;
  trace.trajectory_id = options.trajectory_id;
  trace.profile = clamp_profile(profile, cfg, &trace.diagnostics);

  const double h = cfg.sim_step;
  const double t0 = traj.start_time();
  const double t_end = traj.end_time();
  const long last = static_cast<long>(std::floor(traj.duration() / h + 1e-9));
  const long latency_steps = steps_for(cfg.latency_l, h);
  const long interval_steps = std::max(1L, steps_for(cfg.command_interval_dt, h));

  trace.records.resize(static_cast<std::size_t>(last + 1));
  auto emit = [&](long k, Phase phase, double az, double el) {
    if (k > last) return;
    const double t = t0 + static_cast<double>(k) * h;
    const auto sat = sample_at(traj, std::min(t, t_end));
    auto& r = trace.records[static_cast<std::size_t>(k)];
    r = {t, sat.az, sat.el, az, el, phase, pointing_error(az, el, sat.az, sat.el)};
  };

  AzEl mount = options.initial_mount.value_or(sample_at(traj, t0));
  const bool az_first = options.axis_order == AxisOrder::AzimuthFirst;

  long k = 0;
  while (k <= last) {
    const double issue_time = t0 + static_cast<double>(k) * h;
    const auto target = sample_at(
        traj, std::min(issue_time + cfg.command_interval_dt, t_end));

    for (long j = 0; j < latency_steps; ++j)
      emit(k + j, Phase::Latency, mount.az, mount.el);
    long cursor = k + latency_steps;

    for (int axis = 0; axis < 2; ++axis) {
      const bool is_az = (axis == 0) == az_first;
      const auto plan =
          is_az ? plan_move(mount.az, target.az, trace.profile.v_az, cfg.accel_az)
                : plan_move(mount.el, target.el, trace.profile.v_el, cfg.accel_el);
      const long n = steps_for(plan.duration(), h);
      for (long j = 0; j < n; ++j) {
        const double pos = position_at(plan, static_cast<double>(j) * h);
        if (is_az)
          emit(cursor + j, Phase::MoveAz, pos, mount.el);
        else
          emit(cursor + j, Phase::MoveEl, mount.az, pos);
      }
      (is_az ? mount.az : mount.el) = plan.target_pos;
      cursor += n;
    }

    const long next = std::max(k + interval_steps, cursor);
    for (long j = cursor; j < next; ++j) emit(j, Phase::Wait, mount.az, mount.el);
    k = next;
  }
  return trace;
}

std::string trace_to_csv(const SimulationTrace& trace) {
  std::string out =
      "time_s,sat_az_deg,sat_el_deg,mount_az_deg,mount_el_deg,phase,"
      "pointing_error_deg\n";
  out.reserve(out.size() + trace.records.size() * 96);
  for (const auto& r : trace.records) {
    out += io::fmt(r.t);
    out += ',';
    out += io::fmt_azimuth(r.sat_az);
    out += ',';
    out += io::fmt(r.sat_el);
    out += ',';
    out += io::fmt_azimuth(r.mount_az);
    out += ',';
    out += io::fmt(r.mount_el);
    out += ',';
    out += to_string(r.phase);
    out += ',';
    out += io::fmt(r.pointing_error);
    out += '\n';
  }
  return out;
}

void write_trace(const SimulationTrace& trace, const std::filesystem::path& path) {
  io::write_atomic(path, trace_to_csv(trace));
}

SimulationTrace load_trace(const std::filesystem::path& path) {
  const auto table = io::read_csv(path);
  const auto c_t = table.column("time_s", path);
  const auto c_saz = table.column("sat_az_deg", path);
  const auto c_sel = table.column("sat_el_deg", path);
  const auto c_maz = table.column("mount_az_deg", path);
  const auto c_mel = table.column("mount_el_deg", path);
  const auto c_ph = table.column("phase", path);
  const auto c_err = table.column("pointing_error_deg", path);

  SimulationTrace trace;
  trace.trajectory_id = path.filename().string();
  std::vector<double> sat_az, mount_az;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const auto line = table.line_numbers[i];
    TraceRecord r;
    r.t = io::parse_double(row[c_t], path, line, "time_s");
    sat_az.push_back(io::parse_double(row[c_saz], path, line, "sat_az_deg"));
    r.sat_el = io::parse_double(row[c_sel], path, line, "sat_el_deg");
    mount_az.push_back(io::parse_double(row[c_maz], path, line, "mount_az_deg"));
    r.mount_el = io::parse_double(row[c_mel], path, line, "mount_el_deg");
    try {
      r.phase = parse_phase(row[c_ph]);
    } catch (const Error& e) {
      fail(ErrorKind::Parse, path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
    r.pointing_error = io::parse_double(row[c_err], path, line, "pointing_error_deg");
    if (r.pointing_error < 0.0 || r.pointing_error > 180.0)
      fail(ErrorKind::InvalidArgument, path.string() + ":" + std::to_string(line) +
                                           ": pointing error outside [0, 180]");
    if (!trace.records.empty() && !(r.t > trace.records.back().t))
      fail(ErrorKind::InvalidArgument,
           path.string() + ":" + std::to_string(line) + ": non-monotone time");
    trace.records.push_back(r);
  }
  const auto sat_unwrapped = unwrap_azimuth(sat_az);
  const auto mount_unwrapped = unwrap_azimuth(mount_az);
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    trace.records[i].sat_az = sat_unwrapped[i];
    trace.records[i].mount_az = mount_unwrapped[i];
  }
  return trace;
}

}  // namespace sattrack
