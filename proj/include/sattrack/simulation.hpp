#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sattrack/kinematics.hpp"
#include "sattrack/trajectory.hpp"

namespace sattrack {

enum class ProfileLabel { A, B, C, Custom };

std::string_view to_string(ProfileLabel label);

/// Per-axis cruise velocities commanded to the mount.
struct VelocityProfile {
  ProfileLabel label = ProfileLabel::Custom;
  double v_az = 0.0;  // deg/s
  double v_el = 0.0;  // deg/s
};

enum class Phase { Wait, Latency, MoveAz, MoveEl };

std::string_view to_string(Phase phase);
/// Inverse of to_string(Phase); throws Parse for unknown names.
Phase parse_phase(std::string_view name);

enum class AxisOrder { AzimuthFirst, ElevationFirst };

struct TraceRecord {
  double t = 0.0;
  double sat_az = 0.0;
  double sat_el = 0.0;
  double mount_az = 0.0;
  double mount_el = 0.0;
  Phase phase = Phase::Wait;
  double pointing_error = 0.0;  // deg
};

struct SimulationTrace {
  std::vector<TraceRecord> records;
  MountConfig mount;
  VelocityProfile profile;          // after clamping to the mount limits
  std::string trajectory_id;
  std::vector<std::string> diagnostics;
};

struct SimulationOptions {
  std::optional<AzEl> initial_mount;  // defaults to the satellite at pass start
  AxisOrder axis_order = AxisOrder::AzimuthFirst;
  std::string trajectory_id;
};

/// Great-circle angle between two (azimuth, elevation) directions, treating
/// elevation as latitude and azimuth as longitude. Result in [0, 180].
double pointing_error(double mount_az, double mount_el, double sat_az,
                      double sat_el);

/// Limits `profile` to the mount's per-axis maximum velocities. Each clamped
/// axis appends a message to `diagnostics` when provided.
VelocityProfile clamp_profile(const VelocityProfile& profile,
                              const MountConfig& cfg,
                              std::vector<std::string>* diagnostics = nullptr);

/// Mount maximum velocities.
VelocityProfile profile_A(const MountConfig& cfg);

/// Maximum satellite axis rates over the pass. Throws InvalidArgument when
/// either axis is stationary, which would leave the mount unable to move.
VelocityProfile profile_B(const PassTrajectory& traj);

/// Runs the open-loop controller over the whole pass on a uniform grid of
/// `cfg.sim_step`.
///
/// Each command cycle issued at t_i targets the satellite position at
/// t_i + command interval (clamped to the end of the pass). The mount sits
/// out the command latency, slews one axis to completion and then the other
/// using plan_move, and holds until the next command time. A slew that
/// overruns the command interval delays the next command to its completion.
/// Phase boundaries are rounded up to the simulation grid.
SimulationTrace simulate(const PassTrajectory& traj, const MountConfig& cfg,
                         const VelocityProfile& profile,
                         const SimulationOptions& options = {});

/// Trace CSV: time_s,sat_az_deg,sat_el_deg,mount_az_deg,mount_el_deg,phase,
/// pointing_error_deg with azimuths wrapped to [0, 360).
std::string trace_to_csv(const SimulationTrace& trace);
void write_trace(const SimulationTrace& trace, const std::filesystem::path& path);

/// Reads a trace CSV. Azimuths are unwrapped per column; config echo fields
/// are left at their defaults.
SimulationTrace load_trace(const std::filesystem::path& path);

}  // namespace sattrack
