#pragma once

namespace sattrack {

/// Hardware limits and timing of a two-axis alt-azimuth mount.
struct MountConfig {
  double v_max_az = 10.0;            // deg/s
  double v_max_el = 10.0;            // deg/s
  double accel_az = 20.0;            // deg/s^2
  double accel_el = 20.0;            // deg/s^2
  double latency_l = 0.1;            // s, delay before a command executes
  double command_interval_dt = 1.0;  // s
  double sim_step = 0.005;           // s

  /// Throws InvalidArgument unless all fields are positive and finite and
  /// sim_step does not exceed the latency or the command interval.
  void validate() const;
};

/// Rest-to-rest single-axis move with a trapezoidal velocity law
/// (accelerate at `accel`, cruise at `v_peak`, decelerate at `accel`).
/// Moves too short to reach the commanded speed degenerate to a triangle
/// with `cruise_time == 0`.
struct MotionPlan {
  double start_pos = 0.0;   // deg
  double target_pos = 0.0;  // deg
  int direction = 0;        // +1, -1, or 0 for a zero-length move
  double v_peak = 0.0;      // deg/s, never above the commanded speed
  double accel = 0.0;       // deg/s^2
  double accel_time = 0.0;  // phase I (and phase III) duration, s
  double cruise_time = 0.0; // phase II duration, s

  double decel_time() const { return accel_time; }
  double duration() const { return 2.0 * accel_time + cruise_time; }
  double distance() const { return target_pos > start_pos ? target_pos - start_pos
                                                          : start_pos - target_pos; }
};

/// Plans a move from `start` to `target`. Throws InvalidArgument if `v` or
/// `a` is not positive.
MotionPlan plan_move(double start, double target, double v, double a);

/// Position along the plan at time `t` since the move began. Returns
/// `start_pos` for t <= 0 and exactly `target_pos` for t >= duration().
double position_at(const MotionPlan& plan, double t);

/// Signed velocity at time `t`; zero outside (0, duration()).
double velocity_at(const MotionPlan& plan, double t);

}  // namespace sattrack
