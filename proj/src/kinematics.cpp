#include "sattrack/kinematics.hpp"

#include <cmath>
#include <string>

#include "io_util.hpp"
#include "sattrack/error.hpp"

namespace sattrack {

void MountConfig::validate() const {
  const struct {
    const char* name;
    double value;
  } fields[] = {{"v_max_az", v_max_az},   {"v_max_el", v_max_el},
                {"accel_az", accel_az},   {"accel_el", accel_el},
                {"latency", latency_l},   {"command_interval", command_interval_dt},
                {"sim_step", sim_step}};
  for (const auto& f : fields) {
    if (!std::isfinite(f.value) || f.value <= 0.0)
      fail(ErrorKind::InvalidArgument, std::string("mount config: ") + f.name +
                                           " must be positive, got " +
                                           io::fmt(f.value));
  }
  if (sim_step > latency_l || sim_step > command_interval_dt)
    fail(ErrorKind::InvalidArgument,
         "mount config: sim_step must not exceed latency or command interval");
}

MotionPlan plan_move(double start, double target, double v, double a) {
  if (!(v > 0.0) || !std::isfinite(v))
    fail(ErrorKind::InvalidArgument, "plan_move: velocity must be positive");
  if (!(a > 0.0) || !std::isfinite(a))
    fail(ErrorKind::InvalidArgument, "plan_move: acceleration must be positive");

  MotionPlan plan;
  plan.start_pos = start;
  plan.target_pos = target;
  plan.accel = a;
  const double distance = std::abs(target - start);
  if (distance == 0.0) return plan;

  plan.direction = target > start ? 1 : -1;
  if (distance >= v * v / a) {
    plan.v_peak = v;
    plan.accel_time = v / a;
    plan.cruise_time = (distance - v * v / a) / v;
  } else {
    plan.v_peak = std::sqrt(a * distance);
    plan.accel_time = plan.v_peak / a;
    plan.cruise_time = 0.0;
  }
  return plan;
}

double position_at(const MotionPlan& plan, double t) {
  if (t <= 0.0 || plan.direction == 0) return plan.start_pos;
  if (t >= plan.duration()) return plan.target_pos;

  const double a = plan.accel;
  const double t1 = plan.accel_time;
  const double t2 = plan.cruise_time;
  double travelled;
  if (t < t1) {
    travelled = 0.5 * a * t * t;
  } else if (t < t1 + t2) {
    travelled = 0.5 * a * t1 * t1 + plan.v_peak * (t - t1);
  } else {
    // Measured back from the end keeps arrival exact and the law symmetric.
    const double remaining = plan.duration() - t;
    travelled = plan.distance() - 0.5 * a * remaining * remaining;
  }
  return plan.start_pos + plan.direction * travelled;
}

double velocity_at(const MotionPlan& plan, double t) {
  if (t <= 0.0 || plan.direction == 0 || t >= plan.duration()) return 0.0;
  const double t1 = plan.accel_time;
  const double t2 = plan.cruise_time;
  double speed;
  if (t < t1)
    speed = plan.accel * t;
  else if (t < t1 + t2)
    speed = plan.v_peak;
  else
    speed = plan.v_peak - plan.accel * (t - t1 - t2);
  return plan.direction * speed;
}

}  // namespace sattrack
