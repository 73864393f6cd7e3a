#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sattrack/simulation.hpp"

namespace sattrack {

struct VelocityPoint {
  double v_az = 0.0;
  double v_el = 0.0;

  friend bool operator==(const VelocityPoint&, const VelocityPoint&) = default;
};

struct VelocityBounds {
  VelocityPoint lower{0.1, 0.1};
  VelocityPoint upper{10.0, 10.0};
};

/// Settings of the adaptive pattern search over (v_az, v_el).
struct ApsConfig {
  double initial_step = 2.0;  // deg/s
  double min_step = 0.1;      // deg/s; the search stops once the step drops below
  int max_iterations = 20;
  /// Defaults to [0.1, mount v_max] per axis in aps_optimize.
  std::optional<VelocityBounds> bounds;
  /// Defaults to profile B clamped to the bounds in aps_optimize.
  std::optional<VelocityPoint> initial_point;
};

struct ApsEvaluation {
  int iteration = 0;  // 0 for the starting point
  VelocityPoint point;
  double rmse = 0.0;
  bool accepted = false;
};

struct OptimizationReport {
  VelocityProfile best_profile;  // label C
  double best_rmse = 0.0;
  int iterations = 0;
  int evaluations = 0;  // distinct objective evaluations
  double final_step = 0.0;
  std::vector<ApsEvaluation> history;
};

/// Root-mean-square pointing error over all records. Throws on an empty trace.
double rmse(const SimulationTrace& trace);

using VelocityObjective = std::function<double(const VelocityPoint&)>;

/// Deterministic coordinate pattern search. Each iteration evaluates
/// (+az, -az, +el, -el) steps clamped to the bounds, moves to the best
/// candidate that improves on the incumbent by more than 1e-12, and halves
/// the step when none does. Evaluations are cached by point; uncached
/// candidates of one iteration run concurrently.
OptimizationReport pattern_search(const VelocityObjective& objective,
                                  const VelocityBounds& bounds,
                                  const VelocityPoint& initial,
                                  const ApsConfig& aps);

/// Pattern search over the simulated pass RMSE (velocity profile C).
OptimizationReport aps_optimize(const PassTrajectory& traj, const MountConfig& cfg,
                                const ApsConfig& aps = {});

/// `key = value` lines: v_az, v_el, rmse_deg, iterations, evaluations.
std::string report_to_text(const OptimizationReport& report);
/// CSV `iter,v_az,v_el,rmse_deg,accepted`.
std::string history_to_csv(const OptimizationReport& report);

void write_report(const OptimizationReport& report,
                  const std::filesystem::path& text_path,
                  const std::filesystem::path& history_path);

}  // namespace sattrack
