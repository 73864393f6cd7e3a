#include "sattrack/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <utility>

#include "io_util.hpp"
#include "sattrack/error.hpp"

namespace sattrack {

double rmse(const SimulationTrace& trace) {
  if (trace.records.empty()) fail(ErrorKind::InvalidArgument, "rmse of an empty trace");
  double sum = 0.0;
  for (const auto& r : trace.records) sum += r.pointing_error * r.pointing_error;
  return std::sqrt(sum / static_cast<double>(trace.records.size()));
}

namespace {

constexpr double kImprovementTolerance = 1e-12;

std::string describe(const VelocityPoint& p) {
  return "(" + io::fmt(p.v_az) + ", " + io::fmt(p.v_el) + ")";
}

VelocityPoint clamp_to(const VelocityPoint& p, const VelocityBounds& b) {
  return {std::clamp(p.v_az, b.lower.v_az, b.upper.v_az),
          std::clamp(p.v_el, b.lower.v_el, b.upper.v_el)};
}

void validate(const ApsConfig& aps, const VelocityBounds& b,
              const VelocityPoint& initial) {
  if (!(aps.min_step > 0.0 && aps.min_step < aps.initial_step))
    fail(ErrorKind::InvalidArgument, "pattern search needs 0 < min_step < initial_step");
  if (aps.max_iterations < 0)
    fail(ErrorKind::InvalidArgument, "max_iterations must be non-negative");
  if (!(b.lower.v_az > 0.0 && b.lower.v_el > 0.0))
    fail(ErrorKind::InvalidArgument, "velocity lower bounds must be positive");
  if (!(b.lower.v_az < b.upper.v_az && b.lower.v_el < b.upper.v_el))
    fail(ErrorKind::InvalidArgument, "velocity bounds must have lower < upper");
  if (clamp_to(initial, b) != initial)
    fail(ErrorKind::InvalidArgument,
         "initial point " + describe(initial) + " outside the velocity bounds");
}

}  // namespace

OptimizationReport pattern_search(const VelocityObjective& objective,
                                  const VelocityBounds& bounds,
                                  const VelocityPoint& initial,
                                  const ApsConfig& aps) {
  validate(aps, bounds, initial);

  OptimizationReport report;
  std::map<std::pair<double, double>, double> cache;

  auto evaluate = [&](const VelocityPoint& p) {
    try {
      return objective(p);
    } catch (const Error& e) {
      throw Error(e.kind(), "objective failed at velocities " + describe(p) + ": " +
                                e.what());
    }
  };

  VelocityPoint best = initial;
  double best_value = evaluate(initial);
  cache[{initial.v_az, initial.v_el}] = best_value;
  report.evaluations = 1;
  report.history.push_back({0, initial, best_value, true});

  double delta = aps.initial_step;
  while (delta >= aps.min_step && report.iterations < aps.max_iterations) {
    ++report.iterations;
    const VelocityPoint candidates[4] = {
        clamp_to({best.v_az + delta, best.v_el}, bounds),
        clamp_to({best.v_az - delta, best.v_el}, bounds),
        clamp_to({best.v_az, best.v_el + delta}, bounds),
        clamp_to({best.v_az, best.v_el - delta}, bounds),
    };

    std::vector<std::pair<VelocityPoint, std::future<double>>> pending;
    for (const auto& c : candidates) {
      const bool known = cache.contains({c.v_az, c.v_el}) ||
                         std::any_of(pending.begin(), pending.end(),
                                     [&](const auto& p) { return p.first == c; });
      if (!known) pending.emplace_back(c, std::async(std::launch::async, evaluate, c));
    }
    for (auto& [point, value] : pending) {
      cache[{point.v_az, point.v_el}] = value.get();
      ++report.evaluations;
    }

    int chosen = -1;
    double chosen_value = best_value;
    for (int i = 0; i < 4; ++i) {
      const double v = cache.at({candidates[i].v_az, candidates[i].v_el});
      if (v < best_value - kImprovementTolerance && v < chosen_value) {
        chosen = i;
        chosen_value = v;
      }
    }
    for (int i = 0; i < 4; ++i)
      report.history.push_back({report.iterations, candidates[i],
                                cache.at({candidates[i].v_az, candidates[i].v_el}),
                                i == chosen});

    if (chosen >= 0) {
      best = candidates[chosen];
      best_value = chosen_value;
    } else {
      delta *= 0.5;
    }
  }

  report.best_profile = {ProfileLabel::C, best.v_az, best.v_el};
  report.best_rmse = best_value;
  report.final_step = delta;
  return report;
}

OptimizationReport aps_optimize(const PassTrajectory& traj, const MountConfig& cfg,
                                const ApsConfig& aps) {
  cfg.validate();
  const VelocityBounds bounds =
      aps.bounds.value_or(VelocityBounds{{0.1, 0.1}, {cfg.v_max_az, cfg.v_max_el}});
  VelocityPoint initial;
  if (aps.initial_point) {
    initial = *aps.initial_point;
  } else {
    const auto rates = max_axis_rates(traj);
    initial = clamp_to({rates.az, rates.el}, bounds);
  }
  auto objective = [&](const VelocityPoint& v) {
    return rmse(simulate(traj, cfg, {ProfileLabel::C, v.v_az, v.v_el}));
  };
  return pattern_search(objective, bounds, initial, aps);
}

std::string report_to_text(const OptimizationReport& report) {
  std::string out;
  out += "v_az = " + io::fmt(report.best_profile.v_az) + "\n";
  out += "v_el = " + io::fmt(report.best_profile.v_el) + "\n";
  out += "rmse_deg = " + io::fmt(report.best_rmse) + "\n";
  out += "iterations = " + std::to_string(report.iterations) + "\n";
  out += "evaluations = " + std::to_string(report.evaluations) + "\n";
  out += "final_step = " + io::fmt(report.final_step) + "\n";
  return out;
}

std::string history_to_csv(const OptimizationReport& report) {
  std::string out = "iter,v_az,v_el,rmse_deg,accepted\n";
  for (const auto& h : report.history) {
    out += std::to_string(h.iteration) + "," + io::fmt(h.point.v_az) + "," +
           io::fmt(h.point.v_el) + "," + io::fmt(h.rmse) + "," +
           (h.accepted ? "1" : "0") + "\n";
  }
  return out;
}

void write_report(const OptimizationReport& report,
                  const std::filesystem::path& text_path,
                  const std::filesystem::path& history_path) {
  io::write_atomic(text_path, report_to_text(report));
  io::write_atomic(history_path, history_to_csv(report));
}

}  // namespace sattrack
