#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "sattrack/kinematics.hpp"
#include "sattrack/link_budget.hpp"
#include "sattrack/optimizer.hpp"
#include "sattrack/simulation.hpp"

namespace sattrack {

/// Contents of a run configuration file:
///
///   [mount]
///   v_max_az_deg_s = 10
///   v_max_el_deg_s = 10
///   accel_az_deg_s2 = 20
///   accel_el_deg_s2 = 20
///   latency_s = 0.1
///   command_interval_s = 1
///   sim_step_s = 0.005
///   axis_order = az_first        # or el_first
///
///   [antenna]
///   gain_dbi = 46
///   efficiency = 0.7
///   frequency_ghz = 130
///   hpbw_deg = 1.0
///
///   [aps]
///   initial_step_deg_s = 2
///   min_step_deg_s = 0.1
///   max_iterations = 20
///
/// Every key is optional; missing keys keep the defaults above. `#` starts a
/// comment. Unknown sections or keys are rejected.
struct RunConfig {
  MountConfig mount;
  AxisOrder axis_order = AxisOrder::AzimuthFirst;
  std::optional<AntennaConfig> antenna;  // set when an [antenna] section exists
  ApsConfig aps;
};

RunConfig parse_run_config(std::string_view text, std::string_view source = "<config>");
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace sattrack
