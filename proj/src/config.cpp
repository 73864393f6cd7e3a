#include "sattrack/config.hpp"

#include <fstream>
#include <sstream>

#include "io_util.hpp"
#include "sattrack/error.hpp"

namespace sattrack {

RunConfig parse_run_config(std::string_view text, std::string_view source) {
  RunConfig cfg;
  std::string section;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;

  auto where = [&] { return std::string(source) + ":" + std::to_string(line_no); };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = io::trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(ErrorKind::Parse, where() + ": malformed section header");
      section = std::string(io::trim(line.substr(1, line.size() - 2)));
      if (section != "mount" && section != "antenna" && section != "aps")
        fail(ErrorKind::Parse, where() + ": unknown section [" + section + "]");
      if (section == "antenna" && !cfg.antenna) cfg.antenna = AntennaConfig{};
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      fail(ErrorKind::Parse, where() + ": expected 'key = value'");
    const std::string key(io::trim(line.substr(0, eq)));
    const std::string_view value = io::trim(line.substr(eq + 1));
    if (section.empty())
      fail(ErrorKind::Parse, where() + ": key '" + key + "' outside of a section");

    auto number = [&] { return io::parse_double(value, std::string(source), line_no, key); };

    if (section == "mount") {
      auto& m = cfg.mount;
      if (key == "v_max_az_deg_s") m.v_max_az = number();
      else if (key == "v_max_el_deg_s") m.v_max_el = number();
      else if (key == "accel_az_deg_s2") m.accel_az = number();
      else if (key == "accel_el_deg_s2") m.accel_el = number();
      else if (key == "latency_s") m.latency_l = number();
      else if (key == "command_interval_s") m.command_interval_dt = number();
      else if (key == "sim_step_s") m.sim_step = number();
      else if (key == "axis_order") {
        if (value == "az_first") cfg.axis_order = AxisOrder::AzimuthFirst;
        else if (value == "el_first") cfg.axis_order = AxisOrder::ElevationFirst;
        else fail(ErrorKind::Parse, where() + ": axis_order must be az_first or el_first");
      } else {
        fail(ErrorKind::Parse, where() + ": unknown key '" + key + "' in [mount]");
      }
    } else if (section == "antenna") {
      auto& a = *cfg.antenna;
      if (key == "gain_dbi") a.gain_dbi = number();
      else if (key == "efficiency") a.efficiency = number();
      else if (key == "frequency_ghz") a.frequency_hz = number() * 1e9;
      else if (key == "hpbw_deg") a.hpbw_deg = number();
      else fail(ErrorKind::Parse, where() + ": unknown key '" + key + "' in [antenna]");
    } else {
      auto& s = cfg.aps;
      if (key == "initial_step_deg_s") s.initial_step = number();
      else if (key == "min_step_deg_s") s.min_step = number();
      else if (key == "max_iterations") {
        const double n = number();
        if (n < 0 || n != static_cast<double>(static_cast<int>(n)))
          fail(ErrorKind::Parse, where() + ": max_iterations must be a non-negative integer");
        s.max_iterations = static_cast<int>(n);
      } else {
        fail(ErrorKind::Parse, where() + ": unknown key '" + key + "' in [aps]");
      }
    }
  }

  cfg.mount.validate();
  if (cfg.antenna) cfg.antenna->validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str(), path.string());
}

}  // namespace sattrack
