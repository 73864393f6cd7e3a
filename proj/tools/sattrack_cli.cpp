// sattrack: pass generation, tracking simulation and pointing-loss analysis.
//
// Exit codes: 0 success, 2 usage error, 3 input validation, 4 runtime failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sattrack/sattrack.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitRuntime = 4;

struct CliFailure {
  int code;
  std::string message;
};

// Input-side failures (bad files, bad values) map to 3; I/O while writing
// results and internal failures map to 4.
enum class Stage { Input, Output };

void check(sattrack_status status, Stage stage) {
  if (status == SATTRACK_OK) return;
  int code = kExitInput;
  if (status == SATTRACK_E_RUNTIME || (status == SATTRACK_E_IO && stage == Stage::Output))
    code = kExitRuntime;
  throw CliFailure{code, sattrack_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using TrajectoryPtr =
    std::unique_ptr<sattrack_trajectory, Deleter<sattrack_trajectory, sattrack_trajectory_free>>;
using ConfigPtr = std::unique_ptr<sattrack_config, Deleter<sattrack_config, sattrack_config_free>>;
using TracePtr = std::unique_ptr<sattrack_trace, Deleter<sattrack_trace, sattrack_trace_free>>;
using ReportPtr = std::unique_ptr<sattrack_report, Deleter<sattrack_report, sattrack_report_free>>;

fs::path resolve_out_dir(const std::string& flag, const std::optional<fs::path>& fallback) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("SATTRACK_OUT_DIR"); env && *env) return env;
  if (fallback) return *fallback;
  throw CliFailure{kExitUsage, "no output directory: pass --out or set SATTRACK_OUT_DIR"};
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw CliFailure{kExitRuntime, "cannot create output directory " + dir.string()};
}

void print_summary(const sattrack_summary& s) {
  std::printf("records            %zu\n", s.records);
  std::printf("max error [deg]    %.9g\n", s.max_deg);
  std::printf("mean error [deg]   %.9g\n", s.mean_deg);
  std::printf("rmse [deg]         %.9g\n", s.rmse_deg);
  std::printf("p50/p90/p99 [deg]  %.9g / %.9g / %.9g\n", s.p50_deg, s.p90_deg, s.p99_deg);
  std::printf("phase fractions    WAIT %.4f  LATENCY %.4f  MOVE_AZ %.4f  MOVE_EL %.4f\n",
              s.phase_fraction[SATTRACK_PHASE_WAIT], s.phase_fraction[SATTRACK_PHASE_LATENCY],
              s.phase_fraction[SATTRACK_PHASE_MOVE_AZ], s.phase_fraction[SATTRACK_PHASE_MOVE_EL]);
}

struct GenPassArgs {
  double peak_el = 0.0;
  double altitude_km = 420.0;
  double step_s = 1.0;
  double min_el = 10.0;
  std::string out;
};

int run_gen_pass(const GenPassArgs& a) {
  sattrack_trajectory* raw = nullptr;
  check(sattrack_trajectory_generate(a.peak_el, a.altitude_km, a.step_s, a.min_el, &raw),
        Stage::Input);
  TrajectoryPtr traj(raw);

  fs::path out = a.out;
  if (out.empty()) out = resolve_out_dir("", std::nullopt) / "pass.csv";
  if (out.has_parent_path()) ensure_dir(out.parent_path());
  check(sattrack_trajectory_write(traj.get(), out.string().c_str()), Stage::Output);

  double v_az = 0.0, v_el = 0.0;
  check(sattrack_trajectory_max_rates(traj.get(), &v_az, &v_el), Stage::Input);
  std::printf("wrote %s\n", out.string().c_str());
  std::printf("samples            %zu\n", sattrack_trajectory_size(traj.get()));
  std::printf("duration [s]       %.9g\n", sattrack_trajectory_duration(traj.get()));
  std::printf("max az rate [deg/s] %.9g\n", v_az);
  std::printf("max el rate [deg/s] %.9g\n", v_el);
  return 0;
}

struct SimulateArgs {
  std::string traj;
  std::string config;
  std::string profile = "A";
  std::string out;
};

struct ProfileChoice {
  sattrack_profile_label label = SATTRACK_PROFILE_A;
  double v_az = 0.0;
  double v_el = 0.0;
};

ProfileChoice parse_profile(const std::string& text) {
  if (text == "A") return {SATTRACK_PROFILE_A};
  if (text == "B") return {SATTRACK_PROFILE_B};
  if (text == "C") return {SATTRACK_PROFILE_C};
  const auto comma = text.find(',');
  if (comma != std::string::npos) {
    try {
      std::size_t used_az = 0, used_el = 0;
      const std::string az = text.substr(0, comma), el = text.substr(comma + 1);
      ProfileChoice c{SATTRACK_PROFILE_CUSTOM, std::stod(az, &used_az), std::stod(el, &used_el)};
      if (used_az == az.size() && used_el == el.size()) return c;
    } catch (const std::exception&) {
    }
  }
  throw CliFailure{kExitUsage, "--profile must be A, B, C or '<v_az>,<v_el>', got '" + text + "'"};
}

int run_simulate(const SimulateArgs& a) {
  const auto choice = parse_profile(a.profile);
  const fs::path out_dir = resolve_out_dir(a.out, std::nullopt);

  sattrack_config* cfg_raw = nullptr;
  if (a.config.empty())
    check(sattrack_config_create(&cfg_raw), Stage::Input);
  else
    check(sattrack_config_load(a.config.c_str(), &cfg_raw), Stage::Input);
  ConfigPtr cfg(cfg_raw);

  sattrack_trajectory* traj_raw = nullptr;
  check(sattrack_trajectory_load(a.traj.c_str(), &traj_raw), Stage::Input);
  TrajectoryPtr traj(traj_raw);

  ensure_dir(out_dir);

  double v_az = choice.v_az, v_el = choice.v_el;
  if (choice.label == SATTRACK_PROFILE_C) {
    sattrack_report* rep_raw = nullptr;
    check(sattrack_optimize(traj.get(), cfg.get(), &rep_raw), Stage::Input);
    ReportPtr report(rep_raw);
    sattrack_report_info info{};
    check(sattrack_report_info_get(report.get(), &info), Stage::Input);
    check(sattrack_report_write(report.get(), (out_dir / "aps_report.txt").string().c_str(),
                                (out_dir / "aps_history.csv").string().c_str()),
          Stage::Output);
    std::printf("profile C          v_az %.9g deg/s, v_el %.9g deg/s (%d iterations, %d evaluations)\n",
                info.v_az, info.v_el, info.iterations, info.evaluations);
    v_az = info.v_az;
    v_el = info.v_el;
  }

  sattrack_trace* trace_raw = nullptr;
  check(sattrack_simulate(traj.get(), cfg.get(), choice.label, v_az, v_el, &trace_raw),
        Stage::Input);
  TracePtr trace(trace_raw);
  for (std::size_t i = 0; i < sattrack_trace_diagnostic_count(trace.get()); ++i)
    std::fprintf(stderr, "note: %s\n", sattrack_trace_diagnostic(trace.get(), i));

  check(sattrack_trace_write(trace.get(), (out_dir / "trace.csv").string().c_str()),
        Stage::Output);
  check(sattrack_trace_write_summary(trace.get(), (out_dir / "summary.txt").string().c_str()),
        Stage::Output);

  sattrack_summary summary{};
  check(sattrack_trace_summary(trace.get(), &summary), Stage::Input);
  print_summary(summary);
  return 0;
}

struct AnalyzeArgs {
  std::string trace;
  std::string antenna;
  bool ecdf = false;
  bool loss = false;
  bool roc = false;
  double window_s = 1.0;
  double step_s = 0.005;
  std::string out;
};

int run_analyze(const AnalyzeArgs& a) {
  if (!a.ecdf && !a.loss && !a.roc)
    throw CliFailure{kExitUsage, "nothing to do: pass at least one of --ecdf, --loss, --roc"};
  if ((a.loss || a.roc) && a.antenna.empty())
    throw CliFailure{kExitUsage, "--loss and --roc need --antenna <config file>"};

  const fs::path trace_path = a.trace;
  const fs::path out_dir = resolve_out_dir(
      a.out, trace_path.has_parent_path() ? trace_path.parent_path() : fs::path("."));

  sattrack_antenna_config antenna{};
  if (!a.antenna.empty()) {
    sattrack_config* raw = nullptr;
    check(sattrack_config_load(a.antenna.c_str(), &raw), Stage::Input);
    ConfigPtr cfg(raw);
    check(sattrack_config_get_antenna(cfg.get(), &antenna), Stage::Input);
  }

  sattrack_trace* trace_raw = nullptr;
  check(sattrack_trace_load(a.trace.c_str(), &trace_raw), Stage::Input);
  TracePtr trace(trace_raw);
  ensure_dir(out_dir);

  if (a.ecdf) {
    const auto path = out_dir / "ecdf.csv";
    check(sattrack_write_ecdf(trace.get(), path.string().c_str()), Stage::Output);
    std::printf("wrote %s\n", path.string().c_str());
  }
  if (a.loss) {
    const auto path = out_dir / "loss.csv";
    std::size_t flagged = 0;
    check(sattrack_write_loss_series(trace.get(), &antenna, path.string().c_str(), &flagged),
          Stage::Output);
    std::printf("wrote %s\n", path.string().c_str());
    if (flagged > 0)
      std::fprintf(stderr, "warning: %zu records with pointing error >= 90 deg (loss reported as inf)\n",
                   flagged);
  }
  if (a.roc) {
    const auto path = out_dir / "roc.csv";
    check(sattrack_write_roc(trace.get(), &antenna, a.window_s, a.step_s, path.string().c_str()),
          Stage::Input);
    std::printf("wrote %s\n", path.string().c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Open-loop satellite tracking simulator for alt-azimuth mounts"};
  app.set_version_flag("--version", sattrack_version());
  app.require_subcommand(1);

  GenPassArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-pass", "Generate a synthetic circular-orbit pass");
  gen_cmd->add_option("--peak-el", gen.peak_el, "Culmination elevation [deg]")->required();
  gen_cmd->add_option("--altitude-km", gen.altitude_km, "Orbit altitude [km]")->capture_default_str();
  gen_cmd->add_option("--step-s", gen.step_s, "Sample spacing [s]")->capture_default_str();
  gen_cmd->add_option("--min-el", gen.min_el, "Lowest elevation kept [deg]")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output trajectory CSV");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Simulate mount tracking over a pass");
  sim_cmd->add_option("--traj", sim.traj, "Trajectory CSV")->required();
  sim_cmd->add_option("--config", sim.config, "Run configuration file");
  sim_cmd->add_option("--profile", sim.profile, "A, B, C or <v_az>,<v_el>")->capture_default_str();
  sim_cmd->add_option("--out", sim.out, "Output directory");

  AnalyzeArgs an;
  auto* an_cmd = app.add_subcommand("analyze", "ECDF, pointing loss and rate-of-change outputs");
  an_cmd->add_option("--trace", an.trace, "Trace CSV")->required();
  an_cmd->add_option("--antenna", an.antenna, "Configuration file with an [antenna] section");
  an_cmd->add_flag("--ecdf", an.ecdf, "Write the pointing-error ECDF");
  an_cmd->add_flag("--loss", an.loss, "Write the pointing-loss series");
  an_cmd->add_flag("--roc", an.roc, "Write the pointing-loss rate of change");
  an_cmd->add_option("--window-s", an.window_s, "ROC window [s]")->capture_default_str();
  an_cmd->add_option("--step-s", an.step_s, "ROC window step [s]")->capture_default_str();
  an_cmd->add_option("--out", an.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen_cmd) return run_gen_pass(gen);
    if (*sim_cmd) return run_simulate(sim);
    if (*an_cmd) return run_analyze(an);
  } catch (const CliFailure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return f.code;
  }
  return kExitUsage;
}
