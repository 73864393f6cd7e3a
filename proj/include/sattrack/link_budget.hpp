#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "sattrack/simulation.hpp"

namespace sattrack {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

struct AntennaConfig {
  double gain_dbi = 46.0;
  double efficiency = 0.7;         // aperture efficiency, (0, 1]
  double frequency_hz = 130e9;
  std::optional<double> hpbw_deg;  // descriptive label only

  void validate() const;
  double gain_linear() const;
  double wavelength_m() const;
  /// Physical aperture implied by the gain, efficiency and frequency.
  double aperture_m2() const;
};

/// G * lambda^2 / (4 pi eta), in square metres.
double aperture_from_gain(double gain_dbi, double efficiency, double frequency_hz);

struct PointingLoss {
  double linear = 1.0;  // >= 1
  double db = 0.0;      // >= 0
};

/// exp(pi * eta * A / lambda^2 * tan^2(alpha)). Throws Domain for
/// |alpha| >= 90 deg.
PointingLoss pointing_loss(double alpha_e_deg, const AntennaConfig& antenna);

struct FarFieldCheck {
  bool ok = false;
  double ratio = 0.0;  // 8 sqrt(pi) d / (sqrt(Gt Gr) lambda)
};

/// Whether the simplified pointing-loss expression applies at this range.
/// Inclusive at `margin`.
FarFieldCheck far_field_ok(double distance_m, double gain_tx_linear,
                           double gain_rx_linear, double wavelength_m,
                           double margin = 100.0);

/// All values in dB, non-negative.
struct LinkLosses {
  double spreading_db = 0.0;
  double absorption_db = 0.0;
  double pointing_db = 0.0;
};

/// P_t / (L_s L_a L_p), in watts.
double received_power(double p_t_watts, const LinkLosses& losses);
/// Same composition on the dB scale: P_t[dB] - L_s - L_a - L_p.
double received_power_db(double p_t_db, const LinkLosses& losses);

struct LossSample {
  double t = 0.0;
  double lp_db = 0.0;
  bool out_of_domain = false;  // pointing error >= 90 deg; lp_db is +inf
};

struct LossSeries {
  std::vector<LossSample> samples;
  std::size_t out_of_domain_count = 0;
};

LossSeries pointing_loss_series(const SimulationTrace& trace,
                                const AntennaConfig& antenna);

struct RocSample {
  double t = 0.0;       // window start
  double db_per_s = 0.0;
};

/// Sliding-window rate of change: (max - min) of the loss over each window
/// of `window_s`, divided by `window_s`, advancing by `step_s`. Trailing
/// partial windows are dropped. The input must be uniformly spaced.
std::vector<RocSample> roc(const std::vector<LossSample>& series,
                           double window_s = 1.0, double step_s = 0.005);

void write_loss_series(const LossSeries& series, const std::filesystem::path& path);
void write_roc(const std::vector<RocSample>& roc, const std::filesystem::path& path);

}  // namespace sattrack
