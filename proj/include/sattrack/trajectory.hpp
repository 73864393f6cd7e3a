#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace sattrack {

/// One satellite position in the mount frame. `az` is unwrapped (continuous,
/// unbounded); `el` lies in [0, 90].
struct AngularSample {
  double t = 0.0;   // seconds from pass start
  double az = 0.0;  // degrees
  double el = 0.0;  // degrees
};

struct AzEl {
  double az = 0.0;
  double el = 0.0;
};

struct AxisRates {
  double az = 0.0;  // deg/s
  double el = 0.0;  // deg/s
};

/// Immutable, time-ordered satellite pass.
///
/// Construction validates every invariant: at least two samples, strictly
/// increasing finite times, elevation within [0, 90] and successive azimuth
/// jumps below 180 degrees. Callers holding raw wrapped azimuths should run
/// them through unwrap_azimuth() first (load_trajectory does this).
class PassTrajectory {
 public:
  explicit PassTrajectory(std::vector<AngularSample> samples);

  std::span<const AngularSample> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  const AngularSample& front() const { return samples_.front(); }
  const AngularSample& back() const { return samples_.back(); }

  /// Median spacing between consecutive samples.
  double step() const { return step_; }
  double start_time() const { return samples_.front().t; }
  double end_time() const { return samples_.back().t; }
  double duration() const { return end_time() - start_time(); }

 private:
  std::vector<AngularSample> samples_;
  double step_ = 0.0;
};

/// Removes 360-degree jumps so every successive difference is at most 180
/// degrees in magnitude. The first element is kept as is.
std::vector<double> unwrap_azimuth(std::span<const double> raw_az);

/// Linear interpolation on unwrapped azimuth and elevation. Exact at knots.
/// Throws InvalidArgument when t lies outside the pass.
AzEl sample_at(const PassTrajectory& traj, double t);

/// Largest absolute finite-difference rate per axis between consecutive
/// samples.
AxisRates max_axis_rates(const PassTrajectory& traj);

struct CsvColumns {
  std::string time = "time_s";
  std::string az = "az_deg";
  std::string el = "el_deg";
};

/// Reads a `time_s,az_deg,el_deg` CSV (column names configurable). Azimuth
/// is unwrapped on load.
PassTrajectory load_trajectory(const std::filesystem::path& path,
                               const CsvColumns& columns = {});

/// Writes the trajectory with azimuth wrapped to [0, 360).
void write_trajectory(const PassTrajectory& traj,
                      const std::filesystem::path& path);

inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kEarthMuKm3S2 = 398600.4418;

struct SyntheticPassSpec {
  double peak_el_deg = 90.0;
  double altitude_km = 420.0;
  double sample_step_s = 1.0;
  double min_el_deg = 10.0;
};

/// Overhead pass of a satellite on a circular orbit around a non-rotating
/// spherical Earth. The ground track is offset east of the station so that
/// the culmination elevation equals `peak_el_deg`; the satellite travels
/// south to north. Samples are symmetric about culmination, which is always
/// a sample point, and the pass is clipped to elevations >= `min_el_deg`.
PassTrajectory generate_synthetic_pass(const SyntheticPassSpec& spec);

}  // namespace sattrack
