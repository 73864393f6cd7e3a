#include "sattrack/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "io_util.hpp"
#include "sattrack/angles.hpp"
#include "sattrack/error.hpp"

namespace sattrack {

PassTrajectory::PassTrajectory(std::vector<AngularSample> samples)
    : samples_(std::move(samples)) {
  if (samples_.size() < 2)
    fail(ErrorKind::InvalidArgument, "trajectory needs at least 2 samples, got " +
                                         std::to_string(samples_.size()));
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if (!std::isfinite(s.t) || !std::isfinite(s.az) || !std::isfinite(s.el))
      fail(ErrorKind::InvalidArgument,
           "sample " + std::to_string(i) + " is not finite");
    if (s.t < 0.0)
      fail(ErrorKind::InvalidArgument,
           "sample " + std::to_string(i) + " has negative time");
    if (s.el < 0.0 || s.el > 90.0)
      fail(ErrorKind::InvalidArgument,
           "sample " + std::to_string(i) + ": elevation " + io::fmt(s.el) +
               " outside [0, 90]");
    if (i == 0) continue;
    const auto& prev = samples_[i - 1];
    if (!(s.t > prev.t))
      fail(ErrorKind::InvalidArgument,
           "non-monotone time at sample " + std::to_string(i) + " (t=" +
               io::fmt(s.t) + " after t=" + io::fmt(prev.t) + ")");
    if (std::abs(s.az - prev.az) >= 180.0)
      fail(ErrorKind::InvalidArgument,
           "azimuth jump of " + io::fmt(s.az - prev.az) + " deg at sample " +
               std::to_string(i) + "; azimuth must be unwrapped");
  }

  std::vector<double> gaps(samples_.size() - 1);
  for (std::size_t i = 1; i < samples_.size(); ++i)
    gaps[i - 1] = samples_[i].t - samples_[i - 1].t;
  std::sort(gaps.begin(), gaps.end());
  const auto n = gaps.size();
  step_ = n % 2 == 1 ? gaps[n / 2] : 0.5 * (gaps[n / 2 - 1] + gaps[n / 2]);
}

std::vector<double> unwrap_azimuth(std::span<const double> raw_az) {
  std::vector<double> out;
  out.reserve(raw_az.size());
  for (std::size_t i = 0; i < raw_az.size(); ++i) {
    if (i == 0) {
      out.push_back(raw_az[0]);
      continue;
    }
    out.push_back(out.back() + wrap180(raw_az[i] - raw_az[i - 1]));
  }
  return out;
}

AzEl sample_at(const PassTrajectory& traj, double t) {
  const auto samples = traj.samples();
  if (!(t >= traj.start_time() && t <= traj.end_time()))
    fail(ErrorKind::InvalidArgument,
         "sample time " + io::fmt(t) + " outside trajectory [" +
             io::fmt(traj.start_time()) + ", " + io::fmt(traj.end_time()) + "]");

  // First sample with time > t; the bracket is [hi-1, hi].
  auto hi = std::upper_bound(samples.begin(), samples.end(), t,
                             [](double v, const AngularSample& s) { return v < s.t; });
  if (hi == samples.end()) return {samples.back().az, samples.back().el};
  const auto& b = *hi;
  const auto& a = *(hi - 1);
  if (t == a.t) return {a.az, a.el};
  const double f = (t - a.t) / (b.t - a.t);
  return {a.az + f * (b.az - a.az), a.el + f * (b.el - a.el)};
}

AxisRates max_axis_rates(const PassTrajectory& traj) {
  const auto s = traj.samples();
  AxisRates r;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double dt = s[i].t - s[i - 1].t;
    r.az = std::max(r.az, std::abs(s[i].az - s[i - 1].az) / dt);
    r.el = std::max(r.el, std::abs(s[i].el - s[i - 1].el) / dt);
  }
  return r;
}

PassTrajectory load_trajectory(const std::filesystem::path& path,
                               const CsvColumns& columns) {
  const auto table = io::read_csv(path);
  const auto ct = table.column(columns.time, path);
  const auto ca = table.column(columns.az, path);
  const auto ce = table.column(columns.el, path);

  if (table.rows.size() < 2)
    fail(ErrorKind::InvalidArgument,
         path.string() + ": trajectory needs at least 2 rows, got " +
             std::to_string(table.rows.size()));

  std::vector<double> t, az, el;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const auto line = table.line_numbers[i];
    t.push_back(io::parse_double(row[ct], path, line, columns.time));
    az.push_back(io::parse_double(row[ca], path, line, columns.az));
    el.push_back(io::parse_double(row[ce], path, line, columns.el));
    if (i > 0 && !(t[i] > t[i - 1]))
      fail(ErrorKind::InvalidArgument,
           path.string() + ":" + std::to_string(line) + ": non-monotone time (" +
               io::fmt(t[i]) + " after " + io::fmt(t[i - 1]) + ")");
    if (el[i] < 0.0 || el[i] > 90.0)
      fail(ErrorKind::InvalidArgument,
           path.string() + ":" + std::to_string(line) + ": elevation " +
               io::fmt(el[i]) + " outside [0, 90]");
  }

  const auto unwrapped = unwrap_azimuth(az);
  std::vector<AngularSample> samples(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) samples[i] = {t[i], unwrapped[i], el[i]};
  return PassTrajectory(std::move(samples));
}

void write_trajectory(const PassTrajectory& traj,
                      const std::filesystem::path& path) {
  std::string out = "time_s,az_deg,el_deg\n";
  for (const auto& s : traj.samples()) {
    out += io::fmt(s.t);
    out += ',';
    out += io::fmt_azimuth(s.az);
    out += ',';
    out += io::fmt(s.el);
    out += '\n';
  }
  io::write_atomic(path, out);
}

namespace {

// Elevation of a satellite whose sub-satellite point lies at central angle
// `psi` from the station; `ratio` = R_E / (R_E + h).
double elevation_from_central_angle(double psi, double ratio) {
  return std::atan2(std::cos(psi) - ratio, std::sin(psi));
}

}  // namespace

PassTrajectory generate_synthetic_pass(const SyntheticPassSpec& spec) {
  if (!(spec.peak_el_deg > 0.0 && spec.peak_el_deg <= 90.0))
    fail(ErrorKind::InvalidArgument,
         "peak elevation " + io::fmt(spec.peak_el_deg) + " outside (0, 90]");
  if (!(spec.altitude_km > 0.0))
    fail(ErrorKind::InvalidArgument, "altitude must be positive");
  if (!(spec.sample_step_s > 0.0))
    fail(ErrorKind::InvalidArgument, "sample step must be positive");
  if (!(spec.min_el_deg >= 0.0 && spec.min_el_deg < spec.peak_el_deg))
    fail(ErrorKind::InvalidArgument,
         "minimum elevation " + io::fmt(spec.min_el_deg) +
             " must lie in [0, peak elevation)");

  const double orbit_radius = kEarthRadiusKm + spec.altitude_km;
  const double ratio = kEarthRadiusKm / orbit_radius;
  const double omega = std::sqrt(kEarthMuKm3S2 / std::pow(orbit_radius, 3));
  const double peak = deg2rad(spec.peak_el_deg);

  // Ground-track offset: elevation at closest approach decreases
  // monotonically from 90 deg (offset 0) to 0 deg (offset acos(ratio)).
  double offset = 0.0;
  if (spec.peak_el_deg < 90.0) {
    double lo = 0.0;
    double hi = std::acos(ratio);
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (elevation_from_central_angle(mid, ratio) > peak)
        lo = mid;
      else
        hi = mid;
    }
    offset = 0.5 * (lo + hi);
    const double achieved = rad2deg(elevation_from_central_angle(offset, ratio));
    if (std::abs(achieved - spec.peak_el_deg) > 0.01)
      fail(ErrorKind::InvalidArgument,
           "peak elevation " + io::fmt(spec.peak_el_deg) +
               " unreachable at altitude " + io::fmt(spec.altitude_km) + " km");
  }

  const double min_el = deg2rad(spec.min_el_deg);
  const double edge_psi = std::acos(ratio * std::cos(min_el)) - min_el;
  const double half_span = std::acos(std::cos(edge_psi) / std::cos(offset)) / omega;
  const auto half_count =
      static_cast<long>(std::floor(half_span / spec.sample_step_s + 1e-9));
  if (half_count < 1)
    fail(ErrorKind::InvalidArgument,
         "pass above minimum elevation is shorter than one sample step");

  std::vector<double> t, az, el;
  for (long k = -half_count; k <= half_count; ++k) {
    const double phase = omega * static_cast<double>(k) * spec.sample_step_s;
    // Sub-satellite direction in the station's east/north/up frame, scaled by
    // the orbit radius; the station sits at kEarthRadiusKm along "up".
    const double east = orbit_radius * std::sin(offset) * std::cos(phase);
    const double north = orbit_radius * std::sin(phase);
    const double psi = std::acos(std::cos(offset) * std::cos(phase));
    const double elevation = std::clamp(
        rad2deg(elevation_from_central_angle(psi, ratio)), 0.0, 90.0);
    // Straight overhead the azimuth is undefined; use the offset side, which
    // is the limit of near-zenith passes.
    const double azimuth = std::hypot(east, north) < 1e-9 * orbit_radius
                               ? 90.0
                               : wrap360(rad2deg(std::atan2(east, north)));
    t.push_back(static_cast<double>(k + half_count) * spec.sample_step_s);
    az.push_back(azimuth);
    el.push_back(elevation);
  }

  const auto unwrapped = unwrap_azimuth(az);
  std::vector<AngularSample> samples(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) samples[i] = {t[i], unwrapped[i], el[i]};
  return PassTrajectory(std::move(samples));
}

}  // namespace sattrack
