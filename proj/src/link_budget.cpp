#include "sattrack/link_budget.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "io_util.hpp"
#include "sattrack/angles.hpp"
#include "sattrack/error.hpp"

namespace sattrack {

namespace {

const double kDbPerNeper = 10.0 / std::log(10.0);

}  // namespace

void AntennaConfig::validate() const {
  if (!std::isfinite(gain_dbi))
    fail(ErrorKind::InvalidArgument, "antenna gain must be finite");
  if (!(efficiency > 0.0 && efficiency <= 1.0))
    fail(ErrorKind::InvalidArgument,
         "antenna efficiency " + io::fmt(efficiency) + " outside (0, 1]");
  if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz))
    fail(ErrorKind::InvalidArgument, "antenna frequency must be positive");
}

double AntennaConfig::gain_linear() const { return std::pow(10.0, gain_dbi / 10.0); }

double AntennaConfig::wavelength_m() const { return kSpeedOfLight / frequency_hz; }

double AntennaConfig::aperture_m2() const {
  return aperture_from_gain(gain_dbi, efficiency, frequency_hz);
}

double aperture_from_gain(double gain_dbi, double efficiency, double frequency_hz) {
  AntennaConfig{gain_dbi, efficiency, frequency_hz, std::nullopt}.validate();
  const double lambda = kSpeedOfLight / frequency_hz;
  return std::pow(10.0, gain_dbi / 10.0) * lambda * lambda /
         (4.0 * kPi * efficiency);
}

PointingLoss pointing_loss(double alpha_e_deg, const AntennaConfig& antenna) {
  antenna.validate();
  if (!(std::abs(alpha_e_deg) < 90.0))
    fail(ErrorKind::Domain, "pointing loss undefined for error " +
                                io::fmt(alpha_e_deg) + " deg (|alpha| >= 90)");
  // With the aperture derived from the gain, pi*eta*A/lambda^2 reduces to
  // G/4, so the loss depends on the gain only.
  const double tan_a = std::tan(deg2rad(alpha_e_deg));
  const double exponent = antenna.gain_linear() / 4.0 * tan_a * tan_a;
  return {std::exp(exponent), exponent * kDbPerNeper};
}

FarFieldCheck far_field_ok(double distance_m, double gain_tx_linear,
                           double gain_rx_linear, double wavelength_m,
                           double margin) {
  if (!(distance_m > 0.0 && gain_tx_linear > 0.0 && gain_rx_linear > 0.0 &&
        wavelength_m > 0.0 && margin > 0.0))
    fail(ErrorKind::InvalidArgument, "far-field check needs positive inputs");
  FarFieldCheck out;
  out.ratio = 8.0 * std::sqrt(kPi) * distance_m /
              (std::sqrt(gain_tx_linear * gain_rx_linear) * wavelength_m);
  out.ok = out.ratio >= margin;
  return out;
}

namespace {

void check_losses(const LinkLosses& l) {
  for (double v : {l.spreading_db, l.absorption_db, l.pointing_db})
    if (!(v >= 0.0) || !std::isfinite(v))
      fail(ErrorKind::InvalidArgument, "link losses must be finite and >= 0 dB");
}

}  // namespace

double received_power(double p_t_watts, const LinkLosses& losses) {
  if (!(p_t_watts > 0.0))
    fail(ErrorKind::InvalidArgument, "transmit power must be positive");
  check_losses(losses);
  const auto lin = [](double db) { return std::pow(10.0, db / 10.0); };
  return p_t_watts / (lin(losses.spreading_db) * lin(losses.absorption_db) *
                      lin(losses.pointing_db));
}

double received_power_db(double p_t_db, const LinkLosses& losses) {
  check_losses(losses);
  return p_t_db - losses.spreading_db - losses.absorption_db - losses.pointing_db;
}

LossSeries pointing_loss_series(const SimulationTrace& trace,
                                const AntennaConfig& antenna) {
  antenna.validate();
  LossSeries out;
  out.samples.reserve(trace.records.size());
  for (const auto& r : trace.records) {
    LossSample s;
    s.t = r.t;
    if (r.pointing_error >= 90.0) {
      s.out_of_domain = true;
      s.lp_db = std::numeric_limits<double>::infinity();
      ++out.out_of_domain_count;
    } else {
      s.lp_db = pointing_loss(r.pointing_error, antenna).db;
    }
    out.samples.push_back(s);
  }
  return out;
}

std::vector<RocSample> roc(const std::vector<LossSample>& series, double window_s,
                           double step_s) {
  if (series.size() < 2)
    fail(ErrorKind::InvalidArgument, "rate of change needs at least 2 samples");
  const double h = series[1].t - series[0].t;
  if (!(h > 0.0)) fail(ErrorKind::InvalidArgument, "loss series time must increase");
  for (std::size_t i = 2; i < series.size(); ++i) {
    const double gap = series[i].t - series[i - 1].t;
    if (std::abs(gap - h) > 1e-6 * h)
      fail(ErrorKind::InvalidArgument,
           "loss series is not uniformly spaced at index " + std::to_string(i));
  }
  if (!(window_s >= h * (1.0 - 1e-9)))
    fail(ErrorKind::InvalidArgument, "window shorter than the series step");
  if (!(step_s > 0.0))
    fail(ErrorKind::InvalidArgument, "window step must be positive");
  const double step_ratio = step_s / h;
  const auto stride = static_cast<std::size_t>(std::llround(step_ratio));
  if (stride == 0 || std::abs(step_ratio - static_cast<double>(stride)) > 1e-6)
    fail(ErrorKind::InvalidArgument,
         "window step must be a multiple of the series step");
  const auto span_steps = static_cast<std::size_t>(std::floor(window_s / h + 1e-9));
  if (span_steps + 1 > series.size())
    fail(ErrorKind::InvalidArgument,
         "window of " + io::fmt(window_s) + " s is longer than the series");

  // Windows cover samples [i, i + span_steps], both ends included.
  std::vector<RocSample> out;
  std::deque<std::size_t> maxq, minq;
  std::size_t next_window = 0;
  for (std::size_t j = 0; j < series.size(); ++j) {
    const double v = series[j].lp_db;
    while (!maxq.empty() && series[maxq.back()].lp_db <= v) maxq.pop_back();
    while (!minq.empty() && series[minq.back()].lp_db >= v) minq.pop_back();
    maxq.push_back(j);
    minq.push_back(j);
    if (j < span_steps) continue;
    const std::size_t start = j - span_steps;
    while (maxq.front() < start) maxq.pop_front();
    while (minq.front() < start) minq.pop_front();
    if (start != next_window) continue;
    const double hi = series[maxq.front()].lp_db;
    const double lo = series[minq.front()].lp_db;
    out.push_back({series[start].t, (hi - lo) / window_s});
    next_window += stride;
  }
  return out;
}

void write_loss_series(const LossSeries& series, const std::filesystem::path& path) {
  std::string out = "time_s,lp_db\n";
  for (const auto& s : series.samples) {
    out += io::fmt(s.t);
    out += ',';
    out += s.out_of_domain ? std::string("inf") : io::fmt(s.lp_db);
    out += '\n';
  }
  io::write_atomic(path, out);
}

void write_roc(const std::vector<RocSample>& roc, const std::filesystem::path& path) {
  std::string out = "time_s,roc_db_per_s\n";
  for (const auto& r : roc) {
    out += io::fmt(r.t);
    out += ',';
    out += io::fmt(r.db_per_s);
    out += '\n';
  }
  io::write_atomic(path, out);
}

}  // namespace sattrack
