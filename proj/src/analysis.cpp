#include "sattrack/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "io_util.hpp"
#include "sattrack/error.hpp"

namespace sattrack {

namespace {

void require_samples(std::span<const double> values, const char* what) {
  if (values.empty()) fail(ErrorKind::InvalidArgument, std::string(what) + " of an empty sample");
  for (double v : values)
    if (!std::isfinite(v))
      fail(ErrorKind::InvalidArgument, std::string(what) + " needs finite values");
}

}  // namespace

double EcdfSeries::operator()(double x) const {
  auto it = std::upper_bound(points.begin(), points.end(), x,
                             [](double v, const EcdfPoint& p) { return v < p.x; });
  return it == points.begin() ? 0.0 : std::prev(it)->F;
}

EcdfSeries ecdf(std::span<const double> values) {
  require_samples(values, "ecdf");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  EcdfSeries out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    out.points.push_back({sorted[i], static_cast<double>(i + 1) / n});
  }
  return out;
}

double fraction_within(std::span<const double> values, double threshold) {
  require_samples(values, "fraction_within");
  const auto count = std::count_if(values.begin(), values.end(),
                                   [&](double v) { return v <= threshold; });
  return static_cast<double>(count) / static_cast<double>(values.size());
}

double percentile(std::span<const double> values, double p) {
  require_samples(values, "percentile");
  if (!(p > 0.0 && p <= 100.0))
    fail(ErrorKind::InvalidArgument, "percentile must lie in (0, 100]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto rank = static_cast<std::size_t>(
      std::ceil(p / 100.0 * static_cast<double>(sorted.size())));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

std::vector<double> pointing_errors(const SimulationTrace& trace) {
  std::vector<double> out;
  out.reserve(trace.records.size());
  for (const auto& r : trace.records) out.push_back(r.pointing_error);
  return out;
}

TraceSummary summarize(const SimulationTrace& trace) {
  if (trace.records.empty()) fail(ErrorKind::InvalidArgument, "summary of an empty trace");
  auto errors = pointing_errors(trace);
  TraceSummary s;
  s.records = errors.size();
  const double n = static_cast<double>(errors.size());
  double sum = 0.0, sum_sq = 0.0;
  std::array<std::size_t, 4> counts{};
  for (const auto& r : trace.records) {
    sum += r.pointing_error;
    sum_sq += r.pointing_error * r.pointing_error;
    ++counts[static_cast<int>(r.phase)];
  }
  std::sort(errors.begin(), errors.end());
  s.max_deg = errors.back();
  s.mean_deg = sum / n;
  s.rmse_deg = std::sqrt(sum_sq / n);
  s.p50_deg = percentile(errors, 50.0);
  s.p90_deg = percentile(errors, 90.0);
  s.p99_deg = percentile(errors, 99.0);
  for (int i = 0; i < 4; ++i) s.phase_fraction[i] = static_cast<double>(counts[i]) / n;
  return s;
}

std::string summary_to_text(const TraceSummary& s) {
  std::string out;
  out += "records = " + std::to_string(s.records) + "\n";
  out += "max_deg = " + io::fmt(s.max_deg) + "\n";
  out += "mean_deg = " + io::fmt(s.mean_deg) + "\n";
  out += "rmse_deg = " + io::fmt(s.rmse_deg) + "\n";
  out += "p50_deg = " + io::fmt(s.p50_deg) + "\n";
  out += "p90_deg = " + io::fmt(s.p90_deg) + "\n";
  out += "p99_deg = " + io::fmt(s.p99_deg) + "\n";
  for (Phase p : {Phase::Wait, Phase::Latency, Phase::MoveAz, Phase::MoveEl})
    out += "fraction_" + std::string(to_string(p)) + " = " + io::fmt(s.fraction(p)) + "\n";
  return out;
}

void write_summary(const TraceSummary& summary, const std::filesystem::path& path) {
  io::write_atomic(path, summary_to_text(summary));
}

void write_ecdf(const EcdfSeries& series, const std::filesystem::path& path) {
  std::string out = "x,F\n";
  for (const auto& p : series.points) out += io::fmt(p.x) + "," + io::fmt(p.F) + "\n";
  io::write_atomic(path, out);
}

}  // namespace sattrack
