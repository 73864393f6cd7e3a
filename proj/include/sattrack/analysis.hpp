#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "sattrack/simulation.hpp"

namespace sattrack {

struct EcdfPoint {
  double x = 0.0;
  double F = 0.0;
};

/// Empirical CDF evaluated at the unique sample values: F(x) = #{v <= x} / n.
struct EcdfSeries {
  std::vector<EcdfPoint> points;

  /// Right-continuous step function; 0 below the smallest sample.
  double operator()(double x) const;
};

EcdfSeries ecdf(std::span<const double> values);

/// Fraction of values <= threshold.
double fraction_within(std::span<const double> values, double threshold);

/// Nearest-rank percentile, p in (0, 100].
double percentile(std::span<const double> values, double p);

struct TraceSummary {
  std::size_t records = 0;
  double max_deg = 0.0;
  double mean_deg = 0.0;
  double rmse_deg = 0.0;
  double p50_deg = 0.0;
  double p90_deg = 0.0;
  double p99_deg = 0.0;
  // Fraction of records in each phase, indexed by Phase.
  std::array<double, 4> phase_fraction{};

  double fraction(Phase p) const { return phase_fraction[static_cast<int>(p)]; }
};

TraceSummary summarize(const SimulationTrace& trace);

std::vector<double> pointing_errors(const SimulationTrace& trace);

/// Fixed key order, one `key = value` per line.
std::string summary_to_text(const TraceSummary& summary);

void write_summary(const TraceSummary& summary, const std::filesystem::path& path);
void write_ecdf(const EcdfSeries& series, const std::filesystem::path& path);

}  // namespace sattrack
