#pragma once

// Small CSV and file helpers shared by the readers and writers.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace sattrack::io {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line of each row

  /// Index of `name` in the header; throws Parse if absent.
  std::size_t column(std::string_view name,
                     const std::filesystem::path& source) const;
};

CsvTable read_csv(const std::filesystem::path& path);

/// Strict full-field double parse; throws Parse naming line and column.
double parse_double(std::string_view field, const std::filesystem::path& source,
                    std::size_t line, std::string_view column);

std::string_view trim(std::string_view s);

/// Fixed 12-significant-digit formatting used by every numeric output.
std::string fmt(double v);

/// Azimuth wrapped to [0, 360) and rounded to 1e-9 deg, so that a value read
/// back and re-unwrapped formats identically.
std::string fmt_azimuth(double az_deg);

/// Writes `content` to a temporary sibling and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace sattrack::io
