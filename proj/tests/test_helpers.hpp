#pragma once

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "sattrack/trajectory.hpp"

namespace testing {

/// az(t) = az0 + az_rate * t, el(t) = el0 + el_rate * t sampled every `step`.
inline sattrack::PassTrajectory constant_rate_pass(double duration, double az_rate,
                                                   double el_rate, double az0 = 100.0,
                                                   double el0 = 30.0, double step = 0.1) {
  std::vector<sattrack::AngularSample> s;
  const auto n = static_cast<int>(std::lround(duration / step));
  for (int i = 0; i <= n; ++i) {
    const double t = i * step;
    s.push_back({t, az0 + az_rate * t, el0 + el_rate * t});
  }
  return sattrack::PassTrajectory(std::move(s));
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("sattrack_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream(p) << content;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace testing
