#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;  // stdout and stderr combined
};

struct Workdir {
  Workdir() {
    path = fs::temp_directory_path() / ("sattrack_cli_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter++));
    fs::create_directories(path);
  }
  ~Workdir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
  static inline int counter = 0;
  fs::path path;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = "env -u SATTRACK_OUT_DIR " + env + " '" SATTRACK_CLI_PATH "' " +
                          args + " 2>&1";
  Result r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::vector<std::string>> read_rows(const std::string& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

double max_column(const std::string& p, std::size_t col) {
  double m = -1e300;
  for (const auto& r : read_rows(p)) m = std::max(m, std::stod(r.at(col)));
  return m;
}

}  // namespace

TEST_CASE("gen-pass") {
  Workdir w;
  auto r = run("gen-pass --peak-el 83 --out " + (w / "p83.csv"));
  REQUIRE(r.code == 0);
  CHECK(max_column(w / "p83.csv", 2) == doctest::Approx(83.0).epsilon(0.01 / 83));
  CHECK(slurp(w / "p83.csv").rfind("time_s,az_deg,el_deg\n", 0) == 0);

  r = run("gen-pass --peak-el 90 --out " + (w / "p90.csv"));
  CHECK(r.code == 0);
  r = run("gen-pass --peak-el 95 --out " + (w / "p95.csv"));
  CHECK(r.code == 3);
  CHECK_FALSE(fs::exists(w / "p95.csv"));

  r = run("gen-pass --peak-el 47", "SATTRACK_OUT_DIR='" + w.path.string() + "'");
  CHECK(r.code == 0);
  CHECK(fs::exists(w / "pass.csv"));
  CHECK(run("gen-pass --peak-el 47").code == 2);
}

TEST_CASE("simulate profiles") {
  Workdir w;
  REQUIRE(run("gen-pass --peak-el 47 --out " + (w / "p.csv")).code == 0);

  auto r = run("simulate --traj " + (w / "p.csv") + " --profile A --out " + (w / "a"));
  REQUIRE(r.code == 0);
  const double max_a = max_column(w / "a/trace.csv", 6);
  CHECK(max_a < 1.0);
  CHECK(slurp(w / "a/summary.txt").find("rmse_deg = ") != std::string::npos);

  r = run("simulate --traj " + (w / "p.csv") + " --profile B --out " + (w / "b"));
  REQUIRE(r.code == 0);
  CHECK(max_column(w / "b/trace.csv", 6) > max_a);

  r = run("simulate --traj " + (w / "p.csv") + " --profile C --out " + (w / "c"));
  REQUIRE(r.code == 0);
  CHECK(fs::exists(w / "c/aps_report.txt"));
  CHECK(fs::exists(w / "c/aps_history.csv"));

  r = run("simulate --traj " + (w / "p.csv") + " --profile 3,1.5 --out " + (w / "d"));
  CHECK(r.code == 0);
  r = run("simulate --traj " + (w / "p.csv") + " --profile 40,1.5 --out " + (w / "e"));
  CHECK(r.code == 0);
  CHECK(r.out.find("note:") != std::string::npos);
}

TEST_CASE("simulate errors and exit codes") {
  Workdir w;
  REQUIRE(run("gen-pass --peak-el 47 --out " + (w / "p.csv")).code == 0);

  auto r = run("simulate --traj " + (w / "p.csv") + " --config " + (w / "nope.ini") +
               " --out " + (w / "o"));
  CHECK(r.code == 3);
  CHECK(r.out.find("nope.ini") != std::string::npos);

  r = run("simulate --traj " + (w / "missing.csv") + " --out " + (w / "o"));
  CHECK(r.code == 3);
  CHECK(r.out.find("missing.csv") != std::string::npos);

  std::ofstream(w / "bad.csv") << "time_s,az_deg,el_deg\n0,10,20\n1,abc,20\n";
  r = run("simulate --traj " + (w / "bad.csv") + " --out " + (w / "o"));
  CHECK(r.code == 3);
  CHECK(r.out.find(":3") != std::string::npos);

  CHECK(run("simulate --traj " + (w / "p.csv") + " --profile Z --out " + (w / "o")).code == 2);
  CHECK(run("simulate --out " + (w / "o")).code == 2);
  CHECK(run("simulate --traj " + (w / "p.csv")).code == 2);
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("--help").code == 0);

  // Output directory blocked by a regular file.
  std::ofstream(w / "blocker") << "x";
  r = run("simulate --traj " + (w / "p.csv") + " --out " + (w / "blocker"));
  CHECK(r.code == 4);
}

TEST_CASE("analyze") {
  Workdir w;
  REQUIRE(run("gen-pass --peak-el 47 --out " + (w / "p.csv")).code == 0);
  REQUIRE(run("simulate --traj " + (w / "p.csv") + " --out " + (w / "s")).code == 0);
  std::ofstream(w / "ant.ini") << "[antenna]\ngain_dbi = 46\nefficiency = 0.7\nfrequency_ghz = 130\n";

  auto r = run("analyze --trace " + (w / "s/trace.csv") + " --ecdf --loss --roc --antenna " +
               (w / "ant.ini"));
  REQUIRE(r.code == 0);
  const auto ecdf_rows = read_rows(w / "s/ecdf.csv");
  REQUIRE_FALSE(ecdf_rows.empty());
  CHECK(ecdf_rows.back().at(1) == "1");
  CHECK(slurp(w / "s/loss.csv").rfind("time_s,lp_db\n", 0) == 0);
  CHECK(slurp(w / "s/roc.csv").rfind("time_s,roc_db_per_s\n", 0) == 0);

  CHECK(run("analyze --trace " + (w / "s/trace.csv") + " --loss").code == 2);
  CHECK(run("analyze --trace " + (w / "s/trace.csv")).code == 2);
  r = run("analyze --trace " + (w / "s/trace.csv") + " --roc --window-s 100000 --antenna " +
          (w / "ant.ini") + " --out " + (w / "x"));
  CHECK(r.code == 3);
}

TEST_CASE("analyze a constant-error trace gives zero rate of change") {
  Workdir w;
  std::ofstream tr(w / "trace.csv");
  tr << "time_s,sat_az_deg,sat_el_deg,mount_az_deg,mount_el_deg,phase,pointing_error_deg\n";
  for (int i = 0; i < 600; ++i)
    tr << i * 0.005 << ",10,20,10.1,20,WAIT,0.1\n";
  tr.close();
  std::ofstream(w / "ant.ini") << "[antenna]\ngain_dbi = 46\n";
  REQUIRE(run("analyze --trace " + (w / "trace.csv") + " --roc --antenna " + (w / "ant.ini"))
              .code == 0);
  const auto rows = read_rows(w / "roc.csv");
  REQUIRE(rows.size() == 400);
  for (const auto& row : rows) CHECK(row.at(1) == "0");
}

TEST_CASE("reruns are byte-identical") {
  Workdir w;
  REQUIRE(run("gen-pass --peak-el 70 --out " + (w / "p.csv")).code == 0);
  REQUIRE(run("simulate --traj " + (w / "p.csv") + " --profile C --out " + (w / "1")).code == 0);
  REQUIRE(run("simulate --traj " + (w / "p.csv") + " --profile C --out " + (w / "2")).code == 0);
  for (const char* f : {"trace.csv", "summary.txt", "aps_report.txt", "aps_history.csv"})
    CHECK(slurp(w / (std::string("1/") + f)) == slurp(w / (std::string("2/") + f)));
}
