#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sattrack/error.hpp"
#include "sattrack/simulation.hpp"
#include "test_helpers.hpp"

using namespace sattrack;
using doctest::Approx;

namespace {

// Indices of records where a LATENCY phase starts (command issue times).
std::vector<std::size_t> command_starts(const SimulationTrace& tr) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tr.records.size(); ++i)
    if (tr.records[i].phase == Phase::Latency &&
        (i == 0 || tr.records[i - 1].phase != Phase::Latency))
      out.push_back(i);
  return out;
}

const VelocityProfile kTen{ProfileLabel::Custom, 10, 10};

}  // namespace

TEST_CASE("pointing_error examples") {
  CHECK(pointing_error(12, 34, 12, 34) == 0.0);
  CHECK(pointing_error(0, 0, 90, 0) == Approx(90.0).epsilon(1e-14));
  CHECK(pointing_error(0, 45, 180, 45) == Approx(90.0).epsilon(1e-14));
  CHECK(oracle::central_angle_deg(0, 45, 180, 45) == Approx(90.0).epsilon(1e-14));
  CHECK(pointing_error(0, 0, 180, 0) == Approx(180.0).epsilon(1e-14));
  CHECK(pointing_error(359.5, 10, 0.5, 10) == Approx(pointing_error(-0.5, 10, 0.5, 10)));
  CHECK(pointing_error(720 + 30, 20, 30, 20) < 1e-9);
}

TEST_CASE("pointing_error matches the unit-vector oracle and is symmetric") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> az(-720, 720), el(0, 90);
  for (int i = 0; i < 5000; ++i) {
    const double a1 = az(rng), e1 = el(rng), a2 = az(rng), e2 = el(rng);
    const double d = pointing_error(a1, e1, a2, e2);
    CHECK(std::abs(d - oracle::central_angle_deg(a1, e1, a2, e2)) < 1e-9);
    CHECK(d == pointing_error(a2, e2, a1, e1));
    CHECK(d >= 0.0);
    CHECK(d <= 180.0);
  }
}

TEST_CASE("profile_A and profile_B") {
  MountConfig cfg;
  const auto a = profile_A(cfg);
  CHECK(a.label == ProfileLabel::A);
  CHECK(a.v_az == 10.0);
  CHECK(a.v_el == 10.0);
  cfg.v_max_az = 3;
  cfg.v_max_el = 2;
  CHECK(profile_A(cfg).v_az == 3.0);
  CHECK(profile_A(cfg).v_el == 2.0);
  cfg.v_max_az = 0;
  CHECK_THROWS_AS(profile_A(cfg), Error);

  const auto b = profile_B(testing::constant_rate_pass(10, 1.0, 0.2));
  CHECK(b.label == ProfileLabel::B);
  CHECK(b.v_az == Approx(1.0).epsilon(1e-12));
  CHECK(b.v_el == Approx(0.2).epsilon(1e-12));
  CHECK_THROWS_AS(profile_B(PassTrajectory({{0, 30, 40}, {10, 30, 40}})), Error);
}

TEST_CASE("clamp_profile reports each clamped axis") {
  MountConfig cfg;
  std::vector<std::string> notes;
  const auto p = clamp_profile({ProfileLabel::C, 12, 4}, cfg, &notes);
  CHECK(p.v_az == 10.0);
  CHECK(p.v_el == 4.0);
  REQUIRE(notes.size() == 1);
  CHECK(notes[0].find("azimuth") != std::string::npos);
}

TEST_CASE("simulate: stationary satellite gives zero error") {
  PassTrajectory still({{0, 30, 40}, {5, 30, 40}, {10, 30, 40}});
  const auto tr = simulate(still, MountConfig{}, kTen);
  CHECK(tr.records.size() == 2001);
  for (const auto& r : tr.records) {
    CHECK(r.pointing_error == 0.0);
    CHECK(r.phase != Phase::MoveAz);
    CHECK(r.phase != Phase::MoveEl);
  }
}

TEST_CASE("simulate: constant-rate pass shows the periodic sawtooth") {
  const auto pass = testing::constant_rate_pass(60, 1.0, 0.0, 0.0, 45.0);
  MountConfig cfg;
  const auto tr = simulate(pass, cfg, kTen);
  const auto starts = command_starts(tr);
  REQUIRE(starts.size() >= 50);
  for (std::size_t i = 1; i < starts.size(); ++i)
    CHECK(tr.records[starts[i]].t - tr.records[starts[i - 1]].t == Approx(1.0));
  // Per-cycle minimum close to zero once the satellite reaches the
  // look-ahead point, and the cycle peak bounded by one interval of travel.
  for (std::size_t i = 1; i + 1 < starts.size(); ++i) {
    double lo = 1e9, hi = 0;
    for (std::size_t k = starts[i]; k < starts[i + 1]; ++k) {
      lo = std::min(lo, tr.records[k].pointing_error);
      hi = std::max(hi, tr.records[k].pointing_error);
    }
    CHECK(lo < 0.02);
    CHECK(hi < 1.0 * std::cos(oracle::kPi / 4) + 0.01);
    // The error at the end of WAIT is about one sim step of travel.
    CHECK(tr.records[starts[i + 1] - 1].pointing_error < 1.0 * cfg.sim_step + 1e-9);
  }

  // Same geometry reproduced at a 1 ms step.
  auto fine_cfg = cfg;
  fine_cfg.sim_step = 0.001;
  const auto fine = simulate(pass, fine_cfg, kTen);
  double max_coarse = 0, max_fine = 0;
  for (const auto& r : tr.records) max_coarse = std::max(max_coarse, r.pointing_error);
  for (const auto& r : fine.records) max_fine = std::max(max_fine, r.pointing_error);
  CHECK(max_coarse == Approx(max_fine).epsilon(0.02));
}

TEST_CASE("simulate: lag grows when the satellite outruns the mount") {
  // Mount commanded at the satellite rate: each cycle takes longer than the
  // command interval (latency plus ramps), so the lag accumulates.
  const auto pass = testing::constant_rate_pass(60, 1.0, 0.0, 0.0, 10.0);
  const auto tr = simulate(pass, MountConfig{}, {ProfileLabel::B, 1.0, 1.0});
  const auto starts = command_starts(tr);
  REQUIRE(starts.size() > 5);
  // The final command may target the clamped pass end, so stop short of it.
  for (std::size_t i = 2; i + 1 < starts.size(); ++i) {
    CHECK(tr.records[starts[i]].pointing_error > tr.records[starts[i - 1]].pointing_error);
    CHECK(tr.records[starts[i]].t - tr.records[starts[i - 1]].t > 1.0);
  }
  // No WAIT steps once lagging.
  for (std::size_t k = 0; k < starts.back(); ++k) CHECK(tr.records[k].phase != Phase::Wait);
}

TEST_CASE("simulate invariants on a synthetic pass") {
  const auto pass = generate_synthetic_pass({70, 420, 1, 10});
  MountConfig cfg;
  for (auto profile : {profile_A(cfg), VelocityProfile{ProfileLabel::Custom, 3.0, 1.0},
                       profile_B(pass)}) {
    CAPTURE(profile.v_az);
    const auto tr = simulate(pass, cfg, profile);
    const auto& rec = tr.records;
    const double h = cfg.sim_step;

    REQUIRE(rec.size() == static_cast<std::size_t>(std::floor(pass.duration() / h + 1e-9)) + 1);
    CHECK(rec.front().mount_az == pass.front().az);
    CHECK(rec.front().mount_el == pass.front().el);

    const auto starts = command_starts(tr);
    for (std::size_t c = 0; c < starts.size(); ++c) {
      // LATENCY lasts exactly l / h steps (except a cycle cut by the pass end).
      std::size_t n = 0;
      while (starts[c] + n < rec.size() && rec[starts[c] + n].phase == Phase::Latency) ++n;
      if (starts[c] + 20 < rec.size()) CHECK(n == 20);
    }

    for (std::size_t i = 0; i < rec.size(); ++i) {
      const auto& r = rec[i];
      CHECK(r.t == Approx(i * h));
      CHECK(r.pointing_error >= 0.0);
      CHECK(r.pointing_error <= 180.0);
      CHECK(std::abs(r.pointing_error -
                     oracle::central_angle_deg(r.mount_az, r.mount_el, r.sat_az, r.sat_el)) <
            1e-9);
      if (i == 0) continue;
      const auto& p = rec[i - 1];
      const bool still = (r.phase == Phase::Wait || r.phase == Phase::Latency) &&
                         (p.phase == Phase::Wait || p.phase == Phase::Latency);
      if (still) {
        CHECK(r.mount_az == p.mount_az);
        CHECK(r.mount_el == p.mount_el);
      }
      CHECK(std::abs(r.mount_az - p.mount_az) / h <= tr.profile.v_az + cfg.accel_az * h + 1e-9);
      CHECK(std::abs(r.mount_el - p.mount_el) / h <= tr.profile.v_el + cfg.accel_el * h + 1e-9);
    }

    // Arrival: at each command after the first the mount sits on the
    // previous command's target.
    for (std::size_t c = 1; c < starts.size(); ++c) {
      const double issue = rec[starts[c - 1]].t;
      const auto target = sample_at(pass, std::min(issue + cfg.command_interval_dt,
                                                   pass.end_time()));
      CHECK(std::abs(rec[starts[c]].mount_az - target.az) < 1e-6);
      CHECK(std::abs(rec[starts[c]].mount_el - target.el) < 1e-6);
    }
  }
}

TEST_CASE("simulate: error strictly decreases through WAIT on a trackable pass") {
  const auto pass = testing::constant_rate_pass(30, 1.0, 0.2, 100, 30);
  const auto tr = simulate(pass, MountConfig{}, kTen);
  std::size_t wait_pairs = 0;
  for (std::size_t i = 1; i < tr.records.size(); ++i) {
    if (tr.records[i].phase == Phase::Wait && tr.records[i - 1].phase == Phase::Wait) {
      CHECK(tr.records[i].pointing_error < tr.records[i - 1].pointing_error);
      ++wait_pairs;
    }
  }
  CHECK(wait_pairs > 1000);
}

TEST_CASE("simulate: determinism and axis order") {
  const auto pass = generate_synthetic_pass({47, 420, 1, 10});
  const auto a = simulate(pass, MountConfig{}, {ProfileLabel::Custom, 2.0, 1.0});
  const auto b = simulate(pass, MountConfig{}, {ProfileLabel::Custom, 2.0, 1.0});
  CHECK(trace_to_csv(a) == trace_to_csv(b));

  SimulationOptions el_first;
  el_first.axis_order = AxisOrder::ElevationFirst;
  const auto c = simulate(pass, MountConfig{}, {ProfileLabel::Custom, 2.0, 1.0}, el_first);
  // El moves precede az moves inside each cycle.
  for (std::size_t i = 1; i < c.records.size(); ++i)
    CHECK_FALSE((c.records[i - 1].phase == Phase::MoveAz && c.records[i].phase == Phase::MoveEl));
}

TEST_CASE("simulate: overrun issues the next command at MOVE completion") {
  // A 30-degree jump is far more than one interval of travel.
  PassTrajectory jump({{0, 0, 10}, {1, 0, 10}, {1.5, 30, 10}, {10, 30, 10}});
  MountConfig cfg;
  const auto tr = simulate(jump, cfg, kTen);
  const auto starts = command_starts(tr);
  REQUIRE(starts.size() >= 3);
  // First command targets t = 1 (no motion); second (t = 1) targets t = 2.
  const auto& rec = tr.records;
  const std::size_t second = starts[1];
  CHECK(rec[second].t == Approx(1.0));
  // latency 20 steps + az move (30 deg, v 10, a 20 -> 3.5 s = 700 steps).
  CHECK(starts[2] - second == 20 + 700);
  CHECK(rec[starts[2] - 1].phase == Phase::MoveAz);
}

TEST_CASE("simulate: explicit initial mount position") {
  const auto pass = testing::constant_rate_pass(10, 0.5, 0.0, 50, 20);
  SimulationOptions opt;
  opt.initial_mount = AzEl{40, 20};
  const auto tr = simulate(pass, MountConfig{}, kTen, opt);
  CHECK(tr.records.front().mount_az == 40.0);
  CHECK(tr.records.front().pointing_error > 9.0);
}

TEST_CASE("simulate: errors") {
  MountConfig cfg;
  const auto short_pass = testing::constant_rate_pass(1.5, 1.0, 0.0);
  CHECK_THROWS_AS(simulate(short_pass, cfg, kTen), Error);
  const auto pass = testing::constant_rate_pass(10, 1.0, 0.0);
  CHECK_THROWS_AS(simulate(pass, cfg, {ProfileLabel::Custom, 0.0, 1.0}), Error);
  CHECK_THROWS_AS(simulate(pass, cfg, {ProfileLabel::Custom, 1.0, -1.0}), Error);
}

TEST_CASE("simulate clamps profiles above the mount limits") {
  const auto pass = testing::constant_rate_pass(10, 1.0, 0.0);
  const auto tr = simulate(pass, MountConfig{}, {ProfileLabel::Custom, 25.0, 3.0});
  CHECK(tr.profile.v_az == 10.0);
  CHECK(tr.profile.v_el == 3.0);
  CHECK(tr.diagnostics.size() == 1);
}

TEST_CASE("trace CSV: wrapped azimuth on write, unwrapped on load") {
  testing::TempDir dir;
  const auto pass = testing::constant_rate_pass(20, 2.0, 0.1, 340, 10);
  const auto tr = simulate(pass, MountConfig{}, kTen);
  write_trace(tr, dir / "trace.csv");
  const auto text = testing::read_file(dir / "trace.csv");
  CHECK(text.starts_with(
      "time_s,sat_az_deg,sat_el_deg,mount_az_deg,mount_el_deg,phase,pointing_error_deg\n"
      "0,340,10,340,10,LATENCY,0\n"));
  const auto back = load_trace(dir / "trace.csv");
  REQUIRE(back.records.size() == tr.records.size());
  for (std::size_t i = 0; i < tr.records.size(); i += 97) {
    CHECK(back.records[i].sat_az == Approx(tr.records[i].sat_az).epsilon(1e-10));
    CHECK(back.records[i].mount_az == Approx(tr.records[i].mount_az).epsilon(1e-10));
    CHECK(back.records[i].phase == tr.records[i].phase);
  }
  for (const auto& r : tr.records) {
    CHECK(r.sat_az >= 340.0);  // unwrapped in memory
  }

  testing::write_file(dir / "bad.csv",
                      "time_s,sat_az_deg,sat_el_deg,mount_az_deg,mount_el_deg,phase,"
                      "pointing_error_deg\n0,1,2,3,4,SPIN,0\n");
  CHECK_THROWS_AS(load_trace(dir / "bad.csv"), Error);
}
