#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "uuvloc/camera.hpp"
#include "uuvloc/eval.hpp"
#include "uuvloc/recovery.hpp"
#include "uuvloc/synth.hpp"

namespace testing {

inline constexpr double kDeg = std::numbers::pi / 180.0;

/// 4K frame, fx = fy = 2000 px, mild barrel distortion.
inline uuvloc::CameraCalibration aerial_calibration(bool distorted = true) {
  uuvloc::CameraCalibration c;
  c.intrinsics = uuvloc::make_intrinsics(2000.0, 2000.0, 1920.0, 1080.0, 3840, 2160);
  if (distorted) c.distortion = {-0.08, 0.03, -0.005, 0.0004, -0.0006};
  return c;
}

/// Hovering UAV, nadir camera, lawnmower UUV path.
inline uuvloc::Scenario lawnmower_scenario(std::size_t samples, double a_cam,
                                           double depth_min, double depth_max,
                                           const uuvloc::NoiseSpec& noise = {},
                                           bool distorted = true) {
  uuvloc::TrajectorySpec spec;
  spec.pattern = uuvloc::TrajectoryPattern::Lawnmower;
  spec.samples = samples;
  spec.duration = static_cast<double>(samples) * 0.1;
  spec.extent = 10.0;
  spec.a_uav = a_cam;
  spec.depth_min = depth_min;
  spec.depth_max = depth_max;
  uuvloc::Scenario s;
  s.samples = uuvloc::generate_trajectory(spec);
  s.calib = aerial_calibration(distorted);
  s.noise = noise;
  s.ref_geo = uuvloc::make_geodetic(42.7 * kDeg, 17.7 * kDeg, 12.0);
  return s;
}

/// Planar errors of recovering every observation against the true positions.
inline uuvloc::TrajectoryErrorReport recover_and_score(const uuvloc::Scenario& s) {
  const uuvloc::SyntheticLogs logs = uuvloc::generate_logs(s);
  std::vector<Eigen::Vector2d> est;
  std::vector<Eigen::Vector2d> gt;
  std::size_t excluded = 0;
  for (std::size_t i = 0; i < logs.observations.size(); ++i) {
    const auto r = uuvloc::recover_observation(logs.observations[i], s.calib, s.rig);
    if (!r.ok()) {
      ++excluded;
      continue;
    }
    est.push_back(r.enu.head<2>());
    gt.push_back(logs.ground_truth[i].enu.head<2>());
  }
  auto report = uuvloc::trajectory_errors(est, gt);
  report.n_excluded = excluded;
  return report;
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::uint64_t counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("uuvloc_test_" + std::to_string(rd()) + "_" + std::to_string(counter++));
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

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline const char* kCalibrationText =
    "fx = 2000\nfy = 2000\ncx = 1920\ncy = 1080\nwidth = 3840\nheight = 2160\n"
    "k1 = -0.08\nk2 = 0.03\nk3 = -0.005\np1 = 0.0004\np2 = -0.0006\n";

}  // namespace testing
