#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string_view>
#include <vector>

#include "uuvloc/camera.hpp"
#include "uuvloc/geodesy.hpp"
#include "uuvloc/geometry.hpp"
#include "uuvloc/recovery.hpp"

namespace uuvloc {

/// Independent zero-mean Gaussian noise per channel. sigma_gimbal is in
/// radians and applies to each of yaw, pitch and roll.
struct NoiseSpec {
  double sigma_px = 0.0;
  double sigma_alt = 0.0;
  double sigma_depth = 0.0;
  double sigma_gimbal = 0.0;
  std::uint64_t seed = 0;
};

struct ScenarioSample {
  double t = 0.0;
  /// True UUV position in the ENU frame anchored at the UAV reference point.
  Eigen::Vector3d uuv_enu = Eigen::Vector3d::Zero();
  double a_uav = 0.0;
  GimbalAngles gimbal;
  BodyAttitude body;
};

struct Scenario {
  std::vector<ScenarioSample> samples;
  CameraCalibration calib;
  RigConfig rig;
  NoiseSpec noise;
  GeodeticCoord ref_geo;
};

/// Depth of the UUV below the surface implied by a sample.
double sample_depth(const ScenarioSample& s);

/// Throws Error(InvalidArgument) on non-increasing time, negative sigmas or
/// a UUV above the water surface.
void validate(const Scenario& s);

enum class TrajectoryPattern { Lawnmower, Circle, Line };

TrajectoryPattern parse_pattern(std::string_view name);

/// Parameters for the built-in trajectory generators. The UAV hovers; the
/// UUV moves around `center` (east, north) inside +-extent meters while its
/// depth oscillates between depth_min and depth_max.
struct TrajectorySpec {
  TrajectoryPattern pattern = TrajectoryPattern::Lawnmower;
  std::size_t samples = 500;
  double duration = 100.0;
  double extent = 10.0;
  int lanes = 5;
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double a_uav = 25.0;
  double depth_min = 0.63;
  double depth_max = 0.63;
  double depth_cycles = 3.0;
  GimbalAngles gimbal{0.0, -std::numbers::pi / 2.0, 0.0};  // nadir
  BodyAttitude body;
};

std::vector<ScenarioSample> generate_trajectory(const TrajectorySpec& spec);

/// Camera-centred ENU point to pixel through rotation, perspective division,
/// distortion and K. Throws Error(BehindCamera) if camera-frame z <= 1e-9.
PixelCoord project_point(const Eigen::Vector3d& p_enu_cam, const RotationMatrix& cam_from_enu,
                         const CameraCalibration& calib);

PixelCoord project_point(const Eigen::Vector3d& p_enu_cam, const GimbalAngles& gimbal,
                         const BodyAttitude& body, const CameraCalibration& calib,
                         const RigConfig& rig);

struct GroundTruthSample {
  double t = 0.0;
  Eigen::Vector3d enu = Eigen::Vector3d::Zero();
};

struct SyntheticLogs {
  std::vector<Observation> observations;
  std::vector<GroundTruthSample> ground_truth;
};

/**
 * Projects every sample, then applies seeded noise. Throws
 * Error(InfeasibleScene) naming the first sample whose noiseless pixel falls
 * outside the image or behind the camera.
 */
SyntheticLogs generate_logs(const Scenario& s);

}  // namespace uuvloc
