#pragma once

#include <Eigen/Core>
#include <limits>
#include <string>
#include <string_view>

#include "uuvloc/camera.hpp"
#include "uuvloc/geodesy.hpp"
#include "uuvloc/geometry.hpp"

namespace uuvloc {

enum class GimbalFrame {
  World,  ///< gimbal angles are relative to the local ENU frame
  Body,   ///< gimbal angles are relative to the UAV body
};

/**
 * @brief How the camera is mounted on the UAV.
 *
 * cam_offset is the camera position relative to the altitude/GPS reference
 * point, in the body frame (z up), meters. gimbal_pitch_sign flips the
 * telemetry pitch before use: +1 means -90 deg is nadir.
 */
struct RigConfig {
  Eigen::Vector3d cam_offset = Eigen::Vector3d::Zero();
  int gimbal_pitch_sign = 1;
  GimbalFrame gimbal_frame = GimbalFrame::World;
};

/// Throws Error(InvalidArgument) if |cam_offset| >= 10 m or the sign is not +-1.
void validate(const RigConfig& rig);

/// One synchronised measurement bundle. Angles in radians.
struct Observation {
  double t = 0.0;
  PixelCoord px;
  double a_uav = 0.0;  ///< altitude of the UAV above the water surface, up
  double d_uuv = 0.0;  ///< depth of the UUV below the surface, down
  GimbalAngles gimbal;
  BodyAttitude body;
  GeodeticCoord ref_geo;  ///< UAV GPS fix, origin of the output ENU frame
};

/// Vertical distance the camera sits below the UAV reference point.
double camera_drop(const RigConfig& rig, const BodyAttitude& body);

/// Camera height above the water: a_uav - camera_drop.
double camera_altitude(double a_uav, const RigConfig& rig, const BodyAttitude& body);

/**
 * @brief Horizontal plane of the UUV in the camera-centred ENU frame.
 *
 * Point (0, 0, -(a_uav - drop + d_uuv)), normal +Z. Throws
 * Error(DegenerateGeometry) when the camera is not strictly above it.
 */
Plane build_plane(double a_uav, double d_uuv, double drop);

/// R^C_G for this observation, honouring the rig's gimbal conventions.
RotationMatrix camera_rotation(const GimbalAngles& gimbal, const BodyAttitude& body,
                               const RigConfig& rig);

struct CameraFrameFix {
  Eigen::Vector3d point;    ///< UUV position in the camera frame, meters
  double d = 0.0;           ///< ray scale, point = (x', y', 1) * d
  double conditioning = 0;  ///< |l_hat . n| in the camera frame
};

/**
 * Pixel -> normalized -> undistort -> ray -> depth-plane intersection.
 * Throws Error with NonConvergence, ParallelRay, BehindCamera or
 * DegenerateGeometry.
 */
CameraFrameFix recover_camera_frame(const Observation& obs,
                                    const CameraCalibration& calib,
                                    const RigConfig& rig);

/// Camera-frame point to the ENU frame anchored at the UAV reference point.
Eigen::Vector3d camera_to_uav_enu(const Eigen::Vector3d& p_cam, const Observation& obs,
                                  const RigConfig& rig);

inline constexpr double kMinConditioning = 1e-3;

enum class SampleStatus {
  Ok,
  Degenerate,
  BehindCamera,
  ParallelRay,
  IllConditioned,
  NonConvergence,
  InvalidInput,
};

std::string_view to_string(SampleStatus status);

/// Full per-sample result. Geometric failures are reported via status.
struct RecoveredSample {
  SampleStatus status = SampleStatus::Ok;
  std::string detail;
  bool out_of_frame = false;
  Eigen::Vector3d camera_point = Eigen::Vector3d::Zero();
  Eigen::Vector3d enu = Eigen::Vector3d::Zero();
  GeodeticCoord geodetic;
  double a_cam = 0.0;
  /// Principal-ray intersection with the water surface, ENU east/north.
  /// NaN when the optical axis does not reach the surface.
  Eigen::Vector2d nadir_en = Eigen::Vector2d::Constant(std::numeric_limits<double>::quiet_NaN());

  bool ok() const { return status == SampleStatus::Ok; }
};

RecoveredSample recover_observation(const Observation& obs,
                                    const CameraCalibration& calib,
                                    const RigConfig& rig,
                                    const Ellipsoid& ell = Ellipsoid::wgs84());

}  // namespace uuvloc
