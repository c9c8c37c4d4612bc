#pragma once

#include <Eigen/Core>

namespace uuvloc {

/// Wraps an angle in radians into (-pi, pi].
double wrap_angle(double radians);

/**
 * @brief Proper rotation (element of SO(3)).
 *
 * Only produced by the factory functions below or by composition, so every
 * instance is orthonormal with determinant +1 up to round-off.
 */
class RotationMatrix {
 public:
  RotationMatrix() : m_(Eigen::Matrix3d::Identity()) {}

  static RotationMatrix identity() { return {}; }

  /// Validates orthonormality and det = +1 within `tolerance`; throws
  /// Error(InvalidArgument) otherwise.
  static RotationMatrix from_matrix(const Eigen::Matrix3d& m, double tolerance = 1e-9);

  const Eigen::Matrix3d& matrix() const { return m_; }
  double operator()(int row, int col) const { return m_(row, col); }

  RotationMatrix transpose() const { return RotationMatrix(m_.transpose()); }
  RotationMatrix operator*(const RotationMatrix& rhs) const {
    return RotationMatrix(m_ * rhs.m_);
  }
  Eigen::Vector3d operator*(const Eigen::Vector3d& v) const { return m_ * v; }

  /// max |R^T R - I| and |det R - 1|.
  double orthonormality_error() const;

 private:
  explicit RotationMatrix(const Eigen::Matrix3d& m) : m_(m) {}
  friend RotationMatrix rot_x(double);
  friend RotationMatrix rot_y(double);
  friend RotationMatrix rot_z(double);
  friend RotationMatrix camera_from_forward_frame();

  Eigen::Matrix3d m_;
};

// Passive elementary rotations: they rotate the frame, so coordinates of a
// fixed point rotate the opposite way. rot_z(pi/2) * (1,0,0) == (0,-1,0).
RotationMatrix rot_x(double roll);
RotationMatrix rot_y(double pitch);
RotationMatrix rot_z(double yaw);

/// Yaw-pitch-roll triple in radians. Used for gimbal and body attitude.
struct YawPitchRoll {
  double yaw = 0.0;
  double pitch = 0.0;
  double roll = 0.0;
};

using GimbalAngles = YawPitchRoll;
using BodyAttitude = YawPitchRoll;

YawPitchRoll normalized(const YawPitchRoll& angles);

/// R_z(yaw) R_y(pitch) R_x(roll).
RotationMatrix ypr_rotation(const YawPitchRoll& angles);

/**
 * Fixed axis permutation from the X-forward intermediate frame
 * (X optical axis, Y right, Z down) to the camera frame (X right, Y down,
 * Z optical axis).
 */
RotationMatrix camera_from_forward_frame();

/**
 * @brief Rotation taking points in the camera-centred ENU frame to the
 * camera frame: R_cam_from_fwd * (R_z R_y R_x)^T.
 *
 * With pitch = -pi/2 and zero yaw/roll the optical axis points straight
 * down, so (0, 0, -h) maps to (0, 0, h).
 */
RotationMatrix gimbal_to_camera_rotation(const GimbalAngles& gimbal);

struct Ray {
  Eigen::Vector3d origin = Eigen::Vector3d::Zero();
  Eigen::Vector3d direction = Eigen::Vector3d::UnitZ();
};

struct Plane {
  Eigen::Vector3d point = Eigen::Vector3d::Zero();
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();  // unit length
};

/// Normalises `normal`; throws Error(InvalidArgument) for a zero normal.
Plane make_plane(const Eigen::Vector3d& point, const Eigen::Vector3d& normal);

inline constexpr double kParallelEpsilon = 1e-12;

struct Intersection {
  Eigen::Vector3d point;
  double d = 0.0;           ///< ray parameter: point = origin + d * direction
  double conditioning = 0;  ///< |dir_hat . n|
  bool behind() const { return d <= 0.0; }
};

/**
 * Solves (origin + d*dir - p0) . n = 0. Throws Error(ParallelRay) when
 * |dir_hat . n| <= kParallelEpsilon and Error(InvalidArgument) for a zero
 * direction. An intersection behind the origin is returned with
 * behind() == true rather than thrown; the caller decides.
 */
Intersection intersect_ray_plane(const Ray& ray, const Plane& plane);

}  // namespace uuvloc
