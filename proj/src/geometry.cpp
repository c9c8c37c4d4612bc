#include "uuvloc/geometry.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "uuvloc/error.hpp"

namespace uuvloc {

namespace {

// sin/cos that are exact at integer multiples of pi/2, so a nadir gimbal
// (-90 deg) yields an exact axis permutation instead of 6e-17 residue.
std::pair<double, double> sincos_exact(double angle) {
  constexpr double kQuarter = std::numbers::pi / 2.0;
  const double quarters = angle / kQuarter;
  const double rounded = std::nearbyint(quarters);
  if (rounded * kQuarter == angle && std::abs(rounded) <= 8.0) {
    switch (((static_cast<int>(rounded) % 4) + 4) % 4) {
      case 0: return {0.0, 1.0};
      case 1: return {1.0, 0.0};
      case 2: return {0.0, -1.0};
      default: return {-1.0, 0.0};
    }
  }
  return {std::sin(angle), std::cos(angle)};
}

}  // namespace

double wrap_angle(double radians) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double wrapped = std::remainder(radians, kTwoPi);  // [-pi, pi]
  if (wrapped <= -std::numbers::pi) wrapped += kTwoPi;
  return wrapped;
}

RotationMatrix RotationMatrix::from_matrix(const Eigen::Matrix3d& m,
                                           double tolerance) {
  RotationMatrix r(m);
  if (!m.allFinite() || r.orthonormality_error() > tolerance) {
    throw Error(ErrorCode::InvalidArgument, "matrix is not a proper rotation");
  }
  return r;
}

double RotationMatrix::orthonormality_error() const {
  const double ortho =
      (m_.transpose() * m_ - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  return std::max(ortho, std::abs(m_.determinant() - 1.0));
}

RotationMatrix rot_x(double roll) {
  const auto [s, c] = sincos_exact(roll);
  Eigen::Matrix3d m;
  m << 1, 0, 0,
       0, c, s,
       0, -s, c;
  return RotationMatrix(m);
}

RotationMatrix rot_y(double pitch) {
  const auto [s, c] = sincos_exact(pitch);
  Eigen::Matrix3d m;
  m << c, 0, -s,
       0, 1, 0,
       s, 0, c;
  return RotationMatrix(m);
}

RotationMatrix rot_z(double yaw) {
  const auto [s, c] = sincos_exact(yaw);
  Eigen::Matrix3d m;
  m << c, s, 0,
       -s, c, 0,
       0, 0, 1;
  return RotationMatrix(m);
}

YawPitchRoll normalized(const YawPitchRoll& angles) {
  return {wrap_angle(angles.yaw), wrap_angle(angles.pitch), wrap_angle(angles.roll)};
}

RotationMatrix ypr_rotation(const YawPitchRoll& angles) {
  return rot_z(angles.yaw) * rot_y(angles.pitch) * rot_x(angles.roll);
}

RotationMatrix camera_from_forward_frame() {
  // rows: X_cam = Y_fwd, Y_cam = Z_fwd, Z_cam = X_fwd
  Eigen::Matrix3d m;
  m << 0, 1, 0,
       0, 0, 1,
       1, 0, 0;
  return RotationMatrix(m);
}

RotationMatrix gimbal_to_camera_rotation(const GimbalAngles& gimbal) {
  return camera_from_forward_frame() * ypr_rotation(gimbal).transpose();
}

Plane make_plane(const Eigen::Vector3d& point, const Eigen::Vector3d& normal) {
  const double norm = normal.norm();
  if (!(norm > 0.0) || !std::isfinite(norm) || !point.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "plane needs a finite point and non-zero normal");
  }
  return Plane{point, normal / norm};
}

Intersection intersect_ray_plane(const Ray& ray, const Plane& plane) {
  const double dir_norm = ray.direction.norm();
  if (!(dir_norm > 0.0) || !std::isfinite(dir_norm)) {
    throw Error(ErrorCode::InvalidArgument, "ray direction must be non-zero");
  }
  const double denom = ray.direction.dot(plane.normal);
  const double conditioning = std::abs(denom) / dir_norm;
  if (conditioning <= kParallelEpsilon) {
    throw Error(ErrorCode::ParallelRay, "ray is parallel to the plane");
  }
  const double d = (plane.point - ray.origin).dot(plane.normal) / denom;
  return Intersection{ray.origin + ray.direction * d, d, conditioning};
}

}  // namespace uuvloc
