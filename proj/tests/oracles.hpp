#pragma once

// Reference computations used only by the tests. Nothing here calls into the
// library code it is used to check.

#include <Eigen/Core>
#include <cmath>

namespace oracle {

/// Plain passive elementary rotations built from std::sin/std::cos.
inline Eigen::Matrix3d rx(double a) {
  Eigen::Matrix3d m;
  m << 1, 0, 0, 0, std::cos(a), std::sin(a), 0, -std::sin(a), std::cos(a);
  return m;
}
inline Eigen::Matrix3d ry(double a) {
  Eigen::Matrix3d m;
  m << std::cos(a), 0, -std::sin(a), 0, 1, 0, std::sin(a), 0, std::cos(a);
  return m;
}
inline Eigen::Matrix3d rz(double a) {
  Eigen::Matrix3d m;
  m << std::cos(a), std::sin(a), 0, -std::sin(a), std::cos(a), 0, 0, 0, 1;
  return m;
}

/// Camera-from-ENU chain composed by hand: permutation * (Rz Ry Rx)^T.
inline Eigen::Matrix3d camera_from_enu(double yaw, double pitch, double roll) {
  Eigen::Matrix3d perm;
  perm << 0, 1, 0, 0, 0, 1, 1, 0, 0;
  return perm * (rz(yaw) * ry(pitch) * rx(roll)).transpose();
}

/// Brown-Conrady written out term by term.
inline Eigen::Vector2d distort(double x, double y, double k1, double k2, double k3, double p1,
                               double p2) {
  const double r2 = x * x + y * y;
  const double r4 = r2 * r2;
  const double r6 = r4 * r2;
  const double radial = 1.0 + k1 * r2 + k2 * r4 + k3 * r6;
  return {x * radial + 2.0 * p1 * x * y + p2 * (r2 + 2.0 * x * x),
          y * radial + p1 * (r2 + 2.0 * y * y) + 2.0 * p2 * x * y};
}

/// Jacobian determinant of distort() by central differences.
inline double distort_jacobian_det(double x, double y, double k1, double k2, double k3,
                                   double p1, double p2) {
  const double h = 1e-6;
  const Eigen::Vector2d dx =
      (distort(x + h, y, k1, k2, k3, p1, p2) - distort(x - h, y, k1, k2, k3, p1, p2)) / (2 * h);
  const Eigen::Vector2d dy =
      (distort(x, y + h, k1, k2, k3, p1, p2) - distort(x, y - h, k1, k2, k3, p1, p2)) / (2 * h);
  return dx.x() * dy.y() - dx.y() * dy.x();
}

/// True when the distortion map keeps a positive Jacobian along the segment
/// from the origin to (x, y), i.e. the point lies on the invertible sheet.
inline bool on_invertible_sheet(double x, double y, double k1, double k2, double k3, double p1,
                                double p2) {
  for (int i = 0; i <= 64; ++i) {
    const double s = i / 64.0;
    if (distort_jacobian_det(s * x, s * y, k1, k2, k3, p1, p2) <= 0.05) return false;
  }
  return true;
}

struct Geodetic {
  double lat, lon, h;
};

/// Bowring's iteration on the parametric (reduced) latitude.
inline Geodetic bowring(double x, double y, double z, double a, double b, int iterations = 20) {
  const double e2 = 1.0 - (b * b) / (a * a);
  const double ep2 = (a * a) / (b * b) - 1.0;
  const double p = std::hypot(x, y);
  double beta = std::atan2(a * z, b * p);
  double lat = 0.0;
  for (int i = 0; i < iterations; ++i) {
    lat = std::atan2(z + ep2 * b * std::pow(std::sin(beta), 3),
                     p - e2 * a * std::pow(std::cos(beta), 3));
    beta = std::atan2(b * std::sin(lat), a * std::cos(lat));
  }
  const double n = a / std::sqrt(1.0 - e2 * std::sin(lat) * std::sin(lat));
  const double h = std::abs(std::cos(lat)) > 0.1
                       ? p / std::cos(lat) - n
                       : z / std::sin(lat) - n * (1.0 - e2);
  return {lat, std::atan2(y, x), h};
}

/// Geodetic -> ECEF from the textbook e^2 form (not the library's radius form).
inline Eigen::Vector3d geodetic_to_ecef(double lat, double lon, double h, double a, double b) {
  const double e2 = 1.0 - (b * b) / (a * a);
  const double n = a / std::sqrt(1.0 - e2 * std::sin(lat) * std::sin(lat));
  return {(n + h) * std::cos(lat) * std::cos(lon), (n + h) * std::cos(lat) * std::sin(lon),
          (n * (1.0 - e2) + h) * std::sin(lat)};
}

/// First-order planar error of a nadir camera: one pixel of noise moves the
/// ray footprint by range / focal, so per-axis sigma = sigma_px * range / f.
inline double nadir_sigma_per_axis(double sigma_px, double range, double focal) {
  return sigma_px * range / focal;
}

/// Mean of a 2D isotropic Gaussian's norm (Rayleigh mean).
inline double rayleigh_mean(double sigma) { return sigma * std::sqrt(M_PI / 2.0); }

}  // namespace oracle
