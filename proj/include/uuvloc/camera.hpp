#pragma once

#include <cstddef>

namespace uuvloc {

/**
 * @brief Pinhole intrinsics (the K matrix) plus image size, all in pixels.
 *
 * Construct through make_intrinsics() to get the invariants checked
 * (positive focal lengths, principal point inside the image).
 */
struct CameraIntrinsics {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;
  int image_width = 1;
  int image_height = 1;
};

CameraIntrinsics make_intrinsics(double fx, double fy, double cx, double cy,
                                 int image_width, int image_height);

/// Brown-Conrady coefficients. A default-constructed value is the identity.
struct DistortionCoeffs {
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;

  static constexpr DistortionCoeffs zero() { return {}; }
  bool is_zero() const {
    return k1 == 0.0 && k2 == 0.0 && k3 == 0.0 && p1 == 0.0 && p2 == 0.0;
  }
  bool finite() const;
};

struct CameraCalibration {
  CameraIntrinsics intrinsics;
  DistortionCoeffs distortion;
};

/// u to the right, v downward. May lie outside the image.
struct PixelCoord {
  double u = 0.0;
  double v = 0.0;
};

/// Image-plane coordinates after perspective division (X/Z, Y/Z).
struct NormalizedCoord {
  double x = 0.0;
  double y = 0.0;
};

bool inside_image(const PixelCoord& px, const CameraIntrinsics& intr);

PixelCoord normalized_to_pixel(const NormalizedCoord& n,
                               const CameraIntrinsics& intr);

/// Throws Error(InvalidArgument) on non-finite input.
NormalizedCoord pixel_to_normalized(const PixelCoord& px,
                                    const CameraIntrinsics& intr);

NormalizedCoord distort(const NormalizedCoord& n, const DistortionCoeffs& d);

struct UndistortOptions {
  int max_iterations = 50;
  double tolerance = 1e-10;
};

/**
 * @brief Inverts distort() by fixed-point iteration starting at the
 * distorted point.
 *
 * Each step divides out the radial factor and subtracts the tangential
 * offset evaluated at the current estimate. Throws Error(NonConvergence)
 * when the residual |distort(x) - n_d| is still above the tolerance after
 * max_iterations, which happens outside the model's invertible region.
 */
NormalizedCoord undistort(const NormalizedCoord& n_d, const DistortionCoeffs& d,
                          const UndistortOptions& opts = {});

}  // namespace uuvloc
