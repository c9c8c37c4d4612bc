#include "uuvloc/camera.hpp"

#include <cmath>
#include <string>

#include "uuvloc/error.hpp"

namespace uuvloc {

namespace {

struct DistortionJacobian {
  double dxx, dxy, dyx, dyy;
  double det() const { return dxx * dyy - dxy * dyx; }
};

double radial_factor(double r2, const DistortionCoeffs& d) {
  return 1.0 + r2 * (d.k1 + r2 * (d.k2 + r2 * d.k3));
}

DistortionJacobian jacobian(const NormalizedCoord& n, const DistortionCoeffs& d) {
  const double x = n.x;
  const double y = n.y;
  const double r2 = x * x + y * y;
  const double radial = radial_factor(r2, d);
  // d(radial)/d(r2)
  const double dradial = d.k1 + r2 * (2.0 * d.k2 + 3.0 * d.k3 * r2);
  DistortionJacobian j{};
  j.dxx = radial + 2.0 * x * x * dradial + 2.0 * d.p1 * y + 6.0 * d.p2 * x;
  j.dxy = 2.0 * x * y * dradial + 2.0 * d.p1 * x + 2.0 * d.p2 * y;
  j.dyx = 2.0 * x * y * dradial + 2.0 * d.p1 * x + 2.0 * d.p2 * y;
  j.dyy = radial + 2.0 * y * y * dradial + 6.0 * d.p1 * y + 2.0 * d.p2 * x;
  return j;
}

double residual_norm(const NormalizedCoord& n, const NormalizedCoord& target,
                     const DistortionCoeffs& d) {
  const NormalizedCoord f = distort(n, d);
  return std::hypot(f.x - target.x, f.y - target.y);
}

}  // namespace

CameraIntrinsics make_intrinsics(double fx, double fy, double cx, double cy,
                                 int image_width, int image_height) {
  if (!(fx > 0.0) || !(fy > 0.0) || !std::isfinite(fx) || !std::isfinite(fy)) {
    throw Error(ErrorCode::InvalidArgument, "focal lengths must be positive and finite");
  }
  if (image_width <= 0 || image_height <= 0) {
    throw Error(ErrorCode::InvalidArgument, "image size must be positive");
  }
  if (!(cx >= 0.0 && cx < image_width) || !(cy >= 0.0 && cy < image_height)) {
    throw Error(ErrorCode::InvalidArgument, "principal point must lie inside the image");
  }
  return CameraIntrinsics{fx, fy, cx, cy, image_width, image_height};
}

bool DistortionCoeffs::finite() const {
  return std::isfinite(k1) && std::isfinite(k2) && std::isfinite(k3) &&
         std::isfinite(p1) && std::isfinite(p2);
}

bool inside_image(const PixelCoord& px, const CameraIntrinsics& intr) {
  return px.u >= 0.0 && px.v >= 0.0 && px.u < intr.image_width &&
         px.v < intr.image_height;
}

PixelCoord normalized_to_pixel(const NormalizedCoord& n,
                               const CameraIntrinsics& intr) {
  return {intr.fx * n.x + intr.cx, intr.fy * n.y + intr.cy};
}

NormalizedCoord pixel_to_normalized(const PixelCoord& px,
                                    const CameraIntrinsics& intr) {
  if (!std::isfinite(px.u) || !std::isfinite(px.v)) {
    throw Error(ErrorCode::InvalidArgument, "pixel coordinate is not finite");
  }
  return {(px.u - intr.cx) / intr.fx, (px.v - intr.cy) / intr.fy};
}

NormalizedCoord distort(const NormalizedCoord& n, const DistortionCoeffs& d) {
  const double x = n.x;
  const double y = n.y;
  const double r2 = x * x + y * y;
  const double radial = radial_factor(r2, d);
  return {x * radial + 2.0 * d.p1 * x * y + d.p2 * (r2 + 2.0 * x * x),
          y * radial + d.p1 * (r2 + 2.0 * y * y) + 2.0 * d.p2 * x * y};
}

NormalizedCoord undistort(const NormalizedCoord& n_d, const DistortionCoeffs& d,
                          const UndistortOptions& opts) {
  if (!std::isfinite(n_d.x) || !std::isfinite(n_d.y)) {
    throw Error(ErrorCode::InvalidArgument, "normalized coordinate is not finite");
  }
  if (d.is_zero()) return n_d;

  // Damped Newton on distort(n) = n_d. The start point is pulled toward the
  // origin until it sits on the branch where the map is locally orientation
  // preserving, so the iteration stays on the invertible sheet.
  NormalizedCoord n = n_d;
  for (int i = 0; i < 60 && jacobian(n, d).det() <= 0.0; ++i) {
    n.x *= 0.5;
    n.y *= 0.5;
  }

  double residual = residual_norm(n, n_d, d);
  // Iterates past the tolerance until no further decrease, so the returned
  // point is polished to round-off rather than just inside the tolerance.
  for (int iter = 0; iter < opts.max_iterations && residual > 0.0; ++iter) {
    const NormalizedCoord f = distort(n, d);
    const DistortionJacobian j = jacobian(n, d);
    const double det = j.det();
    if (det == 0.0 || !std::isfinite(det)) break;
    const double ex = n_d.x - f.x;
    const double ey = n_d.y - f.y;
    const double step_x = (j.dyy * ex - j.dxy * ey) / det;
    const double step_y = (-j.dyx * ex + j.dxx * ey) / det;

    double scale = 1.0;
    bool improved = false;
    for (int halving = 0; halving < 30; ++halving, scale *= 0.5) {
      const NormalizedCoord trial{n.x + scale * step_x, n.y + scale * step_y};
      if (jacobian(trial, d).det() <= 0.0) continue;
      const double trial_residual = residual_norm(trial, n_d, d);
      if (trial_residual < residual) {
        n = trial;
        residual = trial_residual;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }

  if (!(residual <= opts.tolerance)) {
    throw Error(ErrorCode::NonConvergence,
                "undistortion did not converge (residual " +
                    std::to_string(residual) + ")");
  }
  return n;
}

}  // namespace uuvloc
