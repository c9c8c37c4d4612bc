#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace uuvloc {

/// Survey frame: rotated by `yaw` about Z relative to ENU, then shifted by
/// `translation` (origin of the survey frame to the UAV).
struct GroundTruthFrame {
  double yaw = 0.0;
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
};

GroundTruthFrame make_ground_truth_frame(double yaw, const Eigen::Vector3d& translation);

/// R_z(yaw) * p + T, with the passive R_z of the geometry module.
Eigen::Vector3d enu_to_ground_truth(const Eigen::Vector3d& p, const GroundTruthFrame& f);

/**
 * @brief Corrects a position read off the surface grid for the target depth.
 *
 * The grid lies on the water surface, a_cam below the camera; the target is
 * d_uuv deeper, so by similar triangles its offset from the nadir grows by
 * (a_cam + d_uuv) / a_cam. Throws Error(DegenerateGeometry) if a_cam <= 0.
 */
Eigen::Vector2d rescale_grid_point(const Eigen::Vector2d& grid_xy,
                                   const Eigen::Vector2d& nadir_xy, double a_cam,
                                   double d_uuv);

struct TrajectoryErrorReport {
  double mae = 0.0;
  double rmse = 0.0;
  std::size_t n_samples = 0;
  std::size_t n_excluded = 0;
};

/// Planar MAE / RMSE of per-sample Euclidean residuals. Throws
/// Error(EmptyTrajectory) or Error(LengthMismatch).
TrajectoryErrorReport trajectory_errors(std::span<const Eigen::Vector2d> est,
                                        std::span<const Eigen::Vector2d> gt);

struct AxisErrors {
  double mae = 0.0;
  double rmse = 0.0;
};

/// Same statistics on a scalar channel (used for the z diagnostic).
AxisErrors scalar_errors(std::span<const double> est, std::span<const double> gt);

/**
 * Pairs each `query` time with the nearest `reference` time within
 * `max_gap` seconds. `reference` must be sorted ascending. Queries without a
 * partner are skipped; each reference index is used at most once.
 */
std::vector<std::pair<std::size_t, std::size_t>> sync_nearest(
    std::span<const double> query, std::span<const double> reference, double max_gap);

}  // namespace uuvloc
