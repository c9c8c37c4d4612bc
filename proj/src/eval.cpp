#include "uuvloc/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "uuvloc/error.hpp"
#include "uuvloc/geometry.hpp"

namespace uuvloc {

GroundTruthFrame make_ground_truth_frame(double yaw, const Eigen::Vector3d& translation) {
  if (!std::isfinite(yaw) || std::abs(yaw) > std::numbers::pi || !translation.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "invalid ground-truth frame");
  }
  return {yaw, translation};
}

Eigen::Vector3d enu_to_ground_truth(const Eigen::Vector3d& p, const GroundTruthFrame& f) {
  return rot_z(f.yaw) * p + f.translation;
}

Eigen::Vector2d rescale_grid_point(const Eigen::Vector2d& grid_xy,
                                   const Eigen::Vector2d& nadir_xy, double a_cam,
                                   double d_uuv) {
  if (!(a_cam > 0.0)) {
    throw Error(ErrorCode::DegenerateGeometry, "camera altitude must be positive");
  }
  if (!(d_uuv >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "depth must be non-negative");
  }
  return nadir_xy + (grid_xy - nadir_xy) * ((a_cam + d_uuv) / a_cam);
}

TrajectoryErrorReport trajectory_errors(std::span<const Eigen::Vector2d> est,
                                        std::span<const Eigen::Vector2d> gt) {
  if (est.size() != gt.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "trajectory lengths differ: " + std::to_string(est.size()) + " estimates vs " +
                    std::to_string(gt.size()) + " ground-truth samples");
  }
  if (est.empty()) throw Error(ErrorCode::EmptyTrajectory, "trajectory is empty");

  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < est.size(); ++i) {
    const double r = (est[i] - gt[i]).norm();
    sum += r;
    sum_sq += r * r;
  }
  const double n = static_cast<double>(est.size());
  TrajectoryErrorReport report;
  report.mae = sum / n;
  report.rmse = std::sqrt(sum_sq / n);
  report.n_samples = est.size();
  return report;
}

AxisErrors scalar_errors(std::span<const double> est, std::span<const double> gt) {
  if (est.size() != gt.size()) {
    throw Error(ErrorCode::LengthMismatch, "channel lengths differ");
  }
  if (est.empty()) throw Error(ErrorCode::EmptyTrajectory, "channel is empty");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < est.size(); ++i) {
    const double r = std::abs(est[i] - gt[i]);
    sum += r;
    sum_sq += r * r;
  }
  const double n = static_cast<double>(est.size());
  return {sum / n, std::sqrt(sum_sq / n)};
}

std::vector<std::pair<std::size_t, std::size_t>> sync_nearest(
    std::span<const double> query, std::span<const double> reference, double max_gap) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<bool> used(reference.size(), false);
  for (std::size_t i = 0; i < query.size(); ++i) {
    const double t = query[i];
    const auto it = std::lower_bound(reference.begin(), reference.end(), t);
    std::size_t best = reference.size();
    double best_gap = max_gap;
    const auto consider = [&](std::size_t j) {
      const double gap = std::abs(reference[j] - t);
      if (!used[j] && gap <= best_gap) {
        best = j;
        best_gap = gap;
      }
    };
    const auto idx = static_cast<std::size_t>(it - reference.begin());
    if (idx > 0) consider(idx - 1);
    if (idx < reference.size()) consider(idx);
    if (best < reference.size()) {
      used[best] = true;
      pairs.emplace_back(i, best);
    }
  }
  return pairs;
}

}  // namespace uuvloc
