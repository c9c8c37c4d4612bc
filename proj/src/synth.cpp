#include "uuvloc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "uuvloc/error.hpp"

namespace uuvloc {

double sample_depth(const ScenarioSample& s) { return -s.uuv_enu.z() - s.a_uav; }

void validate(const Scenario& s) {
  const NoiseSpec& n = s.noise;
  if (!(n.sigma_px >= 0.0) || !(n.sigma_alt >= 0.0) || !(n.sigma_depth >= 0.0) ||
      !(n.sigma_gimbal >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "noise sigmas must be non-negative");
  }
  validate(s.rig);
  for (std::size_t i = 0; i < s.samples.size(); ++i) {
    const ScenarioSample& sample = s.samples[i];
    if (i > 0 && !(sample.t > s.samples[i - 1].t)) {
      throw Error(ErrorCode::InvalidArgument,
                  "timestamps must be strictly increasing (sample " + std::to_string(i) + ")");
    }
    if (!(sample.a_uav > 0.0) || !(sample_depth(sample) >= 0.0)) {
      throw Error(ErrorCode::InvalidArgument,
                  "sample " + std::to_string(i) + " is not below the water surface");
    }
  }
}

TrajectoryPattern parse_pattern(std::string_view name) {
  if (name == "lawnmower") return TrajectoryPattern::Lawnmower;
  if (name == "circle") return TrajectoryPattern::Circle;
  if (name == "line") return TrajectoryPattern::Line;
  throw Error(ErrorCode::InvalidArgument, "unknown trajectory pattern '" + std::string(name) + "'");
}

namespace {

// Boustrophedon path over [-extent, extent]^2, evaluated at arc-length
// fraction s in [0, 1].
Eigen::Vector2d lawnmower_point(double s, double extent, int lanes) {
  const double width = 2.0 * extent;
  const double spacing = lanes > 1 ? width / (lanes - 1) : 0.0;
  const double total = lanes * width + (lanes - 1) * spacing;
  double dist = s * total;
  for (int lane = 0; lane < lanes; ++lane) {
    const double y = -extent + lane * spacing;
    const bool forward = lane % 2 == 0;
    if (dist <= width || lane == lanes - 1) {
      const double along = std::min(dist, width);
      return {forward ? -extent + along : extent - along, y};
    }
    dist -= width;
    if (dist <= spacing) return {forward ? extent : -extent, y + dist};
    dist -= spacing;
  }
  return {0.0, 0.0};
}

}  // namespace

std::vector<ScenarioSample> generate_trajectory(const TrajectorySpec& spec) {
  if (spec.samples == 0 || !(spec.duration > 0.0) || !(spec.extent >= 0.0) || spec.lanes < 1) {
    throw Error(ErrorCode::InvalidArgument, "invalid trajectory parameters");
  }
  if (!(spec.depth_min >= 0.0) || spec.depth_max < spec.depth_min) {
    throw Error(ErrorCode::InvalidArgument, "depth range must satisfy 0 <= min <= max");
  }
  std::vector<ScenarioSample> out;
  out.reserve(spec.samples);
  const double n = static_cast<double>(spec.samples);
  for (std::size_t i = 0; i < spec.samples; ++i) {
    const double s = spec.samples > 1 ? static_cast<double>(i) / (n - 1.0) : 0.0;
    Eigen::Vector2d xy = Eigen::Vector2d::Zero();
    switch (spec.pattern) {
      case TrajectoryPattern::Lawnmower:
        xy = lawnmower_point(s, spec.extent, spec.lanes);
        break;
      case TrajectoryPattern::Circle: {
        const double angle = 2.0 * std::numbers::pi * s;
        xy = {spec.extent * std::cos(angle), spec.extent * std::sin(angle)};
        break;
      }
      case TrajectoryPattern::Line:
        xy = {-spec.extent + 2.0 * spec.extent * s, 0.0};
        break;
    }
    const double phase = 2.0 * std::numbers::pi * spec.depth_cycles * s;
    const double depth =
        spec.depth_min + (spec.depth_max - spec.depth_min) * 0.5 * (1.0 - std::cos(phase));

    ScenarioSample sample;
    sample.t = spec.duration * static_cast<double>(i) / n;
    sample.a_uav = spec.a_uav;
    sample.uuv_enu = {spec.center.x() + xy.x(), spec.center.y() + xy.y(),
                      -(spec.a_uav + depth)};
    sample.gimbal = spec.gimbal;
    sample.body = spec.body;
    out.push_back(sample);
  }
  return out;
}

PixelCoord project_point(const Eigen::Vector3d& p_enu_cam, const RotationMatrix& cam_from_enu,
                         const CameraCalibration& calib) {
  const Eigen::Vector3d p = cam_from_enu * p_enu_cam;
  if (!(p.z() > 1e-9)) {
    throw Error(ErrorCode::BehindCamera, "point is behind the camera");
  }
  const NormalizedCoord n{p.x() / p.z(), p.y() / p.z()};
  return normalized_to_pixel(distort(n, calib.distortion), calib.intrinsics);
}

PixelCoord project_point(const Eigen::Vector3d& p_enu_cam, const GimbalAngles& gimbal,
                         const BodyAttitude& body, const CameraCalibration& calib,
                         const RigConfig& rig) {
  return project_point(p_enu_cam, camera_rotation(gimbal, body, rig), calib);
}

SyntheticLogs generate_logs(const Scenario& s) {
  validate(s);
  std::mt19937_64 rng(s.noise.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  // Every channel draws on every sample so that changing one sigma leaves
  // the other channels' noise sequences untouched.
  const auto noisy = [&](double value, double sigma) {
    const double z = gauss(rng);
    return sigma > 0.0 ? value + sigma * z : value;
  };

  SyntheticLogs logs;
  logs.observations.reserve(s.samples.size());
  logs.ground_truth.reserve(s.samples.size());
  for (std::size_t i = 0; i < s.samples.size(); ++i) {
    const ScenarioSample& sample = s.samples[i];
    const Eigen::Vector3d offset_enu = ypr_rotation(sample.body) * s.rig.cam_offset;
    const Eigen::Vector3d p_enu_cam = sample.uuv_enu - offset_enu;

    PixelCoord px;
    try {
      px = project_point(p_enu_cam, sample.gimbal, sample.body, s.calib, s.rig);
    } catch (const Error&) {
      throw Error(ErrorCode::InfeasibleScene,
                  "sample " + std::to_string(i) + " is behind the camera");
    }
    if (!inside_image(px, s.calib.intrinsics)) {
      throw Error(ErrorCode::InfeasibleScene,
                  "sample " + std::to_string(i) + " projects outside the image");
    }

    Observation obs;
    obs.t = sample.t;
    obs.px.u = noisy(px.u, s.noise.sigma_px);
    obs.px.v = noisy(px.v, s.noise.sigma_px);
    obs.a_uav = noisy(sample.a_uav, s.noise.sigma_alt);
    obs.d_uuv = std::max(0.0, noisy(sample_depth(sample), s.noise.sigma_depth));
    obs.gimbal.yaw = noisy(sample.gimbal.yaw, s.noise.sigma_gimbal);
    obs.gimbal.pitch = noisy(sample.gimbal.pitch, s.noise.sigma_gimbal);
    obs.gimbal.roll = noisy(sample.gimbal.roll, s.noise.sigma_gimbal);
    obs.body = sample.body;
    obs.ref_geo = s.ref_geo;
    logs.observations.push_back(obs);
    logs.ground_truth.push_back({sample.t, sample.uuv_enu});
  }
  return logs;
}

}  // namespace uuvloc
