#include "uuvloc/recovery.hpp"

#include <cmath>

#include "uuvloc/error.hpp"

namespace uuvloc {

void validate(const RigConfig& rig) {
  if (!rig.cam_offset.allFinite() || !(rig.cam_offset.norm() < 10.0)) {
    throw Error(ErrorCode::InvalidArgument, "camera offset must be finite and under 10 m");
  }
  if (rig.gimbal_pitch_sign != 1 && rig.gimbal_pitch_sign != -1) {
    throw Error(ErrorCode::InvalidArgument, "gimbal pitch sign must be +1 or -1");
  }
}

double camera_drop(const RigConfig& rig, const BodyAttitude& body) {
  return -(ypr_rotation(body) * rig.cam_offset).z();
}

double camera_altitude(double a_uav, const RigConfig& rig, const BodyAttitude& body) {
  return a_uav - camera_drop(rig, body);
}

Plane build_plane(double a_uav, double d_uuv, double drop) {
  const double a_cam = a_uav - drop;
  const double distance = a_cam + d_uuv;
  if (!std::isfinite(distance) || !(distance > 0.0)) {
    throw Error(ErrorCode::DegenerateGeometry,
                "camera is not above the UUV plane (vertical distance " +
                    std::to_string(distance) + " m)");
  }
  return Plane{Eigen::Vector3d(0.0, 0.0, -distance), Eigen::Vector3d::UnitZ()};
}

RotationMatrix camera_rotation(const GimbalAngles& gimbal, const BodyAttitude& body,
                               const RigConfig& rig) {
  GimbalAngles g = gimbal;
  g.pitch *= rig.gimbal_pitch_sign;
  if (rig.gimbal_frame == GimbalFrame::World) return gimbal_to_camera_rotation(g);
  const RotationMatrix enu_from_forward = ypr_rotation(body) * ypr_rotation(g);
  return camera_from_forward_frame() * enu_from_forward.transpose();
}

CameraFrameFix recover_camera_frame(const Observation& obs,
                                    const CameraCalibration& calib,
                                    const RigConfig& rig) {
  const NormalizedCoord distorted = pixel_to_normalized(obs.px, calib.intrinsics);
  const NormalizedCoord n = undistort(distorted, calib.distortion);

  const Plane plane_enu = build_plane(obs.a_uav, obs.d_uuv, camera_drop(rig, obs.body));
  const RotationMatrix cam_from_enu = camera_rotation(obs.gimbal, obs.body, rig);
  const Plane plane_cam{cam_from_enu * plane_enu.point, cam_from_enu * plane_enu.normal};

  const Ray ray{Eigen::Vector3d::Zero(), Eigen::Vector3d(n.x, n.y, 1.0)};
  const Intersection hit = intersect_ray_plane(ray, plane_cam);
  if (hit.behind()) {
    throw Error(ErrorCode::BehindCamera, "depth plane intersection is behind the camera");
  }
  return {hit.point, hit.d, hit.conditioning};
}

Eigen::Vector3d camera_to_uav_enu(const Eigen::Vector3d& p_cam, const Observation& obs,
                                  const RigConfig& rig) {
  const RotationMatrix enu_from_cam = camera_rotation(obs.gimbal, obs.body, rig).transpose();
  return enu_from_cam * p_cam + ypr_rotation(obs.body) * rig.cam_offset;
}

std::string_view to_string(SampleStatus status) {
  switch (status) {
    case SampleStatus::Ok: return "ok";
    case SampleStatus::Degenerate: return "degenerate";
    case SampleStatus::BehindCamera: return "behind_camera";
    case SampleStatus::ParallelRay: return "parallel_ray";
    case SampleStatus::IllConditioned: return "ill_conditioned";
    case SampleStatus::NonConvergence: return "non_convergence";
    case SampleStatus::InvalidInput: return "invalid_input";
  }
  return "unknown";
}

namespace {

SampleStatus status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateGeometry: return SampleStatus::Degenerate;
    case ErrorCode::BehindCamera: return SampleStatus::BehindCamera;
    case ErrorCode::ParallelRay: return SampleStatus::ParallelRay;
    case ErrorCode::NonConvergence: return SampleStatus::NonConvergence;
    default: return SampleStatus::InvalidInput;
  }
}

}  // namespace

RecoveredSample recover_observation(const Observation& obs,
                                    const CameraCalibration& calib,
                                    const RigConfig& rig, const Ellipsoid& ell) {
  RecoveredSample out;
  out.out_of_frame = !inside_image(obs.px, calib.intrinsics);
  if (!(obs.a_uav > 0.0) || !(obs.d_uuv >= 0.0)) {
    out.status = SampleStatus::Degenerate;
    out.detail = "altitude must be positive and depth non-negative";
    return out;
  }
  try {
    const CameraFrameFix fix = recover_camera_frame(obs, calib, rig);
    if (fix.conditioning < kMinConditioning) {
      out.status = SampleStatus::IllConditioned;
      out.detail = "ray nearly parallel to the depth plane";
      return out;
    }
    out.camera_point = fix.point;
    out.enu = camera_to_uav_enu(fix.point, obs, rig);
    out.geodetic = ecef_to_geodetic(enu_to_ecef(out.enu, obs.ref_geo, ell), ell);
    out.a_cam = camera_altitude(obs.a_uav, rig, obs.body);

    // Optical axis against the water surface, expressed like the UUV.
    const RotationMatrix enu_from_cam = camera_rotation(obs.gimbal, obs.body, rig).transpose();
    const Eigen::Vector3d axis = enu_from_cam * Eigen::Vector3d::UnitZ();
    if (axis.z() < -kMinConditioning) {
      const Eigen::Vector3d surface = axis * (out.a_cam / -axis.z());
      const Eigen::Vector3d nadir = surface + ypr_rotation(obs.body) * rig.cam_offset;
      out.nadir_en = nadir.head<2>();
    }
  } catch (const Error& e) {
    out.status = status_for(e.code());
    out.detail = e.what();
  }
  return out;
}

}  // namespace uuvloc
