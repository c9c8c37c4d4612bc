#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "uuvloc/camera.hpp"
#include "uuvloc/error.hpp"
#include "uuvloc/eval.hpp"
#include "uuvloc/geodesy.hpp"
#include "uuvloc/geometry.hpp"
#include "uuvloc/recovery.hpp"
#include "uuvloc/synth.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

Eigen::Matrix3d matrix(const uuvloc::RotationMatrix& r) { return r.matrix(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Underwater vehicle localisation from aerial pixel tracks";

  py::register_exception<uuvloc::Error>(m, "UuvlocError", PyExc_RuntimeError);

  // camera
  py::class_<uuvloc::CameraIntrinsics>(m, "CameraIntrinsics")
      .def(py::init(&uuvloc::make_intrinsics), "fx"_a, "fy"_a, "cx"_a, "cy"_a, "width"_a,
           "height"_a)
      .def_readonly("fx", &uuvloc::CameraIntrinsics::fx)
      .def_readonly("fy", &uuvloc::CameraIntrinsics::fy)
      .def_readonly("cx", &uuvloc::CameraIntrinsics::cx)
      .def_readonly("cy", &uuvloc::CameraIntrinsics::cy)
      .def_readonly("width", &uuvloc::CameraIntrinsics::image_width)
      .def_readonly("height", &uuvloc::CameraIntrinsics::image_height);

  py::class_<uuvloc::DistortionCoeffs>(m, "DistortionCoeffs")
      .def(py::init([](double k1, double k2, double k3, double p1, double p2) {
             return uuvloc::DistortionCoeffs{k1, k2, k3, p1, p2};
           }),
           "k1"_a = 0.0, "k2"_a = 0.0, "k3"_a = 0.0, "p1"_a = 0.0, "p2"_a = 0.0)
      .def_readwrite("k1", &uuvloc::DistortionCoeffs::k1)
      .def_readwrite("k2", &uuvloc::DistortionCoeffs::k2)
      .def_readwrite("k3", &uuvloc::DistortionCoeffs::k3)
      .def_readwrite("p1", &uuvloc::DistortionCoeffs::p1)
      .def_readwrite("p2", &uuvloc::DistortionCoeffs::p2);

  py::class_<uuvloc::CameraCalibration>(m, "CameraCalibration")
      .def(py::init([](const uuvloc::CameraIntrinsics& intr, const uuvloc::DistortionCoeffs& d) {
             return uuvloc::CameraCalibration{intr, d};
           }),
           "intrinsics"_a, "distortion"_a = uuvloc::DistortionCoeffs{})
      .def_readwrite("intrinsics", &uuvloc::CameraCalibration::intrinsics)
      .def_readwrite("distortion", &uuvloc::CameraCalibration::distortion);

  m.def("normalized_to_pixel",
        [](double x, double y, const uuvloc::CameraIntrinsics& intr) {
          const auto px = uuvloc::normalized_to_pixel({x, y}, intr);
          return py::make_tuple(px.u, px.v);
        },
        "x"_a, "y"_a, "intrinsics"_a);
  m.def("pixel_to_normalized",
        [](double u, double v, const uuvloc::CameraIntrinsics& intr) {
          const auto n = uuvloc::pixel_to_normalized({u, v}, intr);
          return py::make_tuple(n.x, n.y);
        },
        "u"_a, "v"_a, "intrinsics"_a);
  m.def("distort",
        [](double x, double y, const uuvloc::DistortionCoeffs& d) {
          const auto n = uuvloc::distort({x, y}, d);
          return py::make_tuple(n.x, n.y);
        },
        "x"_a, "y"_a, "coeffs"_a);
  m.def("undistort",
        [](double x, double y, const uuvloc::DistortionCoeffs& d) {
          const auto n = uuvloc::undistort({x, y}, d);
          return py::make_tuple(n.x, n.y);
        },
        "x"_a, "y"_a, "coeffs"_a);

  // geometry
  m.def("rot_x", [](double a) { return matrix(uuvloc::rot_x(a)); }, "roll"_a);
  m.def("rot_y", [](double a) { return matrix(uuvloc::rot_y(a)); }, "pitch"_a);
  m.def("rot_z", [](double a) { return matrix(uuvloc::rot_z(a)); }, "yaw"_a);
  m.def("gimbal_to_camera_rotation",
        [](double yaw, double pitch, double roll) {
          return matrix(uuvloc::gimbal_to_camera_rotation({yaw, pitch, roll}));
        },
        "yaw"_a, "pitch"_a, "roll"_a);
  m.def("intersect_ray_plane",
        [](const Eigen::Vector3d& origin, const Eigen::Vector3d& direction,
           const Eigen::Vector3d& plane_point, const Eigen::Vector3d& plane_normal) {
          const auto hit = uuvloc::intersect_ray_plane(
              {origin, direction}, uuvloc::make_plane(plane_point, plane_normal));
          return py::make_tuple(Eigen::Vector3d(hit.point), hit.d);
        },
        "origin"_a, "direction"_a, "plane_point"_a, "plane_normal"_a);

  // recovery
  py::enum_<uuvloc::GimbalFrame>(m, "GimbalFrame")
      .value("World", uuvloc::GimbalFrame::World)
      .value("Body", uuvloc::GimbalFrame::Body);

  py::class_<uuvloc::RigConfig>(m, "RigConfig")
      .def(py::init([](const Eigen::Vector3d& offset, int sign, uuvloc::GimbalFrame frame) {
             uuvloc::RigConfig rig{offset, sign, frame};
             uuvloc::validate(rig);
             return rig;
           }),
           "cam_offset"_a = Eigen::Vector3d(0.0, 0.0, 0.0), "gimbal_pitch_sign"_a = 1,
           "gimbal_frame"_a = uuvloc::GimbalFrame::World)
      .def_readonly("cam_offset", &uuvloc::RigConfig::cam_offset)
      .def_readonly("gimbal_pitch_sign", &uuvloc::RigConfig::gimbal_pitch_sign)
      .def_readonly("gimbal_frame", &uuvloc::RigConfig::gimbal_frame);

  py::class_<uuvloc::GeodeticCoord>(m, "GeodeticCoord")
      .def(py::init(&uuvloc::make_geodetic), "lat"_a, "lon"_a, "h"_a)
      .def_readonly("lat", &uuvloc::GeodeticCoord::lat)
      .def_readonly("lon", &uuvloc::GeodeticCoord::lon)
      .def_readonly("h", &uuvloc::GeodeticCoord::h);

  py::class_<uuvloc::Observation>(m, "Observation")
      .def(py::init([](double t, double u, double v, double a_uav, double d_uuv,
                       const Eigen::Vector3d& gimbal, const Eigen::Vector3d& body,
                       const uuvloc::GeodeticCoord& ref) {
             uuvloc::Observation o;
             o.t = t;
             o.px = {u, v};
             o.a_uav = a_uav;
             o.d_uuv = d_uuv;
             o.gimbal = {gimbal.x(), gimbal.y(), gimbal.z()};
             o.body = {body.x(), body.y(), body.z()};
             o.ref_geo = ref;
             return o;
           }),
           "t"_a, "u"_a, "v"_a, "a_uav"_a, "d_uuv"_a, "gimbal_ypr"_a,
           "body_ypr"_a = Eigen::Vector3d(0.0, 0.0, 0.0), "ref_geo"_a = uuvloc::GeodeticCoord{});

  m.def("build_plane",
        [](double a_uav, double d_uuv, double drop) {
          const auto plane = uuvloc::build_plane(a_uav, d_uuv, drop);
          return py::make_tuple(Eigen::Vector3d(plane.point), Eigen::Vector3d(plane.normal));
        },
        "a_uav"_a, "d_uuv"_a, "camera_drop"_a = 0.0);
  m.def("recover_camera_frame",
        [](const uuvloc::Observation& obs, const uuvloc::CameraCalibration& calib,
           const uuvloc::RigConfig& rig) {
          const auto fix = uuvloc::recover_camera_frame(obs, calib, rig);
          return py::make_tuple(Eigen::Vector3d(fix.point), fix.d);
        },
        "obs"_a, "calib"_a, "rig"_a = uuvloc::RigConfig{});
  m.def("camera_to_uav_enu", &uuvloc::camera_to_uav_enu, "p_cam"_a, "obs"_a,
        "rig"_a = uuvloc::RigConfig{});
  m.def("recover",
        [](const uuvloc::Observation& obs, const uuvloc::CameraCalibration& calib,
           const uuvloc::RigConfig& rig) {
          const auto s = uuvloc::recover_observation(obs, calib, rig);
          py::dict out;
          out["status"] = std::string(uuvloc::to_string(s.status));
          out["camera_point"] = Eigen::Vector3d(s.camera_point);
          out["enu"] = Eigen::Vector3d(s.enu);
          out["lat"] = s.geodetic.lat;
          out["lon"] = s.geodetic.lon;
          out["h"] = s.geodetic.h;
          out["out_of_frame"] = s.out_of_frame;
          return out;
        },
        "obs"_a, "calib"_a, "rig"_a = uuvloc::RigConfig{});

  // synth
  m.def("project_point",
        [](const Eigen::Vector3d& p, const Eigen::Vector3d& gimbal,
           const uuvloc::CameraCalibration& calib, const Eigen::Vector3d& body,
           const uuvloc::RigConfig& rig) {
          const auto px = uuvloc::project_point(p, {gimbal.x(), gimbal.y(), gimbal.z()},
                                                {body.x(), body.y(), body.z()}, calib, rig);
          return py::make_tuple(px.u, px.v);
        },
        "p_enu_cam"_a, "gimbal_ypr"_a, "calib"_a, "body_ypr"_a = Eigen::Vector3d(0.0, 0.0, 0.0),
        "rig"_a = uuvloc::RigConfig{});

  // geodesy
  m.def("prime_vertical_radius",
        [](double lat) { return uuvloc::prime_vertical_radius(lat); }, "lat"_a);
  m.def("geodetic_to_ecef",
        [](double lat, double lon, double h) {
          return uuvloc::geodetic_to_ecef(uuvloc::make_geodetic(lat, lon, h)).vector();
        },
        "lat"_a, "lon"_a, "h"_a);
  m.def("ecef_to_geodetic",
        [](const Eigen::Vector3d& e) {
          const auto g = uuvloc::ecef_to_geodetic(uuvloc::EcefCoord::from(e));
          return py::make_tuple(g.lat, g.lon, g.h);
        },
        "ecef"_a);
  m.def("enu_to_ecef",
        [](const Eigen::Vector3d& enu, const uuvloc::GeodeticCoord& ref) {
          return uuvloc::enu_to_ecef(enu, ref).vector();
        },
        "enu"_a, "ref"_a);

  // eval
  m.def("enu_to_ground_truth",
        [](const Eigen::Vector3d& p, double yaw, const Eigen::Vector3d& t) {
          return uuvloc::enu_to_ground_truth(p, uuvloc::make_ground_truth_frame(yaw, t));
        },
        "p"_a, "yaw"_a, "translation"_a = Eigen::Vector3d(0.0, 0.0, 0.0));
  m.def("rescale_grid_point", &uuvloc::rescale_grid_point, "grid_xy"_a, "nadir_xy"_a, "a_cam"_a,
        "d_uuv"_a);
  m.def("trajectory_errors",
        [](const std::vector<Eigen::Vector2d>& est, const std::vector<Eigen::Vector2d>& gt) {
          const auto r = uuvloc::trajectory_errors(est, gt);
          py::dict out;
          out["mae"] = r.mae;
          out["rmse"] = r.rmse;
          out["n_samples"] = r.n_samples;
          out["n_excluded"] = r.n_excluded;
          return out;
        },
        "est"_a, "gt"_a);
}
