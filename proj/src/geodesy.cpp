#include "uuvloc/geodesy.hpp"

#include <cmath>
#include <numbers>

#include "uuvloc/error.hpp"
#include "uuvloc/geometry.hpp"

namespace uuvloc {

double Ellipsoid::e2() const {
  const double a2 = equatorial_radius * equatorial_radius;
  const double b2 = polar_radius * polar_radius;
  return (a2 - b2) / a2;
}

double Ellipsoid::ep2() const {
  const double a2 = equatorial_radius * equatorial_radius;
  const double b2 = polar_radius * polar_radius;
  return (a2 - b2) / b2;
}

Ellipsoid make_ellipsoid(double equatorial_radius, double polar_radius) {
  if (!std::isfinite(equatorial_radius) || !std::isfinite(polar_radius) ||
      !(polar_radius > 0.0) || equatorial_radius < polar_radius) {
    throw Error(ErrorCode::InvalidArgument,
                "ellipsoid radii must satisfy equatorial >= polar > 0");
  }
  return {equatorial_radius, polar_radius};
}

GeodeticCoord make_geodetic(double lat, double lon, double h) {
  if (!std::isfinite(lat) || !std::isfinite(lon) || !std::isfinite(h) ||
      std::abs(lat) > std::numbers::pi / 2.0) {
    throw Error(ErrorCode::InvalidArgument, "invalid geodetic coordinate");
  }
  return {lat, wrap_angle(lon), h};
}

double prime_vertical_radius(double lat, const Ellipsoid& ell) {
  const double a = ell.equatorial_radius;
  const double b = ell.polar_radius;
  const double c = std::cos(lat);
  const double s = std::sin(lat);
  return a * a / std::sqrt(a * a * c * c + b * b * s * s);
}

EcefCoord geodetic_to_ecef(const GeodeticCoord& g, const Ellipsoid& ell) {
  const double a = ell.equatorial_radius;
  const double b = ell.polar_radius;
  const double n = prime_vertical_radius(g.lat, ell);
  const double cos_lat = std::cos(g.lat);
  return {(n + g.h) * cos_lat * std::cos(g.lon),
          (n + g.h) * cos_lat * std::sin(g.lon),
          ((b * b) / (a * a) * n + g.h) * std::sin(g.lat)};
}

Eigen::Matrix3d enu_to_ecef_rotation(const GeodeticCoord& ref) {
  const double sl = std::sin(ref.lat);
  const double cl = std::cos(ref.lat);
  const double so = std::sin(ref.lon);
  const double co = std::cos(ref.lon);
  Eigen::Matrix3d r;
  r << -so, -sl * co, cl * co,
        co, -sl * so, cl * so,
        0.0,      cl,      sl;
  return r;
}

EcefCoord enu_to_ecef(const Eigen::Vector3d& enu, const GeodeticCoord& ref,
                      const Ellipsoid& ell) {
  const Eigen::Vector3d origin = geodetic_to_ecef(ref, ell).vector();
  return EcefCoord::from(enu_to_ecef_rotation(ref) * enu + origin);
}

bool near_polar_axis(const EcefCoord& e) {
  return std::abs(e.x) < 1.0 && std::abs(e.y) < 1.0;
}

namespace {

GeodeticCoord ecef_to_geodetic_near_axis(const EcefCoord& e, const Ellipsoid& ell) {
  const double e2 = ell.e2();
  const double p = std::hypot(e.x, e.y);
  double lat = std::atan2(e.z, p * (1.0 - e2));
  for (int i = 0; i < 30; ++i) {
    const double n = prime_vertical_radius(lat, ell);
    const double next = std::atan2(e.z + e2 * n * std::sin(lat), p);
    if (next == lat) break;
    lat = next;
  }
  const double n = prime_vertical_radius(lat, ell);
  // Near the axis cos(lat) -> 0, so height comes from the Z component.
  const double h = e.z / std::sin(lat) - n * (1.0 - e2);
  const double lon = (e.x == 0.0 && e.y == 0.0) ? 0.0 : std::atan2(e.y, e.x);
  return {lat, lon, h};
}

}  // namespace

GeodeticCoord ecef_to_geodetic(const EcefCoord& e, const Ellipsoid& ell) {
  if (!std::isfinite(e.x) || !std::isfinite(e.y) || !std::isfinite(e.z)) {
    throw Error(ErrorCode::InvalidArgument, "ECEF coordinate is not finite");
  }
  if (near_polar_axis(e)) return ecef_to_geodetic_near_axis(e, ell);

  const double a = ell.equatorial_radius;
  const double b = ell.polar_radius;
  const double a2 = a * a;
  const double b2 = b * b;
  const double e2 = ell.e2();
  const double ep2 = ell.ep2();
  const double z2 = e.z * e.z;
  const double p2 = e.x * e.x + e.y * e.y;
  const double p = std::sqrt(p2);

  const double f = 54.0 * b2 * z2;
  const double g = p2 + (1.0 - e2) * z2 - e2 * (a2 - b2);
  const double c = e2 * e2 * f * p2 / (g * g * g);
  const double s = std::cbrt(1.0 + c + std::sqrt(c * c + 2.0 * c));
  const double k = s + 1.0 + 1.0 / s;
  const double big_p = f / (3.0 * k * k * g * g);
  const double q = std::sqrt(1.0 + 2.0 * e2 * e2 * big_p);
  const double r0 = -(big_p * e2 * p) / (1.0 + q) +
                    std::sqrt(0.5 * a2 * (1.0 + 1.0 / q) -
                              big_p * (1.0 - e2) * z2 / (q * (1.0 + q)) -
                              0.5 * big_p * p2);
  const double t = p - e2 * r0;
  const double u = std::sqrt(t * t + z2);
  const double v = std::sqrt(t * t + (1.0 - e2) * z2);
  const double z0 = b2 * e.z / (a * v);

  GeodeticCoord out;
  out.h = u * (1.0 - b2 / (a * v));
  out.lat = std::atan2(e.z + ep2 * z0, p);
  out.lon = std::atan2(e.y, e.x);
  return out;
}

bool plausible_near_surface(const EcefCoord& e, const Ellipsoid& ell) {
  const double r = e.vector().norm();
  return r >= ell.polar_radius - 100e3 && r <= ell.equatorial_radius + 100e3;
}

}  // namespace uuvloc
