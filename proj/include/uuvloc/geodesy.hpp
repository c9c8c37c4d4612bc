#pragma once

#include <Eigen/Core>

namespace uuvloc {

/// Reference ellipsoid given by its equatorial and polar radii (meters).
struct Ellipsoid {
  double equatorial_radius = 6378137.0;
  double polar_radius = 6356752.314245;

  static Ellipsoid wgs84() { return {6378137.0, 6356752.314245}; }
  static Ellipsoid grs80() { return {6378137.0, 6356752.314140}; }

  /// First eccentricity squared, (a^2 - b^2) / a^2.
  double e2() const;
  /// Second eccentricity squared, (a^2 - b^2) / b^2.
  double ep2() const;
};

/// Throws Error(InvalidArgument) unless a >= b > 0.
Ellipsoid make_ellipsoid(double equatorial_radius, double polar_radius);

/// Latitude/longitude in radians, height in meters above the ellipsoid.
struct GeodeticCoord {
  double lat = 0.0;
  double lon = 0.0;
  double h = 0.0;
};

struct EcefCoord {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Eigen::Vector3d vector() const { return {x, y, z}; }
  static EcefCoord from(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }
};

/// Checks |lat| <= pi/2 and finiteness; wraps lon into (-pi, pi].
GeodeticCoord make_geodetic(double lat, double lon, double h);

double prime_vertical_radius(double lat, const Ellipsoid& ell = Ellipsoid::wgs84());

EcefCoord geodetic_to_ecef(const GeodeticCoord& g,
                           const Ellipsoid& ell = Ellipsoid::wgs84());

/// Columns are the East, North and Up unit vectors expressed in ECEF.
Eigen::Matrix3d enu_to_ecef_rotation(const GeodeticCoord& ref);

EcefCoord enu_to_ecef(const Eigen::Vector3d& enu, const GeodeticCoord& ref,
                      const Ellipsoid& ell = Ellipsoid::wgs84());

/// Within 1 m of the polar axis on both X and Y.
bool near_polar_axis(const EcefCoord& e);

/**
 * @brief ECEF to geodetic using Heikkinen's closed form.
 *
 * Points for which near_polar_axis() holds are solved by latitude
 * fixed-point iteration instead, where the closed form loses precision.
 */
GeodeticCoord ecef_to_geodetic(const EcefCoord& e,
                               const Ellipsoid& ell = Ellipsoid::wgs84());

/// True when |e| lies within 100 km of the ellipsoid's radius range.
bool plausible_near_surface(const EcefCoord& e,
                            const Ellipsoid& ell = Ellipsoid::wgs84());

}  // namespace uuvloc
