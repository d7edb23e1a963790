// Geodesic distance routines: haversine (spherical), Lambert (first-order
// flattening correction) and Vincenty's iterative inverse method.
// Inputs are degrees, outputs kilometers.

#ifndef NGDC_GEO_HPP
#define NGDC_GEO_HPP

#include <cmath>
#include <optional>
#include <stdexcept>

namespace ngdc {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kMeanEarthRadiusKm = 6371.0;  // mean Earth radius

inline double deg2rad(double deg) { return deg * kPi / 180.0; }

struct GeoPoint {
  double lat_deg = 0.0;
  double lon_deg = 0.0;

  bool valid() const {
    return std::isfinite(lat_deg) && std::isfinite(lon_deg) &&
           lat_deg >= -90.0 && lat_deg <= 90.0 &&
           lon_deg >= -180.0 && lon_deg <= 180.0;
  }
};

struct Ellipsoid {
  double equatorial_radius_km = 6378.137;        // WGS-84 a
  double flattening = 1.0 / 298.257223563;       // WGS-84 f
};

inline Ellipsoid wgs84() { return Ellipsoid{}; }

// Great-circle distance on the mean-radius sphere.
inline double haversine_km(const GeoPoint& p1, const GeoPoint& p2) {
  const double phi1 = deg2rad(p1.lat_deg);
  const double phi2 = deg2rad(p2.lat_deg);
  const double dphi = deg2rad(p2.lat_deg - p1.lat_deg);
  const double dlam = deg2rad(p2.lon_deg - p1.lon_deg);

  const double sp = std::sin(dphi / 2.0);
  const double sl = std::sin(dlam / 2.0);
  double h = sp * sp + std::cos(phi1) * std::cos(phi2) * sl * sl;
  if (h > 1.0) h = 1.0;
  if (h < 0.0) h = 0.0;
  return 2.0 * kMeanEarthRadiusKm * std::asin(std::sqrt(h));
}

// Lambert's formula: central angle between reduced latitudes, then a
// first-order flattening correction.
inline double lambert_km(const GeoPoint& p1, const GeoPoint& p2,
                         const Ellipsoid& e = wgs84()) {
  const double f = e.flattening;
  const double beta1 = std::atan((1.0 - f) * std::tan(deg2rad(p1.lat_deg)));
  const double beta2 = std::atan((1.0 - f) * std::tan(deg2rad(p2.lat_deg)));
  const double dlam = deg2rad(p2.lon_deg - p1.lon_deg);

  // central angle via the haversine form on reduced latitudes
  const double sp = std::sin((beta2 - beta1) / 2.0);
  const double sl = std::sin(dlam / 2.0);
  double h = sp * sp + std::cos(beta1) * std::cos(beta2) * sl * sl;
  if (h > 1.0) h = 1.0;
  if (h < 0.0) h = 0.0;
  const double sigma = 2.0 * std::asin(std::sqrt(h));
  if (sigma < 1e-12) return 0.0;

  const double p = (beta1 + beta2) / 2.0;
  const double q = (beta2 - beta1) / 2.0;
  const double cos_half = std::cos(sigma / 2.0);
  const double sin_half = std::sin(sigma / 2.0);

  double x = 0.0;
  if (cos_half > 1e-12) {
    x = (sigma - std::sin(sigma)) *
        std::sin(p) * std::sin(p) * std::cos(q) * std::cos(q) /
        (cos_half * cos_half);
  }
  double y = 0.0;
  if (sin_half > 1e-12) {
    y = (sigma + std::sin(sigma)) *
        std::cos(p) * std::cos(p) * std::sin(q) * std::sin(q) /
        (sin_half * sin_half);
  }
  return e.equatorial_radius_km * (sigma - f / 2.0 * (x + y));
}

// Vincenty's inverse method. Returns nullopt when the lambda iteration does
// not converge (nearly antipodal points); never a silent wrong answer.
inline std::optional<double> vincenty_km(const GeoPoint& p1, const GeoPoint& p2,
                                         const Ellipsoid& e = wgs84(),
                                         double tol = 1e-12,
                                         int max_iter = 200) {
  const double a = e.equatorial_radius_km;
  const double f = e.flattening;
  const double b = a * (1.0 - f);

  const double big_l = deg2rad(p2.lon_deg - p1.lon_deg);
  const double u1 = std::atan((1.0 - f) * std::tan(deg2rad(p1.lat_deg)));
  const double u2 = std::atan((1.0 - f) * std::tan(deg2rad(p2.lat_deg)));
  const double sin_u1 = std::sin(u1), cos_u1 = std::cos(u1);
  const double sin_u2 = std::sin(u2), cos_u2 = std::cos(u2);

  double lam = big_l;
  double sin_sigma = 0.0, cos_sigma = 0.0, sigma = 0.0;
  double cos_sq_alpha = 0.0, cos_2sigma_m = 0.0;
  bool converged = false;

  for (int i = 0; i < max_iter; ++i) {
    const double sin_lam = std::sin(lam);
    const double cos_lam = std::cos(lam);
    const double t1 = cos_u2 * sin_lam;
    const double t2 = cos_u1 * sin_u2 - sin_u1 * cos_u2 * cos_lam;
    sin_sigma = std::sqrt(t1 * t1 + t2 * t2);
    if (sin_sigma == 0.0) return 0.0;  // coincident points
    cos_sigma = sin_u1 * sin_u2 + cos_u1 * cos_u2 * cos_lam;
    sigma = std::atan2(sin_sigma, cos_sigma);
    const double sin_alpha = cos_u1 * cos_u2 * sin_lam / sin_sigma;
    cos_sq_alpha = 1.0 - sin_alpha * sin_alpha;
    cos_2sigma_m = (cos_sq_alpha != 0.0)
                       ? cos_sigma - 2.0 * sin_u1 * sin_u2 / cos_sq_alpha
                       : 0.0;  // equatorial line
    const double c = f / 16.0 * cos_sq_alpha * (4.0 + f * (4.0 - 3.0 * cos_sq_alpha));
    const double lam_prev = lam;
    lam = big_l + (1.0 - c) * f * sin_alpha *
                      (sigma + c * sin_sigma *
                                   (cos_2sigma_m +
                                    c * cos_sigma *
                                        (-1.0 + 2.0 * cos_2sigma_m * cos_2sigma_m)));
    if (std::abs(lam - lam_prev) < tol) {
      converged = true;
      break;
    }
  }
  if (!converged) return std::nullopt;

  const double u_sq = cos_sq_alpha * (a * a - b * b) / (b * b);
  const double big_a =
      1.0 + u_sq / 16384.0 * (4096.0 + u_sq * (-768.0 + u_sq * (320.0 - 175.0 * u_sq)));
  const double big_b =
      u_sq / 1024.0 * (256.0 + u_sq * (-128.0 + u_sq * (74.0 - 47.0 * u_sq)));
  const double delta_sigma =
      big_b * sin_sigma *
      (cos_2sigma_m +
       big_b / 4.0 *
           (cos_sigma * (-1.0 + 2.0 * cos_2sigma_m * cos_2sigma_m) -
            big_b / 6.0 * cos_2sigma_m * (-3.0 + 4.0 * sin_sigma * sin_sigma) *
                (-3.0 + 4.0 * cos_2sigma_m * cos_2sigma_m)));
  return b * big_a * (sigma - delta_sigma);
}

}  // namespace ngdc

#endif  // NGDC_GEO_HPP
