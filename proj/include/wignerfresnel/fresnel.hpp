#pragma once

// Fresnel zones on a spherical wavefront, the Huygens-Fresnel integral with
// the Kirchhoff inclination factor, and its alternating zone-sum form.
//
// Geometry: a point source O emits a spherical wave; the wavefront S has
// radius r0 around O and the observation point P lies on the axis a
// distance b beyond S.  A point Q of S at polar angle theta (seen from O,
// measured from the axis OP) lies at distance
//   s(theta)^2 = b^2 + 4 r0 (r0 + b) sin^2(theta / 2)
// from P.  Zone n is the part of S with b + n lambda/2 <= s < b + (n+1) lambda/2.

#include <complex>
#include <span>
#include <vector>

#include "wignerfresnel/errors.hpp"

namespace wf::fresnel {

using Complex = std::complex<double>;

struct FresnelGeometry {
  double r0 = 100.0;
  double b = 100.0;
  double lambda = 1.0;
  double amplitude = 1.0;  // field strength at unit distance from the source

  // Positive finite lengths, r0 and b at least 10 wavelengths.
  void validate() const;
  double k() const;
  // Largest zone index n whose inner boundary still lies on the wavefront.
  int max_zone_boundary() const;
};

// Minimum Fresnel-regime ratio r0/lambda and b/lambda.
inline constexpr double kFresnelRatio = 10.0;

inline constexpr int kDefaultOrder = 16;
inline constexpr int kMinOrder = 10;

struct Zone {
  int n = 0;
  double theta_lo = 0.0;
  double theta_hi = 0.0;
  double s_lo = 0.0;
  double s_hi = 0.0;
  double chi_mid = 0.0;  // inclination angle where s = (s_lo + s_hi) / 2
  double rho = 0.0;      // r0 sin(theta_hi)
};

struct Inclination {
  double k_factor = 1.0;  // (1 + cos chi) / 2
  double chi = 0.0;
};

// Distance from the wavefront point at polar angle theta to P.
double distance_to_observer(const FresnelGeometry& geom, double theta);

// Polar angle where s = b + n lambda / 2, from the exact law of cosines.
// Throws RangeError when that distance is not reached on the wavefront.
double zone_boundary_angle(const FresnelGeometry& geom, int n);

// Zone n with both boundaries; RangeError if its outer boundary is missing.
Zone zone(const FresnelGeometry& geom, int n);

// r0 sin(theta_n): distance of the n-th boundary circle from the axis.
double zone_radius(const FresnelGeometry& geom, int n);

// Least-squares log-log slope of zone_radius over n in [n_lo, n_hi].
double zone_scaling_slope(const FresnelGeometry& geom, int n_lo = 1,
                          int n_hi = 100);

Inclination inclination(const FresnelGeometry& geom, double theta);

// A e^{ik(r0+b)} / (r0 + b).
Complex free_field(const FresnelGeometry& geom);

enum class Edge {
  hard,
  tapered,  // raised-cosine weight over the last 10% of the zones crossed
};

// Huygens-Fresnel integral over the cap theta <= theta_max, including the
// -i/lambda Kirchhoff prefactor.  Integrated zone by zone with an
// `order`-point Gauss-Legendre rule per zone; order < kMinOrder is a
// ValidationError.
Complex huygens_integral(const FresnelGeometry& geom, double theta_max,
                         int order = kDefaultOrder, Edge edge = Edge::tapered);

// The same integrand over zone n alone.
Complex zone_contribution(const FresnelGeometry& geom, int n,
                          int order = kDefaultOrder);

// U_0..U_{count-1}.
std::vector<Complex> zone_contributions(const FresnelGeometry& geom, int count,
                                        int order = kDefaultOrder);

enum class SumMode {
  raw,       // e^{i arg U_0} sum (-1)^n |U_n|
  averaged,  // mean of the partial sums over count-1 and count zones
};

Complex zone_sum(const FresnelGeometry& geom, int count, SumMode mode,
                 int order = kDefaultOrder);

// Sum of zone contributions over the open zones; each index in [0, count).
Complex zone_plate(const FresnelGeometry& geom, std::span<const int> open_zones,
                   int count, int order = kDefaultOrder);

}  // namespace wf::fresnel
