#pragma once

// Angular-momentum belts on the sphere of radius sqrt(J(J+1)) and their
// stereographic images in the oscillator phase plane.

#include <vector>

namespace wf::spinmap {

class SpinSphere {
 public:
  // Throws ValidationError unless 2J is a positive integer (J = 0 has no
  // sphere to project).
  explicit SpinSphere(double j);

  double j() const { return 0.5 * two_j_; }
  int two_j() const { return two_j_; }
  int belt_count() const { return two_j_ + 1; }
  double radius() const { return radius_; }

 private:
  int two_j_;
  double radius_;
};

// Slab m - 1/2 <= z <= m + 1/2 of the sphere, clamped to [-R, R].
struct Belt {
  int n = 0;      // counted from the south pole, m = n - J
  int two_m = 0;
  double z_lo = 0.0;
  double z_hi = 0.0;

  double m() const { return 0.5 * two_m; }
};

std::vector<Belt> belts(const SpinSphere& sphere);
Belt belt(const SpinSphere& sphere, int n);

// Surface area of the belt with quantum number m: 2 pi R (z_hi - z_lo).
double belt_area(const SpinSphere& sphere, double m);

enum class Hemisphere {
  south,  // project from the north pole; the south pole maps to the origin
  north,  // mirrored: project from the south pole
};

// Stereographic image radius of the circle at height z, projected onto the
// plane tangent at the opposite pole and scaled by 1/sqrt(R):
//   rho~(z) = 2 sqrt(R) sqrt(R^2 - z^2) / (R - z)      (south)
// Throws RangeError at or beyond the projection pole.
double project(const SpinSphere& sphere, double z,
               Hemisphere hemisphere = Hemisphere::south);

struct ProjectedBand {
  int n = 0;
  int two_m = 0;
  double rho_lo = 0.0;
  double rho_hi = 0.0;
  bool open_ended = false;  // belt touches the projection pole; rho_hi = inf
};

// Image of belt n (counted from the south pole) under project().
ProjectedBand projected_band(const SpinSphere& sphere, int n);

// pi (rho_hi^2 - rho_lo^2); RangeError for the open-ended top belt.
double projected_band_area(const SpinSphere& sphere, int n);

struct ConvergenceReport {
  std::vector<double> j_values;
  std::vector<int> n;
  std::vector<std::vector<double>> radii;  // radii[j][k]: inner edge of band n[k]
  std::vector<double> target;              // sqrt(2 n)
  std::vector<double> max_relative_error;  // per J
};

// Projected boundary radii rho~ at z = -J + n - 1/2 for n = 1..n_max, for
// each J, against the oscillator band edges sqrt(2 n).
ConvergenceReport convergence(const std::vector<double>& j_values, int n_max);

}  // namespace wf::spinmap
