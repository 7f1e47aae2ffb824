#pragma once

// Bohr-Sommerfeld bands of the oscillator in the dimensionless phase plane
// and the area-of-overlap estimate of a coherent state's energy distribution.

#include <vector>

namespace wf::semiclassics {

// Annulus between the action contours 2 pi n and 2 pi (n + 1); area 2 pi.
struct Band {
  int n = 0;
  double r_inner = 0.0;  // sqrt(2 n)
  double r_outer = 0.0;  // sqrt(2 (n + 1))

  double area() const;
};

// Disc standing in for a displaced state: center distance d, radius R.
struct Disc {
  double d = 0.0;
  double radius = 0.0;
};

// Radius enclosing phase-space area 2 pi n.
double band_edge(int n);

// Throws ValidationError for n < 0.
Band band(int n);

// The disc representing |beta>: center sqrt(2)|beta|, radius sqrt(2).
Disc coherent_disc(double beta_magnitude);

// Intersection area of two discs with radii r1, r2 and center distance d.
// Total for r1, r2, d >= 0; exactly symmetric in r1 and r2.
double circle_circle_lens(double r1, double r2, double d);

// Smallest band count whose outer edge contains the coherent disc and the
// bulk (mean + 12 sigma + 20) of the matching Poisson distribution.
int automatic_band_count(double beta_magnitude);

// P_n = overlap of coherent_disc(beta) with band n, divided by the disc area.
// n_bands = 0 selects automatic_band_count.
std::vector<double> overlap_distribution(double beta_magnitude, int n_bands = 0);

// e^{-b^2} b^{2n} / n!, n = 0..n_bands-1.
std::vector<double> poisson_distribution(double beta_magnitude, int n_bands);

struct PoissonComparison {
  double beta = 0.0;
  double overlap_mean = 0.0;
  double poisson_mean = 0.0;
  double overlap_variance = 0.0;
  double poisson_variance = 0.0;
  double tv_distance = 0.0;
  std::vector<double> p_overlap;
  std::vector<double> p_poisson;
};

PoissonComparison compare_poisson(double beta_magnitude, int n_bands = 0);

}  // namespace wf::semiclassics
