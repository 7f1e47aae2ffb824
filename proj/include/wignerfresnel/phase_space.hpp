#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace wf {

using Complex = std::complex<double>;

// Scale between the dimensionless phase plane (u, v) and the displacement
// amplitude: alpha = kAlphaScale * (u + i v).  Fixed by
// wigner::convention_check, which is rerun by the test suite; the
// alternative (scale 1) fails the parity-sum cross-check off the origin.
inline constexpr double kAlphaScale = 1.0 / std::numbers::sqrt2;

// Point of the dimensionless phase plane, u = kappa x and v = p / (hbar kappa).
struct PhasePoint {
  double u = 0.0;
  double v = 0.0;

  Complex alpha() const { return kAlphaScale * Complex(u, v); }

  static PhasePoint from_alpha(Complex alpha) {
    return {alpha.real() / kAlphaScale, alpha.imag() / kAlphaScale};
  }

  // Physical (x, p) with oscillator length scale kappa and Planck constant hbar.
  static PhasePoint from_physical(double x, double p, double kappa,
                                  double hbar) {
    return {kappa * x, p / (hbar * kappa)};
  }
};

}  // namespace wf
