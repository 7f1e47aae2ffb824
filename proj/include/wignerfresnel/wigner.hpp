#pragma once

// Wigner function of a truncated oscillator state, evaluated two independent
// ways: the Fourier integral over the position-space density matrix and the
// alternating sum of displaced-state energy probabilities.  Also phase-space
// overlaps, rotated quadratures and Radon slices.

#include <optional>
#include <span>
#include <vector>

#include "wignerfresnel/fock.hpp"
#include "wignerfresnel/phase_space.hpp"

namespace wf::wigner {

using fock::DensityMatrix;
using fock::FockState;

// Rectangular sampling domain in the dimensionless (u, v) plane, nodes
// include both ends of each range.
struct PhaseGrid {
  double u_min = -4.0;
  double u_max = 4.0;
  double v_min = -4.0;
  double v_max = 4.0;
  int n_u = 81;
  int n_v = 81;

  static PhaseGrid square(double lo, double hi, int count);

  // Throws ValidationError for non-finite or empty ranges and counts < 2.
  void validate() const;

  double du() const { return (u_max - u_min) / (n_u - 1); }
  double dv() const { return (v_max - v_min) / (n_v - 1); }
  double u(int i) const { return u_min + i * du(); }
  double v(int j) const { return v_min + j * dv(); }

  bool operator==(const PhaseGrid&) const = default;
};

// Sampled W values, row-major: value(i, j) lives at (u(i), v(j)).
class WignerField {
 public:
  WignerField(PhaseGrid grid, std::vector<double> values);

  const PhaseGrid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double value(int i, int j) const {
    return values_[static_cast<std::size_t>(i) * grid_.n_v + j];
  }

  // Riemann sum of W du dv.
  double integral() const;
  // Largest |W| on the outermost grid nodes; large values mean the state
  // is not contained in the grid.
  double boundary_max() const;
  double min() const;
  double max() const;

  // Bilinear interpolation; points outside the grid are clamped to it.
  double interpolate(double u, double v) const;

 private:
  PhaseGrid grid_;
  std::vector<double> values_;
};

// |W| never exceeds 1/pi in these units; evaluations beyond this plus
// kBoundSlack are reported as NumericalError.
inline constexpr double kBoundSlack = 1e-6;

// Fourier-integral evaluation on every grid node.  Each row integrates the
// y-window where the integrand exceeds 1e-14 with the trapezoid rule, halving
// the step until successive estimates agree to 1e-10 relative.
// Throws QuadratureError naming the worst node if that never happens.
WignerField wigner_direct(const DensityMatrix& rho, const PhaseGrid& grid);

// Same quadrature at a single point.
double wigner_direct_at(const DensityMatrix& rho, PhasePoint point);

struct ParitySum {
  double value = 0.0;      // 2 sum_n (-1)^n P_n(-alpha)
  double last_term = 0.0;  // P_{n_max}(-alpha)
  int n_max = 0;
};

// Alternating parity sum; equals 2 pi W at the phase point whose alpha() is
// alpha.  Throws NumericalError when the last retained term exceeds 1e-8.
ParitySum parity_sum(const DensityMatrix& rho, Complex alpha,
                     std::optional<int> n_max = std::nullopt);

// W from the parity sum on every grid node.
WignerField wigner_parity(const DensityMatrix& rho, const PhaseGrid& grid);

enum class Convention {
  unscaled,  // alpha = u + i v
  scaled,    // alpha = (u + i v) / sqrt(2)
};

inline constexpr double kConventionTolerance = 1e-6;

struct ConventionReport {
  double unscaled_deviation = 0.0;
  double scaled_deviation = 0.0;
  bool unscaled_matches = false;
  bool scaled_matches = false;
  // Set when exactly one candidate matches.
  std::optional<Convention> winner;
};

// Compares parity_sum under both identifications of alpha with (u, v)
// against 2 pi times the direct integral.  Throws NumericalError if neither
// reaches kConventionTolerance.
ConventionReport convention_check(const DensityMatrix& rho,
                                  std::span<const PhasePoint> points);

// The identification compiled into PhasePoint::alpha().
Convention frozen_convention();

// 2 pi * sum W1 W2 du dv, i.e. Tr(rho1 rho2).  Grids must be identical.
double overlap_trace(const WignerField& w1, const WignerField& w2);

// |psi_theta(x)|^2 where psi_theta is the quadratic-phase (fractional
// Fourier) transform of order theta of the position wavefunction.
// theta = 0 is the identity, theta = pi/2 the Fourier transform.
std::vector<double> rotated_quadrature(const FockState& psi, double theta,
                                       std::span<const double> xs);

// Line integrals of W along lines perpendicular to the direction
// (cos theta, sin theta), at signed offsets xs.  Throws ContainmentError when
// a line leaves the grid where |W| > 1e-6.
std::vector<double> radon_slice(const WignerField& w, double theta,
                                std::span<const double> xs);

}  // namespace wf::wigner
