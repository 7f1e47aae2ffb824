#pragma once

// Truncated Fock-space numerics for the harmonic oscillator in units
// hbar = kappa = 1: Hermite functions, coherent states, displacement
// operators and displaced-state energy distributions.

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "wignerfresnel/errors.hpp"
#include "wignerfresnel/phase_space.hpp"

namespace wf::fock {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Tolerated probability mass lost to truncation.
inline constexpr double kTailTolerance = 1e-10;

// Largest Fock index the Hermite recurrence is validated for.
inline constexpr int kMaxEigenfunctionIndex = 10000;

// Pure state as amplitudes c_0..c_N.
class FockState {
 public:
  // Throws ValidationError unless the squared norm is within kTailTolerance of 1.
  explicit FockState(ComplexVector amplitudes);

  static FockState number(int n, int n_max);

  const ComplexVector& amplitudes() const { return amplitudes_; }
  int n_max() const { return static_cast<int>(amplitudes_.size()) - 1; }
  double norm_squared() const { return amplitudes_.squaredNorm(); }

 private:
  ComplexVector amplitudes_;
};

class DensityMatrix {
 public:
  // Checks hermiticity (1e-12 elementwise), trace (kTailTolerance) and
  // positivity (eigenvalues >= -1e-10); throws ValidationError otherwise.
  explicit DensityMatrix(ComplexMatrix entries);

  static DensityMatrix pure(const FockState& state);
  static DensityMatrix number(int n, int n_max);
  // Weighted sum of density matrices, padded to the largest dimension.
  // Weights must be positive; they are normalized to sum to one.
  static DensityMatrix mixture(std::span<const DensityMatrix> parts,
                               std::span<const double> weights);

  const ComplexMatrix& entries() const { return entries_; }
  int n_max() const { return static_cast<int>(entries_.rows()) - 1; }
  Complex trace() const { return entries_.trace(); }

  // Highest Fock index carrying population above 1e-32.  Positivity bounds
  // every coherence by the populations, so nothing beyond it matters.
  int support() const { return support_; }

 private:
  struct Unchecked {};
  DensityMatrix(ComplexMatrix entries, Unchecked);
  friend DensityMatrix displace(const DensityMatrix&, Complex,
                                std::optional<int>);

  ComplexMatrix entries_;
  int support_ = 0;
};

// psi_n(x) sampled on xs.  Parity psi_n(-x) = (-1)^n psi_n(x) holds exactly.
// Throws RangeError for n outside [0, kMaxEigenfunctionIndex].
std::vector<double> oscillator_eigenfunction(int n, std::span<const double> xs);

// psi_0(x)..psi_n_max(x) at one point, written into out (size n_max + 1).
void eigenfunctions_at(double x, std::span<double> out);

// Default working truncation for a state of amplitude scale beta displaced
// by alpha: max(64, ceil(4 (|alpha| + |beta|)^2 + 20)).
int default_truncation(double alpha_magnitude, double beta_magnitude);

// Coherent state |beta> = D(beta)|0> on 0..n_max.  Throws TailMassError when
// the Poisson mass beyond n_max exceeds kTailTolerance.
FockState coherent_amplitudes(Complex beta, int n_max);

// Probability mass of the coherent state |beta> above index n_max.
double coherent_tail_mass(double beta_magnitude, int n_max);

// <m|D(alpha)|n> for 0 <= m, n <= n_max, from the associated-Laguerre closed
// form with log-gamma prefactors.  Columns 0..checked_columns must keep their
// norm to within kTailTolerance, else TruncationError names the worst one.
ComplexMatrix displacement_matrix(Complex alpha, int n_max,
                                  int checked_columns = 0);

// 1 - ||column n||^2 for every column of a displacement matrix.
std::vector<double> column_leakage(const ComplexMatrix& displacement);

// D(alpha) rho D(alpha)^dagger on a working truncation large enough for the
// displaced state (default_truncation unless n_max is given).
DensityMatrix displace(const DensityMatrix& rho, Complex alpha,
                       std::optional<int> n_max = std::nullopt);

// P_n(alpha) = <n|D(alpha) rho D(alpha)^dagger|n>.  Roundoff negatives above
// -1e-12 are clamped to zero; anything lower is a TruncationError, as is a
// total outside [1 - kTailTolerance, 1 + 1e-10] (relative to trace(rho)).
std::vector<double> energy_distribution(const DensityMatrix& rho, Complex alpha,
                                        std::optional<int> n_max = std::nullopt);

}  // namespace wf::fock
