#include "wignerfresnel/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace wf::fock {

namespace {

// Keeps the Laguerre table inside double range (binomial(n, n/2) < 1e180).
constexpr int kMaxTruncation = 600;

constexpr double kHermitianTolerance = 1e-12;
constexpr double kEigenvalueFloor = -1e-10;
constexpr double kClampFloor = -1e-12;
constexpr double kPopulationFloor = 1e-32;

int compute_support(const ComplexMatrix& rho) {
  for (int n = static_cast<int>(rho.rows()) - 1; n > 0; --n) {
    if (rho(n, n).real() > kPopulationFloor) return n;
  }
  return 0;
}

void check_truncation(int n_max) {
  if (n_max < 0) throw ValidationError("truncation n_max must be >= 0");
  if (n_max > kMaxTruncation) {
    throw ValidationError("truncation n_max " + std::to_string(n_max) +
                          " exceeds supported maximum " +
                          std::to_string(kMaxTruncation));
  }
}

// laguerre[k][j] = L_j^{(k)}(x) for j + k <= n_max.
std::vector<std::vector<double>> laguerre_table(int n_max, double x) {
  std::vector<std::vector<double>> table(n_max + 1);
  for (int k = 0; k <= n_max; ++k) {
    auto& row = table[k];
    const int jmax = n_max - k;
    row.resize(jmax + 1);
    row[0] = 1.0;
    if (jmax >= 1) row[1] = 1.0 + k - x;
    for (int j = 1; j < jmax; ++j) {
      row[j + 1] = ((2.0 * j + 1.0 + k - x) * row[j] - (j + k) * row[j - 1]) /
                   (j + 1.0);
    }
  }
  return table;
}

}  // namespace

FockState::FockState(ComplexVector amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw ValidationError("empty Fock state");
  const double norm = amplitudes_.squaredNorm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kTailTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "Fock state norm " << norm << " deviates from 1 by more than "
        << kTailTolerance;
    throw ValidationError(msg.str());
  }
}

FockState FockState::number(int n, int n_max) {
  check_truncation(n_max);
  if (n < 0 || n > n_max) {
    throw ValidationError("Fock index " + std::to_string(n) +
                          " outside 0.." + std::to_string(n_max));
  }
  ComplexVector c = ComplexVector::Zero(n_max + 1);
  c(n) = 1.0;
  return FockState(std::move(c));
}

DensityMatrix::DensityMatrix(ComplexMatrix entries, Unchecked)
    : entries_(std::move(entries)), support_(compute_support(entries_)) {}

DensityMatrix::DensityMatrix(ComplexMatrix entries)
    : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw ValidationError("density matrix must be square and non-empty");
  }
  check_truncation(static_cast<int>(entries_.rows()) - 1);
  if (!entries_.allFinite()) {
    throw ValidationError("density matrix has non-finite entries");
  }
  const double asym = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTolerance) {
    throw ValidationError("density matrix is not Hermitian (max |rho - rho^+| = " +
                          std::to_string(asym) + ")");
  }
  const Complex tr = entries_.trace();
  if (std::abs(tr.real() - 1.0) > kTailTolerance ||
      std::abs(tr.imag()) > kHermitianTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "density matrix trace " << tr.real() << " deviates from 1";
    throw ValidationError(msg.str());
  }
  const ComplexMatrix hermitian = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      hermitian, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < kEigenvalueFloor) {
    throw ValidationError("density matrix is not positive semidefinite "
                          "(min eigenvalue " +
                          std::to_string(solver.eigenvalues().minCoeff()) + ")");
  }
  support_ = compute_support(entries_);
}

DensityMatrix DensityMatrix::pure(const FockState& state) {
  const auto& c = state.amplitudes();
  return DensityMatrix(c * c.adjoint());
}

DensityMatrix DensityMatrix::number(int n, int n_max) {
  return pure(FockState::number(n, n_max));
}

DensityMatrix DensityMatrix::mixture(std::span<const DensityMatrix> parts,
                                     std::span<const double> weights) {
  if (parts.empty() || parts.size() != weights.size()) {
    throw ValidationError("mixture needs one weight per component");
  }
  double total = 0.0;
  Eigen::Index dim = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw ValidationError("mixture weights must be positive and finite");
    }
    total += weights[i];
    dim = std::max(dim, parts[i].entries().rows());
  }
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& e = parts[i].entries();
    sum.topLeftCorner(e.rows(), e.cols()) += (weights[i] / total) * e;
  }
  return DensityMatrix(std::move(sum));
}

void eigenfunctions_at(double x, std::span<double> out) {
  if (out.empty()) return;
  const double ax = std::abs(x);
  // psi_k = p_k * exp(log_scale); p_k is rescaled whenever it grows large.
  double log_scale = -0.5 * ax * ax;
  constexpr double kBig = 1e150;
  constexpr double kLogBig = 345.38776394910684;  // ln(1e150)
  auto emit = [&](std::size_t k, double p) {
    double value;
    if (log_scale > -600.0) {
      value = p * std::exp(log_scale);
    } else if (p == 0.0) {
      value = 0.0;
    } else {
      value = std::copysign(std::exp(std::log(std::abs(p)) + log_scale), p);
    }
    out[k] = (x < 0.0 && (k % 2 == 1)) ? -value : value;
  };

  double prev = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));
  emit(0, prev);
  if (out.size() == 1) return;
  double cur = std::numbers::sqrt2 * ax * prev;
  emit(1, cur);
  for (std::size_t k = 1; k + 1 < out.size(); ++k) {
    const double kk = static_cast<double>(k);
    const double next = std::sqrt(2.0 / (kk + 1.0)) * ax * cur -
                        std::sqrt(kk / (kk + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kBig) {
      cur /= kBig;
      prev /= kBig;
      log_scale += kLogBig;
    }
    emit(k + 1, cur);
  }
}

std::vector<double> oscillator_eigenfunction(int n, std::span<const double> xs) {
  if (n < 0 || n > kMaxEigenfunctionIndex) {
    throw RangeError("eigenfunction index " + std::to_string(n) +
                     " outside validated range 0.." +
                     std::to_string(kMaxEigenfunctionIndex));
  }
  std::vector<double> result(xs.size());
  std::vector<double> scratch(static_cast<std::size_t>(n) + 1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i])) {
      throw ValidationError("eigenfunction sample grid must be finite");
    }
    eigenfunctions_at(xs[i], scratch);
    result[i] = scratch[static_cast<std::size_t>(n)];
  }
  return result;
}

int default_truncation(double alpha_magnitude, double beta_magnitude) {
  const double r = std::abs(alpha_magnitude) + std::abs(beta_magnitude);
  return std::max(64, static_cast<int>(std::ceil(4.0 * r * r + 20.0)));
}

double coherent_tail_mass(double beta_magnitude, int n_max) {
  const double b = std::abs(beta_magnitude);
  if (b == 0.0) return 0.0;
  const double log_b2 = 2.0 * std::log(b);
  const double mean = b * b;
  double tail = 0.0;
  for (int n = n_max + 1;; ++n) {
    const double term =
        std::exp(-mean + n * log_b2 - std::lgamma(n + 1.0));
    tail += term;
    if (n > mean && term <= 1e-30 * std::max(tail, 1e-300)) break;
    if (n > n_max + 100000) break;
  }
  return tail;
}

FockState coherent_amplitudes(Complex beta, int n_max) {
  check_truncation(n_max);
  const double b = std::abs(beta);
  const double tail = coherent_tail_mass(b, n_max);
  if (tail > kTailTolerance) {
    std::ostringstream msg;
    msg << "coherent state |beta|=" << b << " loses mass " << tail
        << " beyond n_max=" << n_max;
    throw TailMassError(msg.str(), tail);
  }
  ComplexVector c = ComplexVector::Zero(n_max + 1);
  if (b == 0.0) {
    c(0) = 1.0;
  } else {
    const double phase = std::arg(beta);
    const double log_b = std::log(b);
    for (int n = 0; n <= n_max; ++n) {
      const double mag =
          std::exp(-0.5 * b * b + n * log_b - 0.5 * std::lgamma(n + 1.0));
      c(n) = std::polar(mag, n * phase);
    }
  }
  return FockState(std::move(c));
}

std::vector<double> column_leakage(const ComplexMatrix& displacement) {
  std::vector<double> leak(static_cast<std::size_t>(displacement.cols()));
  for (Eigen::Index n = 0; n < displacement.cols(); ++n) {
    leak[static_cast<std::size_t>(n)] = 1.0 - displacement.col(n).squaredNorm();
  }
  return leak;
}

ComplexMatrix displacement_matrix(Complex alpha, int n_max,
                                  int checked_columns) {
  check_truncation(n_max);
  const int dim = n_max + 1;
  if (alpha == Complex(0.0)) return ComplexMatrix::Identity(dim, dim);
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw ValidationError("displacement amplitude must be finite");
  }

  const double r = std::abs(alpha);
  const double x = r * r;
  const double log_r = std::log(r);
  const double phase = std::arg(alpha);
  const auto lag = laguerre_table(n_max, x);

  std::vector<double> log_fact(dim);
  for (int n = 0; n < dim; ++n) log_fact[n] = std::lgamma(n + 1.0);

  ComplexMatrix d(dim, dim);
  for (int m = 0; m < dim; ++m) {
    for (int n = 0; n < dim; ++n) {
      const int lo = std::min(m, n);
      const int hi = std::max(m, n);
      const int k = hi - lo;
      const double log_pref =
          0.5 * (log_fact[lo] - log_fact[hi]) - 0.5 * x + k * log_r;
      const double mag = std::exp(log_pref) * lag[k][lo];
      // m >= n: alpha^k; m < n: (-conj(alpha))^k.
      const double angle = (m >= n) ? k * phase : k * (std::numbers::pi - phase);
      d(m, n) = std::polar(1.0, angle) * mag;
    }
  }

  const int last = std::clamp(checked_columns, 0, n_max);
  int worst = 0;
  double worst_leak = 0.0;
  for (int n = 0; n <= last; ++n) {
    const double leak = std::abs(1.0 - d.col(n).squaredNorm());
    if (leak > worst_leak) {
      worst_leak = leak;
      worst = n;
    }
  }
  if (worst_leak > kTailTolerance) {
    std::ostringstream msg;
    msg << "displacement |alpha|=" << r << " leaks " << worst_leak
        << " out of column " << worst << " at n_max=" << n_max;
    throw TruncationError(msg.str(), worst, worst_leak);
  }
  return d;
}

namespace {

int working_truncation(const DensityMatrix& rho, Complex alpha,
                       std::optional<int> n_max) {
  const int support = rho.support();
  const int n = n_max.value_or(
      default_truncation(std::abs(alpha), std::sqrt(static_cast<double>(support))));
  if (n < support) {
    throw ValidationError("working truncation " + std::to_string(n) +
                          " is below the state support " +
                          std::to_string(support));
  }
  return n;
}

}  // namespace

DensityMatrix displace(const DensityMatrix& rho, Complex alpha,
                       std::optional<int> n_max) {
  const int n = working_truncation(rho, alpha, n_max);
  const int s = rho.support();
  const ComplexMatrix d = displacement_matrix(alpha, n, s);
  const auto block = d.leftCols(s + 1);
  ComplexMatrix out =
      block * rho.entries().topLeftCorner(s + 1, s + 1) * block.adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix(std::move(out), DensityMatrix::Unchecked{});
}

std::vector<double> energy_distribution(const DensityMatrix& rho, Complex alpha,
                                        std::optional<int> n_max) {
  const int n = working_truncation(rho, alpha, n_max);
  const int s = rho.support();
  const ComplexMatrix d = displacement_matrix(alpha, n, s);
  const auto block = d.leftCols(s + 1);
  const ComplexMatrix m = block * rho.entries().topLeftCorner(s + 1, s + 1);

  std::vector<double> p(static_cast<std::size_t>(n) + 1);
  double total = 0.0;
  for (int k = 0; k <= n; ++k) {
    double value =
        m.row(k).cwiseProduct(block.row(k).conjugate()).sum().real();
    if (value < 0.0) {
      if (value < kClampFloor) {
        std::ostringstream msg;
        msg << "energy distribution P_" << k << " = " << value
            << " is negative beyond roundoff";
        throw TruncationError(msg.str(), k, -value);
      }
      value = 0.0;
    }
    p[static_cast<std::size_t>(k)] = value;
    total += value;
  }
  const double tr = rho.trace().real();
  if (total < tr - kTailTolerance || total > tr + 1e-10) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "energy distribution sums to " << total << " for trace " << tr;
    throw TruncationError(msg.str(), n, std::abs(total - tr));
  }
  return p;
}

}  // namespace wf::fock
