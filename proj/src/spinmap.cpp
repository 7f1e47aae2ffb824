#include "wignerfresnel/spinmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "wignerfresnel/errors.hpp"

namespace wf::spinmap {

namespace {

using std::numbers::pi;

constexpr int kMaxTwoJ = 2'000'000;

}  // namespace

SpinSphere::SpinSphere(double j) {
  const double two_j = 2.0 * j;
  if (!std::isfinite(two_j) || two_j < 0.5 || two_j > kMaxTwoJ ||
      std::abs(two_j - std::round(two_j)) > 1e-12) {
    throw ValidationError("J must be a positive integer or half-integer");
  }
  two_j_ = static_cast<int>(std::lround(two_j));
  const double jj = 0.5 * two_j_;
  radius_ = std::sqrt(jj * (jj + 1.0));
}

Belt belt(const SpinSphere& sphere, int n) {
  if (n < 0 || n > sphere.two_j()) {
    throw RangeError("belt index " + std::to_string(n) + " outside 0.." +
                     std::to_string(sphere.two_j()));
  }
  const double r = sphere.radius();
  Belt b;
  b.n = n;
  b.two_m = 2 * n - sphere.two_j();
  b.z_lo = std::max(b.m() - 0.5, -r);
  b.z_hi = std::min(b.m() + 0.5, r);
  return b;
}

std::vector<Belt> belts(const SpinSphere& sphere) {
  std::vector<Belt> out;
  out.reserve(static_cast<std::size_t>(sphere.belt_count()));
  for (int n = 0; n < sphere.belt_count(); ++n) out.push_back(belt(sphere, n));
  return out;
}

double belt_area(const SpinSphere& sphere, double m) {
  const double n = m + sphere.j();
  if (std::abs(n - std::round(n)) > 1e-12) {
    throw ValidationError("m must differ from J by an integer");
  }
  const Belt b = belt(sphere, static_cast<int>(std::lround(n)));
  return 2.0 * pi * sphere.radius() * (b.z_hi - b.z_lo);
}

double project(const SpinSphere& sphere, double z, Hemisphere hemisphere) {
  const double r = sphere.radius();
  if (hemisphere == Hemisphere::north) z = -z;
  if (!(z >= -r) || !(z < r)) {
    throw RangeError("height outside [-R, R) of the projection");
  }
  const double rho = 2.0 * r * std::sqrt((r - z) * (r + z)) / (r - z);
  return rho / std::sqrt(r);
}

ProjectedBand projected_band(const SpinSphere& sphere, int n) {
  const Belt b = belt(sphere, n);
  ProjectedBand band;
  band.n = n;
  band.two_m = b.two_m;
  band.rho_lo = project(sphere, b.z_lo);
  if (b.z_hi >= sphere.radius()) {
    band.open_ended = true;
    band.rho_hi = std::numeric_limits<double>::infinity();
  } else {
    band.rho_hi = project(sphere, b.z_hi);
  }
  return band;
}

double projected_band_area(const SpinSphere& sphere, int n) {
  const ProjectedBand band = projected_band(sphere, n);
  if (band.open_ended) {
    throw RangeError("belt " + std::to_string(n) +
                     " touches the projection pole; its image is unbounded");
  }
  return pi * (band.rho_hi * band.rho_hi - band.rho_lo * band.rho_lo);
}

ConvergenceReport convergence(const std::vector<double>& j_values, int n_max) {
  if (n_max < 1) throw ValidationError("convergence scan needs n_max >= 1");
  ConvergenceReport report;
  report.j_values = j_values;
  for (int n = 1; n <= n_max; ++n) {
    report.n.push_back(n);
    report.target.push_back(std::sqrt(2.0 * n));
  }
  for (double j : j_values) {
    const SpinSphere sphere(j);
    if (n_max > sphere.two_j()) {
      throw ValidationError("J = " + std::to_string(j) + " has fewer than " +
                            std::to_string(n_max) + " belt boundaries");
    }
    std::vector<double> radii;
    double worst = 0.0;
    for (int n = 1; n <= n_max; ++n) {
      const double rho = projected_band(sphere, n).rho_lo;
      radii.push_back(rho);
      const double target = std::sqrt(2.0 * n);
      worst = std::max(worst, std::abs(rho - target) / target);
    }
    report.radii.push_back(std::move(radii));
    report.max_relative_error.push_back(worst);
  }
  return report;
}

}  // namespace wf::spinmap
