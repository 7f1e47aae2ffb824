#include "wignerfresnel/semiclassics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wignerfresnel/errors.hpp"

namespace wf::semiclassics {

namespace {

using std::numbers::pi;
using std::numbers::sqrt2;

void check_beta(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw ValidationError("|beta| must be finite and >= 0");
  }
}

std::pair<double, double> moments(const std::vector<double>& p) {
  double mean = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) mean += n * p[n];
  double var = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    const double dn = n - mean;
    var += dn * dn * p[n];
  }
  return {mean, var};
}

}  // namespace

double Band::area() const {
  return pi * (r_outer * r_outer - r_inner * r_inner);
}

double band_edge(int n) { return std::sqrt(2.0 * n); }

Band band(int n) {
  if (n < 0) throw ValidationError("band index must be >= 0");
  return {n, band_edge(n), band_edge(n + 1)};
}

Disc coherent_disc(double beta_magnitude) {
  check_beta(beta_magnitude);
  return {sqrt2 * beta_magnitude, sqrt2};
}

double circle_circle_lens(double r1, double r2, double d) {
  if (r1 > r2) std::swap(r1, r2);
  d = std::abs(d);
  if (r1 <= 0.0) return 0.0;
  if (d >= r1 + r2) return 0.0;
  if (d <= r2 - r1) return pi * r1 * r1;
  // Half-angles from atan2 of the Heron product stay accurate at tangency,
  // where acos of the cosine loses half the digits.
  const double k = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
  const double root = std::sqrt(std::max(k, 0.0));
  const double phi1 = std::atan2(root, d * d + r1 * r1 - r2 * r2);
  const double phi2 = std::atan2(root, d * d + r2 * r2 - r1 * r1);
  return r1 * r1 * phi1 + r2 * r2 * phi2 - 0.5 * root;
}

int automatic_band_count(double beta_magnitude) {
  check_beta(beta_magnitude);
  const Disc disc = coherent_disc(beta_magnitude);
  const double reach = disc.d + disc.radius;
  // band_edge(n) >= reach  <=>  n >= reach^2 / 2
  const int disc_bands = static_cast<int>(std::ceil(0.5 * reach * reach)) + 1;
  const double mean = beta_magnitude * beta_magnitude;
  const int poisson_bands =
      static_cast<int>(std::ceil(mean + 12.0 * std::sqrt(mean) + 20.0));
  return std::max(disc_bands, poisson_bands);
}

std::vector<double> overlap_distribution(double beta_magnitude, int n_bands) {
  const Disc disc = coherent_disc(beta_magnitude);
  if (n_bands < 0) throw ValidationError("band count must be >= 0");
  if (n_bands == 0) n_bands = automatic_band_count(beta_magnitude);
  const double disc_area = pi * disc.radius * disc.radius;
  std::vector<double> p(static_cast<std::size_t>(n_bands));
  // Consecutive bands share an edge, so each lens is evaluated once.
  double inner = circle_circle_lens(disc.radius, band_edge(0), disc.d);
  for (int n = 0; n < n_bands; ++n) {
    const double outer = circle_circle_lens(disc.radius, band_edge(n + 1), disc.d);
    p[static_cast<std::size_t>(n)] = std::max(outer - inner, 0.0) / disc_area;
    inner = outer;
  }
  return p;
}

std::vector<double> poisson_distribution(double beta_magnitude, int n_bands) {
  check_beta(beta_magnitude);
  std::vector<double> p(static_cast<std::size_t>(std::max(n_bands, 0)), 0.0);
  if (p.empty()) return p;
  if (beta_magnitude == 0.0) {
    p[0] = 1.0;
    return p;
  }
  const double mean = beta_magnitude * beta_magnitude;
  const double log_mean = std::log(mean);
  for (int n = 0; n < n_bands; ++n) {
    p[static_cast<std::size_t>(n)] = std::exp(-mean + n * log_mean - std::lgamma(n + 1.0));
  }
  return p;
}

PoissonComparison compare_poisson(double beta_magnitude, int n_bands) {
  check_beta(beta_magnitude);
  if (n_bands == 0) n_bands = automatic_band_count(beta_magnitude);
  PoissonComparison report;
  report.beta = beta_magnitude;
  report.p_overlap = overlap_distribution(beta_magnitude, n_bands);
  report.p_poisson = poisson_distribution(beta_magnitude, n_bands);
  std::tie(report.overlap_mean, report.overlap_variance) = moments(report.p_overlap);
  std::tie(report.poisson_mean, report.poisson_variance) = moments(report.p_poisson);
  double tv = 0.0;
  for (int n = 0; n < n_bands; ++n) {
    tv += std::abs(report.p_overlap[static_cast<std::size_t>(n)] -
                   report.p_poisson[static_cast<std::size_t>(n)]);
  }
  report.tv_distance = 0.5 * tv;
  return report;
}

}  // namespace wf::semiclassics
