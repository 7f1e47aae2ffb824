#include "wignerfresnel/fresnel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "wignerfresnel/quadrature.hpp"

namespace wf::fresnel {

namespace {

using std::numbers::pi;

void check_order(int order) {
  if (order < kMinOrder) {
    throw ValidationError("quadrature order " + std::to_string(order) +
                          " is below the per-zone floor of " +
                          std::to_string(kMinOrder) + " nodes");
  }
}

double zone_distance(const FresnelGeometry& geom, double n) {
  return geom.b + 0.5 * n * geom.lambda;
}

// Continuous zone coordinate of the wavefront point at theta.
double zone_coordinate(const FresnelGeometry& geom, double theta) {
  return (distance_to_observer(geom, theta) - geom.b) / (0.5 * geom.lambda);
}

// Outer angle of zone n, or pi when the wavefront ends inside the zone.
double zone_end(const FresnelGeometry& geom, int n) {
  return (n + 1 <= geom.max_zone_boundary()) ? zone_boundary_angle(geom, n + 1)
                                             : pi;
}

class Integrand {
 public:
  Integrand(const FresnelGeometry& geom, double taper_start, double taper_end)
      : geom_(geom), k_(geom.k()), taper_start_(taper_start), taper_end_(taper_end) {}

  // 2 pi r0^2 sin(theta) e^{iks} K / s, times the edge weight.
  Complex operator()(double theta) const {
    const double s = distance_to_observer(geom_, theta);
    const double kf = inclination(geom_, theta).k_factor;
    double w = 2.0 * pi * geom_.r0 * geom_.r0 * std::sin(theta) * kf / s;
    if (taper_end_ > taper_start_) {
      const double nu = (s - geom_.b) / (0.5 * geom_.lambda);
      if (nu > taper_start_) {
        const double t = std::min((nu - taper_start_) / (taper_end_ - taper_start_), 1.0);
        w *= 0.5 * (1.0 + std::cos(pi * t));
      }
    }
    return std::polar(w, k_ * s);
  }

 private:
  const FresnelGeometry& geom_;
  double k_;
  double taper_start_;
  double taper_end_;
};

Complex prefactor(const FresnelGeometry& geom) {
  return Complex(0.0, -1.0 / geom.lambda) * geom.amplitude *
         std::polar(1.0, geom.k() * geom.r0) / geom.r0;
}

}  // namespace

void FresnelGeometry::validate() const {
  for (double x : {r0, b, lambda, amplitude}) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw ValidationError("geometry needs positive finite r0, b, lambda, A");
    }
  }
  if (r0 < kFresnelRatio * lambda || b < kFresnelRatio * lambda) {
    throw ValidationError("r0 and b must be at least 10 wavelengths (Fresnel regime)");
  }
}

double FresnelGeometry::k() const { return 2.0 * pi / lambda; }

int FresnelGeometry::max_zone_boundary() const {
  // s_n <= 2 r0 + b  <=>  n <= 4 r0 / lambda
  return static_cast<int>(std::floor(4.0 * r0 / lambda + 1e-12));
}

double distance_to_observer(const FresnelGeometry& geom, double theta) {
  const double h = std::sin(0.5 * theta);
  return std::sqrt(geom.b * geom.b + 4.0 * geom.r0 * (geom.r0 + geom.b) * h * h);
}

double zone_boundary_angle(const FresnelGeometry& geom, int n) {
  geom.validate();
  if (n < 0 || n > geom.max_zone_boundary()) {
    throw RangeError("zone boundary " + std::to_string(n) +
                     " does not lie on the wavefront (max " +
                     std::to_string(geom.max_zone_boundary()) + ")");
  }
  const double s = zone_distance(geom, n);
  // 4 r0 (r0 + b) sin^2(theta/2) = s^2 - b^2
  const double x = (s - geom.b) * (s + geom.b) / (4.0 * geom.r0 * (geom.r0 + geom.b));
  return 2.0 * std::asin(std::sqrt(std::clamp(x, 0.0, 1.0)));
}

Zone zone(const FresnelGeometry& geom, int n) {
  Zone z;
  z.n = n;
  z.theta_lo = zone_boundary_angle(geom, n);
  z.theta_hi = zone_boundary_angle(geom, n + 1);
  z.s_lo = zone_distance(geom, n);
  z.s_hi = zone_distance(geom, n + 1);
  const double s_mid = zone_distance(geom, n + 0.5);
  const double x = (s_mid - geom.b) * (s_mid + geom.b) /
                   (4.0 * geom.r0 * (geom.r0 + geom.b));
  z.chi_mid = inclination(geom, 2.0 * std::asin(std::sqrt(std::clamp(x, 0.0, 1.0)))).chi;
  z.rho = geom.r0 * std::sin(z.theta_hi);
  return z;
}

double zone_radius(const FresnelGeometry& geom, int n) {
  return geom.r0 * std::sin(zone_boundary_angle(geom, n));
}

double zone_scaling_slope(const FresnelGeometry& geom, int n_lo, int n_hi) {
  if (n_lo < 1 || n_hi <= n_lo) throw ValidationError("need 1 <= n_lo < n_hi");
  std::vector<double> ns;
  std::vector<double> rhos;
  for (int n = n_lo; n <= n_hi; ++n) {
    ns.push_back(n);
    rhos.push_back(zone_radius(geom, n));
  }
  return loglog_slope(ns, rhos);
}

Inclination inclination(const FresnelGeometry& geom, double theta) {
  const double s = distance_to_observer(geom, theta);
  const double d = geom.r0 + geom.b;
  const double cos_chi =
      std::clamp((d * d - geom.r0 * geom.r0 - s * s) / (2.0 * geom.r0 * s), -1.0, 1.0);
  return {0.5 * (1.0 + cos_chi), std::acos(cos_chi)};
}

Complex free_field(const FresnelGeometry& geom) {
  const double d = geom.r0 + geom.b;
  return geom.amplitude * std::polar(1.0, geom.k() * d) / d;
}

Complex huygens_integral(const FresnelGeometry& geom, double theta_max,
                         int order, Edge edge) {
  geom.validate();
  check_order(order);
  if (!(theta_max > 0.0) || theta_max > pi) {
    throw ValidationError("theta_max must lie in (0, pi]");
  }
  const GaussLegendre rule(order);
  double taper_start = 0.0;
  double taper_end = 0.0;
  if (edge == Edge::tapered) {
    taper_end = zone_coordinate(geom, theta_max);
    taper_start = 0.9 * taper_end;
  }
  const Integrand f(geom, taper_start, taper_end);
  Complex sum = 0.0;
  for (int n = 0;; ++n) {
    const double lo = zone_boundary_angle(geom, n);
    if (lo >= theta_max) break;
    const double hi = std::min(zone_end(geom, n), theta_max);
    sum += rule.integrate(f, lo, hi);
    if (hi >= theta_max) break;
  }
  return prefactor(geom) * sum;
}

Complex zone_contribution(const FresnelGeometry& geom, int n, int order) {
  geom.validate();
  check_order(order);
  if (n < 0 || n + 1 > geom.max_zone_boundary()) {
    throw RangeError("zone " + std::to_string(n) + " is not a full zone of the wavefront");
  }
  const GaussLegendre rule(order);
  const Integrand f(geom, 0.0, 0.0);
  return prefactor(geom) *
         rule.integrate(f, zone_boundary_angle(geom, n), zone_boundary_angle(geom, n + 1));
}

std::vector<Complex> zone_contributions(const FresnelGeometry& geom, int count,
                                        int order) {
  geom.validate();
  check_order(order);
  if (count < 0 || count > geom.max_zone_boundary()) {
    throw RangeError("only " + std::to_string(geom.max_zone_boundary()) +
                     " full zones fit on the wavefront");
  }
  const GaussLegendre rule(order);
  const Integrand f(geom, 0.0, 0.0);
  const Complex pre = prefactor(geom);
  std::vector<Complex> out(static_cast<std::size_t>(count));
  double lo = 0.0;
  for (int n = 0; n < count; ++n) {
    const double hi = zone_boundary_angle(geom, n + 1);
    out[static_cast<std::size_t>(n)] = pre * rule.integrate(f, lo, hi);
    lo = hi;
  }
  return out;
}

Complex zone_sum(const FresnelGeometry& geom, int count, SumMode mode, int order) {
  if (count < 1) throw ValidationError("zone sum needs at least one zone");
  const auto u = zone_contributions(geom, count, order);
  if (mode == SumMode::raw) {
    double signed_sum = 0.0;
    for (std::size_t n = 0; n < u.size(); ++n) {
      signed_sum += (n % 2 == 0 ? 1.0 : -1.0) * std::abs(u[n]);
    }
    return std::polar(signed_sum, std::arg(u.front()));
  }
  Complex partial = 0.0;
  for (std::size_t n = 0; n + 1 < u.size(); ++n) partial += u[n];
  return partial + 0.5 * u.back();
}

Complex zone_plate(const FresnelGeometry& geom, std::span<const int> open_zones,
                   int count, int order) {
  for (int n : open_zones) {
    if (n < 0 || n >= count) {
      throw ValidationError("open zone " + std::to_string(n) + " outside [0, " +
                            std::to_string(count) + ")");
    }
  }
  if (count == 0) return 0.0;
  const auto u = zone_contributions(geom, count, order);
  std::vector<bool> open(static_cast<std::size_t>(count), false);
  for (int n : open_zones) open[static_cast<std::size_t>(n)] = true;
  Complex sum = 0.0;
  for (int n = 0; n < count; ++n) {
    if (open[static_cast<std::size_t>(n)]) sum += u[static_cast<std::size_t>(n)];
  }
  return sum;
}

}  // namespace wf::fresnel
