#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "wignerfresnel/fresnel.hpp"

using namespace wf;
using namespace wf::fresnel;
using std::numbers::pi;

namespace {

FresnelGeometry standard() { return {100.0, 100.0, 1.0, 1.0}; }

// |Q - P| by coordinates: Q on the sphere of radius r0 about the source,
// P on the axis at r0 + b.
double chord(const FresnelGeometry& g, double theta) {
  const double x = g.r0 * std::sin(theta);
  const double z = g.r0 * std::cos(theta) - (g.r0 + g.b);
  return std::hypot(x, z);
}

double wrap(double a) { return std::remainder(a, 2 * pi); }

}  // namespace

TEST_SUITE("fresnel") {

TEST_CASE("geometry validation") {
  FresnelGeometry g = standard();
  CHECK_NOTHROW(g.validate());
  g.lambda = 20.0;
  CHECK_THROWS_AS(g.validate(), ValidationError);
  g = standard();
  g.r0 = -1.0;
  CHECK_THROWS_AS(g.validate(), ValidationError);
  CHECK(standard().max_zone_boundary() == 400);
}

TEST_CASE("zone boundaries sit at b + n lambda / 2") {
  const auto g = standard();
  for (int n : {1, 2, 10, 100, 399}) {
    const double theta = zone_boundary_angle(g, n);
    CHECK(chord(g, theta) == doctest::Approx(g.b + 0.5 * n * g.lambda).epsilon(1e-13));
    CHECK(distance_to_observer(g, theta) == doctest::Approx(chord(g, theta)).epsilon(1e-13));
  }
  CHECK(zone_boundary_angle(g, 0) == 0.0);
  CHECK_THROWS_AS(zone_boundary_angle(g, 401), RangeError);
  const auto z = zone(g, 3);
  CHECK(z.s_lo == doctest::Approx(101.5));
  CHECK(z.s_hi == doctest::Approx(102.0));
  CHECK(z.rho == doctest::Approx(zone_radius(g, 4)));
}

TEST_CASE("paraxial zone radii") {
  const FresnelGeometry g{1000.0, 1000.0, 1.0, 1.0};
  for (int n : {1, 4, 9}) {
    const double paraxial = std::sqrt(n * g.lambda * g.r0 * g.b / (g.r0 + g.b));
    CHECK(zone_radius(g, n) == doctest::Approx(paraxial).epsilon(5e-3));
  }
  CHECK(zone_radius(g, 4) / zone_radius(g, 1) == doctest::Approx(2.0).epsilon(2e-3));
}

TEST_CASE("inclination factor") {
  const auto g = standard();
  const auto forward = inclination(g, 0.0);
  CHECK(forward.chi == doctest::Approx(0.0));
  CHECK(forward.k_factor == doctest::Approx(1.0));
  double previous = 1.0;
  for (int n = 1; n <= 100; ++n) {
    const double k = inclination(g, zone_boundary_angle(g, n)).k_factor;
    CHECK(k <= previous);
    previous = k;
  }
  // At theta = pi the observer direction is opposite the outward normal.
  CHECK(inclination(g, pi).k_factor == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("free propagation oracle") {
  const auto g = standard();
  const Complex free = free_field(g);
  CHECK(std::abs(free) == doctest::Approx(1.0 / 200));
  const Complex u = huygens_integral(g, pi);
  CHECK(std::abs(u) == doctest::Approx(std::abs(free)).epsilon(1e-3));
  CHECK(std::abs(wrap(std::arg(u) - std::arg(free))) < 5e-3);
}

TEST_CASE("first zone doubles the field") {
  const auto g = standard();
  const Complex u1 = huygens_integral(g, zone_boundary_angle(g, 1), 64, Edge::hard);
  CHECK(std::abs(u1) == doctest::Approx(2.0 * std::abs(free_field(g))).epsilon(0.02));
}

TEST_CASE("zone contributions alternate in phase") {
  const auto g = standard();
  const auto u = zone_contributions(g, 51);
  for (int n = 0; n < 50; ++n) {
    CHECK(std::abs(std::abs(wrap(std::arg(u[n + 1]) - std::arg(u[n]))) - pi) < 0.05);
  }
}

TEST_CASE("zone additivity") {
  const auto g = standard();
  for (int count : {1, 7, 60}) {
    const auto u = zone_contributions(g, count);
    Complex sum = 0.0;
    for (const auto& z : u) sum += z;
    const Complex direct = huygens_integral(g, zone_boundary_angle(g, count), kDefaultOrder, Edge::hard);
    CHECK(std::abs(sum - direct) <= 1e-10 * std::abs(direct));
  }
}

TEST_CASE("quadrature order doubling") {
  const auto g = standard();
  for (int n : {0, 10, 200}) {
    const Complex a = zone_contribution(g, n, 16);
    const Complex b = zone_contribution(g, n, 32);
    CHECK(std::abs(a - b) < 1e-6 * std::abs(b));
  }
  CHECK_THROWS_AS(zone_contribution(g, 0, kMinOrder - 1), ValidationError);
}

TEST_CASE("zone sums") {
  const auto g = standard();
  const double free = std::abs(free_field(g));
  const Complex avg = zone_sum(g, 200, SumMode::averaged);
  CHECK(std::abs(avg) == doctest::Approx(free).epsilon(0.01));
  CHECK(std::abs(avg) == doctest::Approx(0.5 * std::abs(zone_contribution(g, 0))).epsilon(0.02));
  const Complex raw = zone_sum(g, 201, SumMode::raw);
  CHECK(std::abs(raw) > std::abs(avg));
}

TEST_CASE("zone plate") {
  const auto g = standard();
  std::vector<int> odd;
  for (int k = 0; k < 20; ++k) odd.push_back(2 * k);
  const Complex plate = zone_plate(g, odd, 40);
  CHECK(std::abs(plate) > 5 * std::abs(free_field(g)));
  const std::vector<int> bad = {40};
  CHECK_THROWS_AS(zone_plate(g, bad, 40), ValidationError);
}

TEST_CASE("zone scaling slope") {
  CHECK(zone_scaling_slope(standard(), 1, 100) == doctest::Approx(0.5).epsilon(0.02));
  CHECK(zone_scaling_slope({1000.0, 1000.0, 1.0, 1.0}, 1, 100) == doctest::Approx(0.5).epsilon(0.01));
}

}
