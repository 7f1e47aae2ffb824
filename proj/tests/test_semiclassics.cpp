#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "oracles.hpp"
#include "wignerfresnel/errors.hpp"
#include "wignerfresnel/quadrature.hpp"
#include "wignerfresnel/semiclassics.hpp"

using namespace wf;
using namespace wf::semiclassics;
using std::numbers::pi;

TEST_SUITE("semiclassics") {

TEST_CASE("band edges follow the square-root law") {
  CHECK(band_edge(4) / band_edge(1) == doctest::Approx(2.0).epsilon(1e-15));
  std::vector<double> n, r;
  for (int k = 1; k <= 100; ++k) {
    n.push_back(k);
    r.push_back(band_edge(k));
  }
  CHECK(std::abs(loglog_slope(n, r) - 0.5) < 1e-12);
  for (int k : {0, 3, 50}) CHECK(band(k).area() == doctest::Approx(2 * pi));
  CHECK_THROWS_AS(band(-1), ValidationError);
}

TEST_CASE("lens area limiting cases") {
  CHECK(circle_circle_lens(1, 2, 5) == 0.0);
  CHECK(circle_circle_lens(1, 3, 0.5) == doctest::Approx(pi));
  CHECK(circle_circle_lens(3, 1, 0.5) == doctest::Approx(pi));
  CHECK(circle_circle_lens(0, 2, 1) == 0.0);
  // Two unit circles at distance 1.
  CHECK(circle_circle_lens(1, 1, 1) == doctest::Approx(2 * pi / 3 - std::sqrt(3.0) / 2).epsilon(1e-14));
  CHECK(circle_circle_lens(1.3, 2.1, 2.4) == circle_circle_lens(2.1, 1.3, 2.4));
}

TEST_CASE("lens area against Monte Carlo") {
  struct Case {
    double r1, r2, d;
  };
  for (const Case c : {Case{1.0, 1.0, 1.0}, Case{1.4142, 3.0, 2.5}, Case{0.7, 2.0, 2.2}}) {
    const long samples = 10'000'000;
    const double mc = oracle::lens_monte_carlo(c.r1, c.r2, c.d, samples, 12345);
    const double box = 4 * c.r1 * c.r1;
    const double p = mc / box;
    const double sigma = box * std::sqrt(p * (1 - p) / samples);
    CHECK(std::abs(circle_circle_lens(c.r1, c.r2, c.d) - mc) < 5 * sigma);
  }
}

TEST_CASE("overlap distribution against radial integration") {
  for (double beta : {0.0, 0.7, 2.0, 5.0}) {
    const auto p = overlap_distribution(beta);
    const auto disc = coherent_disc(beta);
    for (std::size_t n = 0; n < std::min<std::size_t>(p.size(), 60); ++n) {
      const double ref = oracle::disc_annulus_area(disc.d, disc.radius, band_edge(n), band_edge(n + 1)) /
                         (pi * disc.radius * disc.radius);
      CHECK(std::abs(p[n] - ref) < 1e-10);
    }
  }
}

TEST_CASE("overlap distribution normalization and shape") {
  for (double beta : {0.0, 0.3, 1.0, 2.5, 5.0, 10.0}) {
    const auto p = overlap_distribution(beta);
    CHECK(std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) < 1e-12);
    CHECK(*std::min_element(p.begin(), p.end()) >= 0.0);
  }
  const auto p = overlap_distribution(5.0);
  const auto peak = std::max_element(p.begin(), p.end()) - p.begin();
  CHECK(peak == 24);
  for (std::ptrdiff_t n = 1; n <= peak; ++n) CHECK(p[n] >= p[n - 1]);
  for (std::size_t n = peak + 1; n < p.size(); ++n) CHECK(p[n] <= p[n - 1]);
}

TEST_CASE("vacuum occupies the ground band") {
  const auto p = overlap_distribution(0.0);
  CHECK(p[0] == doctest::Approx(1.0));
  const auto c = compare_poisson(0.0);
  CHECK(c.tv_distance == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("Poisson comparison") {
  const auto c = compare_poisson(5.0);
  CHECK(c.overlap_mean == doctest::Approx(25.0002072073).epsilon(1e-10));
  CHECK(c.overlap_variance == doctest::Approx(25.1459065903).epsilon(1e-10));
  CHECK(c.poisson_mean == doctest::Approx(25.0).epsilon(1e-12));
  CHECK(c.poisson_variance == doctest::Approx(25.0).epsilon(1e-12));
  CHECK(c.tv_distance == doctest::Approx(0.12595041805406515).epsilon(1e-9));

  // TV distance from the radially integrated distribution.
  const auto disc = coherent_disc(5.0);
  double tv = 0.0;
  for (std::size_t n = 0; n < c.p_overlap.size(); ++n) {
    const double ref = oracle::disc_annulus_area(disc.d, disc.radius, band_edge(n), band_edge(n + 1)) / (2 * pi);
    tv += std::abs(ref - oracle::poisson(static_cast<int>(n), 25.0));
  }
  CHECK(std::abs(0.5 * tv - c.tv_distance) < 1e-9);

  for (std::size_t n = 0; n < c.p_poisson.size(); ++n) {
    CHECK(std::abs(c.p_poisson[n] - oracle::poisson(static_cast<int>(n), 25.0)) < 1e-14);
  }
  CHECK_THROWS_AS(compare_poisson(-1.0), ValidationError);
}

TEST_CASE("Gauss-Legendre rule") {
  const GaussLegendre g(8);
  CHECK(g.integrate([](double x) { return std::pow(x, 15); }, 0.0, 1.0) == doctest::Approx(1.0 / 16));
  CHECK(g.integrate([](double x) { return std::cos(x); }, 0.0, pi / 2) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(GaussLegendre{0}, ValidationError);
}

}
