// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "oracles.hpp"
#include "wignerfresnel/fock.hpp"
#include "wignerfresnel/fresnel.hpp"
#include "wignerfresnel/quadrature.hpp"
#include "wignerfresnel/semiclassics.hpp"
#include "wignerfresnel/spinmap.hpp"
#include "wignerfresnel/state_spec.hpp"
#include "wignerfresnel/wigner.hpp"

using namespace wf;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Outcome parity_equivalence() {
  Outcome o;
  const std::vector<std::string> states = {"vacuum", "fock:1", "fock:3", "coherent:1", "coherent:2"};
  // 25 points uniform in the disc |alpha| <= 3, fixed seed.
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<PhasePoint> points;
  while (points.size() < 25) {
    const double r = 3.0 * std::sqrt(unit(rng));
    points.push_back(PhasePoint::from_alpha(std::polar(r, 2 * pi * unit(rng))));
  }
  double worst = 0.0, worst_alpha = 0.0;
  int unique = 0;
  for (const auto& spec : states) {
    const auto rho = parse_state(spec);
    for (const auto& p : points) {
      worst_alpha = std::max(worst_alpha, std::abs(p.alpha()));
      const double s = wigner::parity_sum(rho, p.alpha()).value;
      worst = std::max(worst, std::abs(s - 2 * pi * wigner::wigner_direct_at(rho, p)));
    }
    const auto report = wigner::convention_check(rho, points);
    if (report.scaled_matches != report.unscaled_matches && report.winner == wigner::frozen_convention()) {
      ++unique;
    }
  }
  o.require(worst_alpha <= 3.0, "max |alpha| " + fmt(worst_alpha));
  o.require(worst < 1e-6, "max |S - 2 pi W| " + fmt(worst) + " < 1e-6");
  o.require(unique == 5, "unique convention for " + std::to_string(unique) + "/5 states");
  return o;
}

Outcome calibration() {
  Outcome o;
  const double w0 = wigner::wigner_direct_at(parse_state("vacuum"), {0, 0});
  const double w1 = wigner::wigner_direct_at(parse_state("fock:1"), {0, 0});
  o.require(std::abs(w0 - 1 / pi) < 1e-9, "vacuum W(0,0) off by " + fmt(std::abs(w0 - 1 / pi)));
  o.require(std::abs(w1 + 1 / pi) < 1e-6, "fock 1 W(0,0) off by " + fmt(std::abs(w1 + 1 / pi)));
  double worst = 0.0;
  for (const char* spec : {"vacuum", "fock:1", "coherent:1,0.5"}) {
    const auto w = wigner::wigner_direct(parse_state(spec), wigner::PhaseGrid::square(-5, 5, 101));
    worst = std::max(worst, std::abs(w.integral() - 1.0));
  }
  o.require(worst < 1e-4, "grid normalization off by " + fmt(worst));
  return o;
}

Outcome displaced_statistics() {
  Outcome o;
  const auto vac = parse_state("vacuum");
  double worst = 0.0;
  for (Complex a : {Complex(0, 0), Complex(0.5, 0), Complex(0.3, -0.9), Complex(-1.5, 0.5),
                    Complex(0, 2), Complex(1.2, -1.6)}) {
    const auto p = fock::energy_distribution(vac, a);
    for (int n = 0; n <= 20; ++n) worst = std::max(worst, std::abs(p[n] - oracle::poisson(n, std::norm(a))));
  }
  o.require(worst < 1e-10, "max |P_n - Poisson| " + fmt(worst) + " < 1e-10");
  return o;
}

Outcome overlap_algorithm() {
  Outcome o;
  double worst_sum = 0.0;
  for (double beta : {0.0, 0.5, 1.0, 2.0, 3.0, 5.0, 7.0, 10.0}) {
    const auto p = semiclassics::overlap_distribution(beta);
    worst_sum = std::max(worst_sum, std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0));
  }
  o.require(worst_sum < 1e-12, "normalization off by " + fmt(worst_sum));

  const auto c = semiclassics::compare_poisson(5.0);
  o.require(std::abs(c.overlap_mean - 25.0) < 0.05 * 25.0, "beta=5 mean " + fmt(c.overlap_mean));

  const auto& p = c.p_overlap;
  const auto peak = std::max_element(p.begin(), p.end()) - p.begin();
  bool unimodal = true;
  for (std::ptrdiff_t n = 1; n < static_cast<std::ptrdiff_t>(p.size()); ++n) {
    if (n <= peak ? p[n] < p[n - 1] : p[n] > p[n - 1]) unimodal = false;
  }
  o.require(unimodal, "unimodal, peak at n=" + std::to_string(peak));

  // Brute force: radial integration of the disc inside each band.
  const auto disc = semiclassics::coherent_disc(5.0);
  double tv = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    const double ref = oracle::disc_annulus_area(disc.d, disc.radius, semiclassics::band_edge(n),
                                                 semiclassics::band_edge(n + 1)) /
                       (pi * disc.radius * disc.radius);
    tv += std::abs(ref - oracle::poisson(static_cast<int>(n), 25.0));
  }
  tv *= 0.5;
  constexpr double kFrozenTv = 0.12595041805406515;
  o.require(std::abs(c.tv_distance - tv) < 1e-9, "TV " + fmt(c.tv_distance) + " vs brute force " + fmt(tv));
  o.require(std::abs(c.tv_distance - kFrozenTv) < 1e-9, "TV matches frozen regression value");
  return o;
}

Outcome zone_scaling() {
  Outcome o;
  const std::vector<fresnel::FresnelGeometry> geoms = {
      {100.0, 100.0, 1.0, 1.0}, {50.0, 200.0, 1.0, 1.0}, {1000.0, 1000.0, 1.0, 1.0}};
  for (const auto& g : geoms) {
    const double slope = fresnel::zone_scaling_slope(g, 1, 100);
    o.require(std::abs(slope - 0.5) <= 0.01,
              "r0=" + fmt(g.r0) + " b=" + fmt(g.b) + " slope " + fmt(slope));
  }
  return o;
}

Outcome diffraction_oracles() {
  Outcome o;
  const fresnel::FresnelGeometry g{100.0, 100.0, 1.0, 1.0};
  const double free = std::abs(fresnel::free_field(g));
  const double direct = std::abs(fresnel::huygens_integral(g, pi));
  const double averaged = std::abs(fresnel::zone_sum(g, 200, fresnel::SumMode::averaged));
  auto close = [](double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(a, b); };
  o.require(close(direct, free, 0.01), "direct/free " + fmt(direct / free));
  o.require(close(averaged, free, 0.01), "averaged/free " + fmt(averaged / free));
  o.require(close(direct, averaged, 0.01), "direct/averaged " + fmt(direct / averaged));
  const double first = std::abs(fresnel::zone_contribution(g, 0));
  o.require(close(averaged, 0.5 * first, 0.02), "averaged/(|U_1|/2) " + fmt(averaged / (0.5 * first)));
  const auto u = fresnel::zone_contributions(g, 51);
  double worst = 0.0;
  for (int n = 0; n < 50; ++n) {
    const double step = std::abs(std::remainder(std::arg(u[n + 1]) - std::arg(u[n]), 2 * pi));
    worst = std::max(worst, std::abs(step - pi));
  }
  o.require(worst <= 0.05, "max |phase step - pi| " + fmt(worst));
  return o;
}

Outcome zone_plate() {
  Outcome o;
  const fresnel::FresnelGeometry g{100.0, 100.0, 1.0, 1.0};
  std::vector<int> odd;
  for (int k = 0; k < 20; ++k) odd.push_back(2 * k);
  const double ratio = std::abs(fresnel::zone_plate(g, odd, 40)) / std::abs(fresnel::free_field(g));
  o.require(ratio > 5.0, "|U_plate|/|U_free| " + fmt(ratio));
  return o;
}

Outcome stereographic_limit() {
  Outcome o;
  const spinmap::SpinSphere s(200);
  double worst = 0.0;
  int worst_n = 0;
  for (int n = 1; n <= 10; ++n) {
    const double err = std::abs(spinmap::projected_band(s, n).rho_lo / std::sqrt(2.0 * n) - 1.0);
    if (err > worst) {
      worst = err;
      worst_n = n;
    }
  }
  o.require(worst < 0.01, "max radius error " + fmt(100 * worst) + "% at n=" + std::to_string(worst_n));

  bool decreasing = true;
  double previous = spinmap::projected_band_area(s, 1);
  for (int n = 2; n <= 200; ++n) {
    const double a = spinmap::projected_band_area(s, n);
    if (a >= previous) decreasing = false;
    previous = a;
  }
  const double equator = spinmap::projected_band_area(s, 200);
  o.require(decreasing, "areas decrease monotonically for n=1..200");
  o.require(equator < 2 * pi, "equatorial area/2pi " + fmt(equator / (2 * pi)));
  return o;
}

Outcome quadrature_consistency() {
  Outcome o;
  const fresnel::FresnelGeometry g{100.0, 100.0, 1.0, 1.0};
  double worst = 0.0;
  auto rel = [](Complex a, Complex b) { return std::abs(a - b) / std::abs(b); };
  worst = std::max(worst, rel(fresnel::huygens_integral(g, pi, 16), fresnel::huygens_integral(g, pi, 32)));
  const double cap = fresnel::zone_boundary_angle(g, 50);
  worst = std::max(worst, rel(fresnel::huygens_integral(g, cap, 16, fresnel::Edge::hard),
                              fresnel::huygens_integral(g, cap, 32, fresnel::Edge::hard)));
  for (int n : {0, 1, 25, 150, 399}) {
    worst = std::max(worst, rel(fresnel::zone_contribution(g, n, 16), fresnel::zone_contribution(g, n, 32)));
  }
  o.require(worst < 1e-6, "max relative change on doubling " + fmt(worst));

  double additivity = 0.0;
  for (int count : {1, 10, 100, 300}) {
    const auto u = fresnel::zone_contributions(g, count);
    const Complex sum = std::accumulate(u.begin(), u.end(), Complex(0.0));
    const Complex whole =
        fresnel::huygens_integral(g, fresnel::zone_boundary_angle(g, count), fresnel::kDefaultOrder,
                                  fresnel::Edge::hard);
    additivity = std::max(additivity, rel(sum, whole));
  }
  o.require(additivity < 1e-10, "zone additivity " + fmt(additivity));
  return o;
}

Outcome cli_contract() {
  Outcome o;
  const auto dir = cli::scratch_dir("acceptance");
  const std::vector<std::string> runs = {
      "wigner --state 'mixture:fock:1@1;coherent:0.5,0.5@2' --grid -3:3:21 --method both",
      "--format json overlap --beta 3",
      "fresnel --r0 100 --b 100 --lambda 1 zones --n 50",
      "--format json fresnel --r0 100 --b 100 --lambda 1 zonesum --n 100",
      "spin --j 20 areas",
  };
  int identical = 0;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const auto a = dir / ("a" + std::to_string(k));
    const auto b = dir / ("b" + std::to_string(k));
    const int ra = cli::run(runs[k] + " --out " + a.string()).code;
    const int rb = cli::run(runs[k] + " --out " + b.string()).code;
    if (ra == 0 && rb == 0 && cli::slurp(a) == cli::slurp(b) && !cli::slurp(a).empty()) ++identical;
  }
  o.require(identical == static_cast<int>(runs.size()),
            std::to_string(identical) + "/" + std::to_string(runs.size()) + " runs byte-identical");

  const std::vector<std::pair<std::string, int>> bad = {
      {"wigner --state bogus", 2},
      {"wigner --state vacuum --grid 0:1", 2},
      {"overlap --beta -1", 2},
      {"fresnel --r0 5 --b 100 --lambda 1 zones", 2},
      {"spin --j 0 belts", 2},
      {"validate --in " + (dir / "missing.csv").string(), 2},
      {"wigner --state coherent:30 --grid -1:1:3", 2},
  };
  int honored = 0;
  for (const auto& [args, code] : bad) {
    if (cli::run(args).code == code) ++honored;
  }
  o.require(honored == static_cast<int>(bad.size()),
            std::to_string(honored) + "/" + std::to_string(bad.size()) + " malformed inputs gave the documented exit code");
  std::filesystem::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"parity-sum equivalence", parity_equivalence},
      {"Wigner calibration", calibration},
      {"displaced statistics", displaced_statistics},
      {"overlap algorithm", overlap_algorithm},
      {"Fresnel zone scaling", zone_scaling},
      {"diffraction oracles", diffraction_oracles},
      {"zone plate", zone_plate},
      {"stereographic limit", stereographic_limit},
      {"quadrature self-consistency", quadrature_consistency},
      {"CLI determinism", cli_contract},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
