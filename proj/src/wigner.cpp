#include "wignerfresnel/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace wf::wigner {

namespace {

using fock::ComplexMatrix;
using fock::ComplexVector;
using std::numbers::pi;

constexpr double kRelativeTolerance = 1e-10;
// Below this the integrand is beneath the 1e-14 window threshold anyway.
constexpr double kAbsoluteTolerance = 1e-16;
constexpr int kMinLevels = 2;
constexpr int kMaxLevels = 16;
constexpr double kContainmentThreshold = 1e-6;

// Position beyond which every psi_0..psi_s stays below `floor`.  Past the
// outermost turning point sqrt(2s + 1) the functions decay monotonically.
double eigenfunction_extent(int s, double floor) {
  std::vector<double> psi(static_cast<std::size_t>(s) + 1);
  double x = std::sqrt(2.0 * s + 1.0);
  for (;; x += 0.25) {
    fock::eigenfunctions_at(x, psi);
    double biggest = 0.0;
    for (double p : psi) biggest = std::max(biggest, std::abs(p));
    if (biggest < floor) return x;
  }
}

// State-dependent data shared by all rows of a direct evaluation.
struct DirectContext {
  int support;
  ComplexMatrix rho;  // support block
  double extent;
  double bandwidth;   // spatial frequency bound of the integrand, without v

  explicit DirectContext(const DensityMatrix& state)
      : support(state.support()),
        rho(state.entries().topLeftCorner(support + 1, support + 1)),
        extent(eigenfunction_extent(support, 1e-14 / (support + 1.0))),
        bandwidth(std::sqrt(2.0 * support + 1.0) + 1.0) {}

  // rho(u + y/2, u - y/2)
  Complex integrand(double u, double y, Eigen::VectorXd& a,
                    Eigen::VectorXd& b) const {
    fock::eigenfunctions_at(u + 0.5 * y, {a.data(), static_cast<std::size_t>(a.size())});
    fock::eigenfunctions_at(u - 0.5 * y, {b.data(), static_cast<std::size_t>(b.size())});
    const ComplexVector rb = rho * b.cast<Complex>();
    return a.cast<Complex>().dot(rb);  // a is real, conjugation is a no-op
  }
};

// W(u, v_j) for all j.  Uses f(-y) = conj f(y), so that
// W = (1/pi) Re int_0^Y exp(-i v y) f(y) dy, with Y the half window.
void integrate_row(const DirectContext& ctx, double u, std::span<const double> vs,
                   std::span<double> out) {
  const double half_window = 2.0 * (ctx.extent - std::abs(u));
  if (half_window <= 0.0) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  double v_abs = 0.0;
  for (double v : vs) v_abs = std::max(v_abs, std::abs(v));
  const double omega = v_abs + ctx.bandwidth;

  Eigen::VectorXd a(ctx.support + 1);
  Eigen::VectorXd b(ctx.support + 1);

  int intervals = std::max(4, static_cast<int>(std::ceil(half_window * omega / pi)));
  double h = half_window / intervals;

  // Trapezoid sums of Re(e^{-ivy} f) per v, and of |f| for the scale.
  std::vector<double> sums(vs.size(), 0.0);
  double abs_sum = 0.0;

  auto accumulate = [&](double y0, double step, int count, double weight_first,
                        double weight_last, std::vector<double>& target,
                        double& abs_target) {
    std::vector<Complex> f(static_cast<std::size_t>(count));
    std::vector<double> w(static_cast<std::size_t>(count), 1.0);
    if (count > 0) {
      w.front() = weight_first;
      w.back() = (count == 1) ? weight_first : weight_last;
    }
    for (int k = 0; k < count; ++k) {
      f[static_cast<std::size_t>(k)] = ctx.integrand(u, y0 + k * step, a, b);
      abs_target += w[static_cast<std::size_t>(k)] * std::abs(f[static_cast<std::size_t>(k)]);
    }
    for (std::size_t j = 0; j < vs.size(); ++j) {
      Complex rot = std::polar(1.0, -vs[j] * y0);
      const Complex step_rot = std::polar(1.0, -vs[j] * step);
      double acc = 0.0;
      for (int k = 0; k < count; ++k) {
        acc += w[static_cast<std::size_t>(k)] * (rot * f[static_cast<std::size_t>(k)]).real();
        rot *= step_rot;
      }
      target[j] += acc;
    }
  };

  accumulate(0.0, h, intervals + 1, 0.5, 0.5, sums, abs_sum);
  std::vector<double> estimate(vs.size());
  for (std::size_t j = 0; j < vs.size(); ++j) estimate[j] = h * sums[j];
  double scale = h * abs_sum;

  for (int level = 1; level <= kMaxLevels; ++level) {
    // New midpoints at odd multiples of h/2.
    accumulate(0.5 * h, h, intervals, 1.0, 1.0, sums, abs_sum);
    intervals *= 2;
    h *= 0.5;
    double worst = 0.0;
    std::size_t worst_j = 0;
    for (std::size_t j = 0; j < vs.size(); ++j) {
      const double next = h * sums[j];
      const double change = std::abs(next - estimate[j]);
      if (change > worst) {
        worst = change;
        worst_j = j;
      }
      estimate[j] = next;
    }
    scale = h * abs_sum;
    if (level >= kMinLevels &&
        worst <= std::max(kRelativeTolerance * scale, kAbsoluteTolerance)) {
      for (std::size_t j = 0; j < vs.size(); ++j) out[j] = estimate[j] / pi;
      return;
    }
    if (level == kMaxLevels) {
      std::ostringstream msg;
      msg << "Wigner integral did not converge at (u, v) = (" << u << ", "
          << vs[worst_j] << "), change " << worst;
      throw QuadratureError(msg.str(), u, vs[worst_j], worst);
    }
  }
}

void check_bound(double w, double u, double v) {
  if (!(std::abs(w) <= 1.0 / pi + kBoundSlack)) {
    std::ostringstream msg;
    msg << "Wigner value " << w << " at (" << u << ", " << v
        << ") exceeds the 1/pi bound";
    throw NumericalError(msg.str());
  }
}

}  // namespace

PhaseGrid PhaseGrid::square(double lo, double hi, int count) {
  PhaseGrid g{lo, hi, lo, hi, count, count};
  g.validate();
  return g;
}

void PhaseGrid::validate() const {
  for (double x : {u_min, u_max, v_min, v_max}) {
    if (!std::isfinite(x)) throw ValidationError("grid bounds must be finite");
  }
  if (!(u_max > u_min) || !(v_max > v_min)) {
    throw ValidationError("grid bounds must satisfy max > min");
  }
  if (n_u < 2 || n_v < 2) throw ValidationError("grid counts must be >= 2");
}

WignerField::WignerField(PhaseGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  grid_.validate();
  if (values_.size() != static_cast<std::size_t>(grid_.n_u) * grid_.n_v) {
    throw ValidationError("Wigner field size does not match its grid");
  }
}

double WignerField::integral() const {
  double sum = 0.0;
  for (double w : values_) sum += w;
  return sum * grid_.du() * grid_.dv();
}

double WignerField::boundary_max() const {
  double m = 0.0;
  for (int i = 0; i < grid_.n_u; ++i) {
    m = std::max({m, std::abs(value(i, 0)), std::abs(value(i, grid_.n_v - 1))});
  }
  for (int j = 0; j < grid_.n_v; ++j) {
    m = std::max({m, std::abs(value(0, j)), std::abs(value(grid_.n_u - 1, j))});
  }
  return m;
}

double WignerField::min() const {
  return *std::min_element(values_.begin(), values_.end());
}

double WignerField::max() const {
  return *std::max_element(values_.begin(), values_.end());
}

double WignerField::interpolate(double u, double v) const {
  const double fu = std::clamp((u - grid_.u_min) / grid_.du(), 0.0,
                               static_cast<double>(grid_.n_u - 1));
  const double fv = std::clamp((v - grid_.v_min) / grid_.dv(), 0.0,
                               static_cast<double>(grid_.n_v - 1));
  const int i = std::min(static_cast<int>(fu), grid_.n_u - 2);
  const int j = std::min(static_cast<int>(fv), grid_.n_v - 2);
  const double tu = fu - i;
  const double tv = fv - j;
  return (1 - tu) * (1 - tv) * value(i, j) + tu * (1 - tv) * value(i + 1, j) +
         (1 - tu) * tv * value(i, j + 1) + tu * tv * value(i + 1, j + 1);
}

WignerField wigner_direct(const DensityMatrix& rho, const PhaseGrid& grid) {
  grid.validate();
  const DirectContext ctx(rho);
  std::vector<double> vs(static_cast<std::size_t>(grid.n_v));
  for (int j = 0; j < grid.n_v; ++j) vs[static_cast<std::size_t>(j)] = grid.v(j);

  std::vector<double> values(static_cast<std::size_t>(grid.n_u) * grid.n_v);
  for (int i = 0; i < grid.n_u; ++i) {
    std::span<double> row(values.data() + static_cast<std::size_t>(i) * grid.n_v,
                          static_cast<std::size_t>(grid.n_v));
    integrate_row(ctx, grid.u(i), vs, row);
    for (int j = 0; j < grid.n_v; ++j) check_bound(row[j], grid.u(i), grid.v(j));
  }
  return WignerField(grid, std::move(values));
}

double wigner_direct_at(const DensityMatrix& rho, PhasePoint point) {
  const DirectContext ctx(rho);
  double w = 0.0;
  integrate_row(ctx, point.u, {&point.v, 1}, {&w, 1});
  check_bound(w, point.u, point.v);
  return w;
}

ParitySum parity_sum(const DensityMatrix& rho, Complex alpha,
                     std::optional<int> n_max) {
  const auto p = fock::energy_distribution(rho, -alpha, n_max);
  double sum = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    sum += (n % 2 == 0) ? p[n] : -p[n];
  }
  ParitySum result{2.0 * sum, p.back(), static_cast<int>(p.size()) - 1};
  if (result.last_term > 1e-8) {
    std::ostringstream msg;
    msg << "parity sum not converged: last term " << result.last_term
        << " at n_max=" << result.n_max << "; increase the truncation";
    throw NumericalError(msg.str());
  }
  return result;
}

WignerField wigner_parity(const DensityMatrix& rho, const PhaseGrid& grid) {
  grid.validate();
  std::vector<double> values(static_cast<std::size_t>(grid.n_u) * grid.n_v);
  for (int i = 0; i < grid.n_u; ++i) {
    for (int j = 0; j < grid.n_v; ++j) {
      const PhasePoint pt{grid.u(i), grid.v(j)};
      values[static_cast<std::size_t>(i) * grid.n_v + j] =
          parity_sum(rho, pt.alpha()).value / (2.0 * pi);
    }
  }
  return WignerField(grid, std::move(values));
}

ConventionReport convention_check(const DensityMatrix& rho,
                                  std::span<const PhasePoint> points) {
  ConventionReport report;
  for (const auto& pt : points) {
    const double reference = 2.0 * pi * wigner_direct_at(rho, pt);
    const Complex z(pt.u, pt.v);
    const double unscaled = parity_sum(rho, z).value;
    const double scaled = parity_sum(rho, z / std::numbers::sqrt2).value;
    report.unscaled_deviation =
        std::max(report.unscaled_deviation, std::abs(unscaled - reference));
    report.scaled_deviation =
        std::max(report.scaled_deviation, std::abs(scaled - reference));
  }
  report.unscaled_matches = report.unscaled_deviation < kConventionTolerance;
  report.scaled_matches = report.scaled_deviation < kConventionTolerance;
  if (!report.unscaled_matches && !report.scaled_matches) {
    std::ostringstream msg;
    msg << "no alpha convention reproduces the direct Wigner integral "
        << "(deviations " << report.unscaled_deviation << ", "
        << report.scaled_deviation << ")";
    throw NumericalError(msg.str());
  }
  if (report.unscaled_matches != report.scaled_matches) {
    report.winner =
        report.scaled_matches ? Convention::scaled : Convention::unscaled;
  }
  return report;
}

Convention frozen_convention() {
  return kAlphaScale == 1.0 ? Convention::unscaled : Convention::scaled;
}

double overlap_trace(const WignerField& w1, const WignerField& w2) {
  if (!(w1.grid() == w2.grid())) {
    throw ValidationError("overlap_trace needs identical grids");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < w1.values().size(); ++k) {
    sum += w1.values()[k] * w2.values()[k];
  }
  return 2.0 * pi * sum * w1.grid().du() * w1.grid().dv();
}

std::vector<double> rotated_quadrature(const FockState& psi, double theta,
                                       std::span<const double> xs) {
  const auto& c = psi.amplitudes();
  int support = 0;
  for (int n = psi.n_max(); n > 0; --n) {
    if (std::norm(c(n)) > 1e-32) {
      support = n;
      break;
    }
  }
  std::vector<double> basis(static_cast<std::size_t>(support) + 1);
  auto wavefunction = [&](double x) {
    fock::eigenfunctions_at(x, basis);
    Complex sum = 0.0;
    for (int n = 0; n <= support; ++n) sum += c(n) * basis[static_cast<std::size_t>(n)];
    return sum;
  };

  const double t = std::remainder(theta, 2.0 * pi);
  const double sn = std::sin(t);
  const double cs = std::cos(t);
  std::vector<double> out(xs.size());

  if (std::abs(sn) < 1e-12) {
    const double sign = cs > 0.0 ? 1.0 : -1.0;
    for (std::size_t k = 0; k < xs.size(); ++k) out[k] = std::norm(wavefunction(sign * xs[k]));
    return out;
  }

  const double cot = cs / sn;
  const double extent = eigenfunction_extent(support, 1e-16);
  double x_abs = 0.0;
  for (double x : xs) x_abs = std::max(x_abs, std::abs(x));
  const double omega = std::abs(cot) * extent + x_abs / std::abs(sn) +
                       std::sqrt(2.0 * support + 1.0) + 1.0;
  int intervals = std::max(8, static_cast<int>(std::ceil(2.0 * extent * omega / pi)));
  if (intervals > (1 << 22)) {
    throw QuadratureError("rotation kernel too oscillatory at this order",
                          theta, 0.0, 0.0);
  }
  double h = 2.0 * extent / intervals;
  const Complex prefactor = std::sqrt(Complex(1.0, -cot) / (2.0 * pi));

  // Integrand without the x-dependent linear phase: psi(x') e^{i x'^2 cot/2}.
  std::vector<Complex> sums(xs.size(), 0.0);
  double abs_sum = 0.0;
  auto accumulate = [&](double x0, double step, int count, double w_edge) {
    std::vector<Complex> g(static_cast<std::size_t>(count));
    std::vector<double> w(static_cast<std::size_t>(count), 1.0);
    w.front() = w_edge;
    w.back() = w_edge;
    for (int k = 0; k < count; ++k) {
      const double xp = x0 + k * step;
      g[static_cast<std::size_t>(k)] =
          wavefunction(xp) * std::polar(1.0, 0.5 * xp * xp * cot);
      abs_sum += w[static_cast<std::size_t>(k)] * std::abs(g[static_cast<std::size_t>(k)]);
    }
    for (std::size_t j = 0; j < xs.size(); ++j) {
      Complex rot = std::polar(1.0, -xs[j] * x0 / sn);
      const Complex step_rot = std::polar(1.0, -xs[j] * step / sn);
      Complex acc = 0.0;
      for (int k = 0; k < count; ++k) {
        acc += w[static_cast<std::size_t>(k)] * rot * g[static_cast<std::size_t>(k)];
        rot *= step_rot;
      }
      sums[j] += acc;
    }
  };

  accumulate(-extent, h, intervals + 1, 0.5);
  std::vector<Complex> estimate(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) estimate[j] = h * sums[j];
  for (int level = 1; level <= kMaxLevels; ++level) {
    accumulate(-extent + 0.5 * h, h, intervals, 1.0);
    intervals *= 2;
    h *= 0.5;
    double worst = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const Complex next = h * sums[j];
      worst = std::max(worst, std::abs(next - estimate[j]));
      estimate[j] = next;
    }
    if (level >= kMinLevels &&
        worst <= std::max(kRelativeTolerance * h * abs_sum, kAbsoluteTolerance)) {
      for (std::size_t j = 0; j < xs.size(); ++j) {
        out[j] = std::norm(prefactor * std::polar(1.0, 0.5 * xs[j] * xs[j] * cot) *
                           estimate[j]);
      }
      return out;
    }
    if (intervals > (1 << 22)) break;
  }
  throw QuadratureError("rotation kernel quadrature did not converge", theta,
                        0.0, 0.0);
}

std::vector<double> radon_slice(const WignerField& w, double theta,
                                std::span<const double> xs) {
  const auto& g = w.grid();
  const double cs = std::cos(theta);
  const double sn = std::sin(theta);
  const double step = 0.5 * std::min(g.du(), g.dv());
  std::vector<double> out(xs.size(), 0.0);

  for (std::size_t k = 0; k < xs.size(); ++k) {
    // Points (s cos - t sin, s sin + t cos); clip t to the grid rectangle.
    const double pu = xs[k] * cs;
    const double pv = xs[k] * sn;
    double t0 = -std::numeric_limits<double>::infinity();
    double t1 = std::numeric_limits<double>::infinity();
    auto clip = [&](double p, double d, double lo, double hi) {
      if (std::abs(d) < 1e-15) {
        if (p < lo || p > hi) t1 = t0 - 1.0;
        return;
      }
      double a = (lo - p) / d;
      double b = (hi - p) / d;
      if (a > b) std::swap(a, b);
      t0 = std::max(t0, a);
      t1 = std::min(t1, b);
    };
    clip(pu, -sn, g.u_min, g.u_max);
    clip(pv, cs, g.v_min, g.v_max);
    if (!(t1 > t0)) continue;

    auto at = [&](double t) { return w.interpolate(pu - t * sn, pv + t * cs); };
    const double w_enter = at(t0);
    const double w_exit = at(t1);
    if (std::abs(w_enter) > kContainmentThreshold ||
        std::abs(w_exit) > kContainmentThreshold) {
      std::ostringstream msg;
      msg << "Radon line at offset " << xs[k] << ", angle " << theta
          << " leaves the grid where |W| = "
          << std::max(std::abs(w_enter), std::abs(w_exit));
      throw ContainmentError(msg.str());
    }
    const int n = std::max(2, static_cast<int>(std::ceil((t1 - t0) / step)));
    const double h = (t1 - t0) / n;
    double sum = 0.5 * (w_enter + w_exit);
    for (int i = 1; i < n; ++i) sum += at(t0 + i * h);
    out[k] = sum * h;
  }
  return out;
}

}  // namespace wf::wigner
