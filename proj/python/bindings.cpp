#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wignerfresnel/fresnel.hpp"
#include "wignerfresnel/semiclassics.hpp"
#include "wignerfresnel/spinmap.hpp"
#include "wignerfresnel/state_spec.hpp"
#include "wignerfresnel/wigner.hpp"

namespace py = pybind11;
using namespace wf;

namespace {

py::array_t<double> field_array(const wigner::WignerField& w) {
  const auto& g = w.grid();
  py::array_t<double> out({g.n_u, g.n_v});
  auto view = out.mutable_unchecked<2>();
  for (int i = 0; i < g.n_u; ++i) {
    for (int j = 0; j < g.n_v; ++j) view(i, j) = w.value(i, j);
  }
  return out;
}

wigner::PhaseGrid make_grid(double lo, double hi, int count, std::optional<std::tuple<double, double, int>> v) {
  auto g = wigner::PhaseGrid::square(lo, hi, count);
  if (v) {
    std::tie(g.v_min, g.v_max, g.n_v) = *v;
    g.validate();
  }
  return g;
}

}  // namespace

PYBIND11_MODULE(wignerfresnel, m) {
  m.doc() = "Wigner functions, area-of-overlap distributions, Fresnel zones and spin projections";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  // phase space
  m.def("wigner_at", [](const std::string& state, double u, double v) {
    return wigner::wigner_direct_at(parse_state(state), {u, v});
  }, py::arg("state"), py::arg("u"), py::arg("v"));

  m.def("parity_sum", [](const std::string& state, double u, double v) {
    return wigner::parity_sum(parse_state(state), PhasePoint{u, v}.alpha()).value;
  }, py::arg("state"), py::arg("u"), py::arg("v"), "2 pi W(u, v) from the displaced-parity series");

  m.def("wigner_grid", [](const std::string& state, double lo, double hi, int count,
                          std::optional<std::tuple<double, double, int>> v, const std::string& method) {
    const auto rho = parse_state(state);
    const auto grid = make_grid(lo, hi, count, v);
    if (method == "direct") return field_array(wigner::wigner_direct(rho, grid));
    if (method == "parity") return field_array(wigner::wigner_parity(rho, grid));
    throw ValidationError("method must be 'direct' or 'parity'");
  }, py::arg("state"), py::arg("lo"), py::arg("hi"), py::arg("count"), py::arg("v") = py::none(),
     py::arg("method") = "direct", "W on a grid; rows follow u, columns follow v");

  m.def("energy_distribution", [](const std::string& state, std::complex<double> alpha) {
    return fock::energy_distribution(parse_state(state), alpha);
  }, py::arg("state"), py::arg("alpha"));

  // semiclassics
  m.def("overlap_distribution", &semiclassics::overlap_distribution, py::arg("beta"),
        py::arg("n_bands") = 0);
  m.def("compare_poisson", [](double beta, int n_bands) {
    const auto c = semiclassics::compare_poisson(beta, n_bands);
    py::dict d;
    d["beta"] = c.beta;
    d["overlap_mean"] = c.overlap_mean;
    d["poisson_mean"] = c.poisson_mean;
    d["overlap_variance"] = c.overlap_variance;
    d["poisson_variance"] = c.poisson_variance;
    d["tv_distance"] = c.tv_distance;
    d["p_overlap"] = c.p_overlap;
    d["p_poisson"] = c.p_poisson;
    return d;
  }, py::arg("beta"), py::arg("n_bands") = 0);
  m.def("circle_circle_lens", &semiclassics::circle_circle_lens, py::arg("r1"), py::arg("r2"), py::arg("d"));

  // fresnel
  py::class_<fresnel::FresnelGeometry>(m, "FresnelGeometry")
      .def(py::init([](double r0, double b, double lambda, double amplitude) {
             fresnel::FresnelGeometry g{r0, b, lambda, amplitude};
             g.validate();
             return g;
           }),
           py::arg("r0"), py::arg("b"), py::arg("wavelength"), py::arg("amplitude") = 1.0)
      .def_readonly("r0", &fresnel::FresnelGeometry::r0)
      .def_readonly("b", &fresnel::FresnelGeometry::b)
      .def_readonly("wavelength", &fresnel::FresnelGeometry::lambda)
      .def_readonly("amplitude", &fresnel::FresnelGeometry::amplitude)
      .def("__repr__", [](const fresnel::FresnelGeometry& g) {
        return "FresnelGeometry(r0=" + std::to_string(g.r0) + ", b=" + std::to_string(g.b) +
               ", wavelength=" + std::to_string(g.lambda) + ")";
      });

  m.def("free_field", &fresnel::free_field, py::arg("geometry"));
  m.def("zone_radius", &fresnel::zone_radius, py::arg("geometry"), py::arg("n"));
  m.def("zone_scaling_slope", &fresnel::zone_scaling_slope, py::arg("geometry"), py::arg("n_lo") = 1,
        py::arg("n_hi") = 100);
  m.def("huygens_integral", [](const fresnel::FresnelGeometry& g, double theta_max, int order, bool tapered) {
    return fresnel::huygens_integral(g, theta_max, order, tapered ? fresnel::Edge::tapered : fresnel::Edge::hard);
  }, py::arg("geometry"), py::arg("theta_max"), py::arg("order") = fresnel::kDefaultOrder,
     py::arg("tapered") = true);
  m.def("zone_contributions", &fresnel::zone_contributions, py::arg("geometry"), py::arg("count"),
        py::arg("order") = fresnel::kDefaultOrder);
  m.def("zone_sum", [](const fresnel::FresnelGeometry& g, int count, const std::string& mode, int order) {
    if (mode != "raw" && mode != "averaged") throw ValidationError("mode must be 'raw' or 'averaged'");
    return fresnel::zone_sum(g, count, mode == "raw" ? fresnel::SumMode::raw : fresnel::SumMode::averaged, order);
  }, py::arg("geometry"), py::arg("count"), py::arg("mode") = "averaged",
     py::arg("order") = fresnel::kDefaultOrder);
  m.def("zone_plate", [](const fresnel::FresnelGeometry& g, const std::vector<int>& open, int count, int order) {
    return fresnel::zone_plate(g, open, count, order);
  }, py::arg("geometry"), py::arg("open_zones"), py::arg("count"), py::arg("order") = fresnel::kDefaultOrder);

  // spin
  m.def("belt_area", [](double j, double mz) { return spinmap::belt_area(spinmap::SpinSphere(j), mz); },
        py::arg("j"), py::arg("m"));
  m.def("projected_band", [](double j, int n) {
    const auto b = spinmap::projected_band(spinmap::SpinSphere(j), n);
    return py::make_tuple(b.rho_lo, b.rho_hi);
  }, py::arg("j"), py::arg("n"), "(inner, outer) radius; outer is inf for the band at the pole");
  m.def("projected_band_area", [](double j, int n) {
    return spinmap::projected_band_area(spinmap::SpinSphere(j), n);
  }, py::arg("j"), py::arg("n"));
}
