// Command-line front end: every computation as a batch run writing CSV or
// JSON.  Exit codes: 0 success, 2 invalid input, 3 numerical failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "wignerfresnel/fresnel.hpp"
#include "wignerfresnel/io.hpp"
#include "wignerfresnel/semiclassics.hpp"
#include "wignerfresnel/spinmap.hpp"
#include "wignerfresnel/state_spec.hpp"
#include "wignerfresnel/wigner.hpp"

namespace {

using namespace wf;
using io::CsvTable;
using io::Json;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct Output {
  std::string format = "csv";
  std::string path;

  bool to_file() const { return !path.empty(); }

  // Summary lines go to stdout when the data goes to a file, else stderr.
  std::ostream& summary() const { return to_file() ? std::cout : std::cerr; }

  void write_text(const std::string& text, const std::string& target) const {
    if (target.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(target, std::ios::binary);
    if (!f) throw ValidationError("cannot open output file " + target);
    f << text;
  }

  void emit(const CsvTable& table, const Json& json,
            const std::string& target) const {
    if (format == "json") {
      write_text(json.dump(2) + "\n", target);
    } else {
      std::ostringstream ss;
      io::write_csv(ss, table);
      write_text(ss.str(), target);
    }
  }
  void emit(const CsvTable& table, const Json& json) const {
    emit(table, json, path);
  }
};

Json table_json(const CsvTable& table) {
  Json j;
  j["columns"] = table.header;
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json r = Json::array();
    for (double x : row) r.push_back(std::isfinite(x) ? Json(x) : Json(nullptr));
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

wigner::PhaseGrid parse_grid(const std::string& u_spec, const std::string& v_spec) {
  auto parse_axis = [](const std::string& spec, double& lo, double& hi, int& count) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) {
      throw ValidationError("grid spec '" + spec + "' is not min:max:count");
    }
    try {
      std::size_t used = 0;
      lo = std::stod(parts[0], &used);
      if (used != parts[0].size()) throw std::invalid_argument(parts[0]);
      hi = std::stod(parts[1], &used);
      if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
      count = std::stoi(parts[2], &used);
      if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
    } catch (const std::logic_error&) {
      throw ValidationError("grid spec '" + spec + "' has a malformed number");
    }
  };
  wigner::PhaseGrid g;
  parse_axis(u_spec, g.u_min, g.u_max, g.n_u);
  parse_axis(v_spec.empty() ? u_spec : v_spec, g.v_min, g.v_max, g.n_v);
  g.validate();
  return g;
}

std::string sibling_path(const std::string& path, const std::string& tag) {
  const std::filesystem::path p(path);
  auto out = p.parent_path() / (p.stem().string() + "." + tag + p.extension().string());
  return out.string();
}

CsvTable complex_row(std::complex<double> u, std::complex<double> free) {
  return {{"re_U", "im_U", "abs_U", "phase_U", "abs_over_free"},
          {{u.real(), u.imag(), std::abs(u), std::arg(u), std::abs(u) / std::abs(free)}}};
}

// odd/even count zones from one, so "odd" opens the central zone: indices
// 0, 2, 4, ...  An explicit list uses the 0-based indices of the zone table.
std::vector<int> parse_open_zones(const std::string& spec, int count) {
  std::vector<int> open;
  if (spec == "odd" || spec == "even") {
    const int first = spec == "odd" ? 0 : 1;
    for (int k = 0; k < count; ++k) open.push_back(first + 2 * k);
    return open;
  }
  if (spec == "all") {
    for (int n = 0; n < count; ++n) open.push_back(n);
    return open;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      open.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw ValidationError("bad zone index '" + item + "' in --open");
    }
  }
  return open;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wigner functions, Bohr-Sommerfeld overlaps, Fresnel zones and "
               "angular-momentum projections"};
  app.require_subcommand(1);
  app.fallthrough();

  Output output;
  app.add_option("--format", output.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", output.path, "Output file (default: stdout)");

  // wigner
  auto* wig = app.add_subcommand("wigner", "Sample the Wigner function of a state");
  std::string state_spec;
  std::string grid_spec = "-4:4:81";
  std::string grid_v_spec;
  std::string method = "direct";
  wig->add_option("--state", state_spec,
                  "vacuum | fock:<n> | coherent:<re>[,<im>] | mixture:<spec>@<w>;...")
      ->required();
  wig->add_option("--grid", grid_spec, "min:max:count for both axes");
  wig->add_option("--grid-v", grid_v_spec, "min:max:count for the v axis");
  wig->add_option("--method", method)->check(CLI::IsMember({"direct", "parity", "both"}));

  // overlap
  auto* ovl = app.add_subcommand("overlap",
                                 "Area-of-overlap energy distribution vs Poisson");
  double beta = 0.0;
  int bands = 0;
  ovl->add_option("--beta", beta, "Coherent amplitude |beta|")->required();
  ovl->add_option("--bands", bands, "Number of bands (0 = automatic)");

  // fresnel
  auto* fre = app.add_subcommand("fresnel", "Fresnel zones of a spherical wavefront");
  fre->require_subcommand(1);
  fre->fallthrough();
  fresnel::FresnelGeometry geom;
  int order = fresnel::kDefaultOrder;
  fre->add_option("--r0", geom.r0, "Wavefront radius")->required();
  fre->add_option("--b", geom.b, "Wavefront to observer distance")->required();
  fre->add_option("--lambda", geom.lambda, "Wavelength")->required();
  fre->add_option("--amplitude", geom.amplitude, "Amplitude at unit distance");
  fre->add_option("--order", order, "Gauss-Legendre nodes per zone");

  int zone_count = 100;
  auto* fre_zones = fre->add_subcommand("zones", "Per-zone table");
  fre_zones->add_option("--n", zone_count, "Number of zones");

  auto* fre_int = fre->add_subcommand("integral", "Direct Huygens-Fresnel integral");
  double theta_max = std::numbers::pi;
  int cap_zones = 0;
  std::string edge = "tapered";
  fre_int->add_option("--theta-max", theta_max, "Cap half-angle in radians");
  fre_int->add_option("--zones", cap_zones, "Cap covering this many zones (overrides --theta-max)");
  fre_int->add_option("--edge", edge)->check(CLI::IsMember({"tapered", "hard"}));

  auto* fre_sum = fre->add_subcommand("zonesum", "Alternating zone sum");
  std::string mode = "averaged";
  fre_sum->add_option("--n", zone_count, "Number of zones");
  fre_sum->add_option("--mode", mode)->check(CLI::IsMember({"raw", "averaged"}));

  auto* fre_plate = fre->add_subcommand("plate", "Zone plate with selected open zones");
  std::string open_spec = "odd";
  fre_plate->add_option("--open", open_spec, "odd | even | all | comma list of zone indices");
  fre_plate->add_option("--n", zone_count, "Number of open zones (odd/even/all)");

  // spin
  auto* spin = app.add_subcommand("spin", "Angular-momentum belts and their projection");
  spin->require_subcommand(1);
  spin->fallthrough();
  double j_value = 1.0;
  spin->add_option("--j", j_value, "Total angular momentum J")->required();
  auto* spin_belts = spin->add_subcommand("belts", "Belts on the sphere");
  auto* spin_project = spin->add_subcommand("project", "Projected bands");
  auto* spin_areas = spin->add_subcommand("areas", "Projected band areas");
  auto* spin_conv = spin->add_subcommand("convergence", "Large-J convergence of band edges");
  std::vector<double> j_list = {20, 80, 200, 800};
  int conv_n = 10;
  spin_conv->add_option("--js", j_list, "J values")->delimiter(',');
  spin_conv->add_option("--n-max", conv_n, "Highest boundary index");

  // validate
  auto* val = app.add_subcommand("validate", "Re-read a CSV written by this tool");
  std::string in_path;
  val->add_option("--in", in_path, "CSV file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  try {
    if (*wig) {
      const auto rho = parse_state(state_spec);
      const auto grid = parse_grid(grid_spec, grid_v_spec);
      if (method == "parity") {
        const auto w = wigner::wigner_parity(rho, grid);
        output.emit(io::wigner_table(w), io::wigner_json(w));
      } else {
        const auto w = wigner::wigner_direct(rho, grid);
        output.emit(io::wigner_table(w), io::wigner_json(w));
        if (method == "both") {
          const auto wp = wigner::wigner_parity(rho, grid);
          if (output.to_file()) {
            output.emit(io::wigner_table(wp), io::wigner_json(wp),
                        sibling_path(output.path, "parity"));
          }
          double worst = 0.0;
          for (std::size_t k = 0; k < w.values().size(); ++k) {
            worst = std::max(worst, std::abs(wp.values()[k] - w.values()[k]));
          }
          output.summary() << "max_deviation " << io::format_double(2.0 * std::numbers::pi * worst)
                           << "\n";
        }
      }
    } else if (*ovl) {
      if (!(beta >= 0.0)) throw ValidationError("--beta must be >= 0");
      const auto report = semiclassics::compare_poisson(beta, bands);
      output.emit(io::comparison_table(report), io::comparison_json(report));
    } else if (*fre) {
      geom.validate();
      Json summary;
      summary["geometry"] = io::geometry_json(geom);
      const auto free = fresnel::free_field(geom);
      summary["U_free"] = io::complex_json(free);
      if (*fre_zones) {
        const auto table = io::zone_table(geom, zone_count, order);
        const double slope = zone_count >= 2 ? fresnel::zone_scaling_slope(geom, 1, zone_count)
                                             : std::nan("");
        summary["fitted_slope"] = slope;
        summary["zones"] = table_json(table);
        output.emit(table, summary);
        output.summary() << "fitted_slope " << io::format_double(slope) << "\n";
      } else if (*fre_int) {
        const double cap = cap_zones > 0 ? fresnel::zone_boundary_angle(geom, cap_zones) : theta_max;
        const auto u = fresnel::huygens_integral(
            geom, cap, order, edge == "hard" ? fresnel::Edge::hard : fresnel::Edge::tapered);
        summary["theta_max"] = cap;
        summary["edge"] = edge;
        summary["U_integral"] = io::complex_json(u);
        output.emit(complex_row(u, free), summary);
      } else if (*fre_sum) {
        const auto raw = fresnel::zone_sum(geom, zone_count, fresnel::SumMode::raw, order);
        const auto avg = fresnel::zone_sum(geom, zone_count, fresnel::SumMode::averaged, order);
        summary["zones"] = zone_count;
        summary["U_zone_sum_raw"] = io::complex_json(raw);
        summary["U_zone_sum_averaged"] = io::complex_json(avg);
        output.emit(complex_row(mode == "raw" ? raw : avg, free), summary);
      } else if (*fre_plate) {
        if (zone_count < 0) throw ValidationError("--n must be >= 0");
        const auto open = parse_open_zones(open_spec, zone_count);
        const int span = open.empty() ? 0 : *std::max_element(open.begin(), open.end()) + 1;
        const auto u = fresnel::zone_plate(geom, open, span, order);
        summary["zones"] = zone_count;
        summary["open_zones"] = open;
        summary["U_plate"] = io::complex_json(u);
        output.emit(complex_row(u, free), summary);
        output.summary() << "amplitude_ratio " << io::format_double(std::abs(u) / std::abs(free))
                         << "\n";
      }
    } else if (*spin) {
      const spinmap::SpinSphere sphere(j_value);
      Json meta;
      meta["J"] = sphere.j();
      meta["R"] = sphere.radius();
      if (*spin_belts) {
        const auto t = io::belt_table(sphere);
        meta["belts"] = table_json(t);
        output.emit(t, meta);
      } else if (*spin_project) {
        const auto t = io::band_table(sphere);
        meta["bands"] = table_json(t);
        output.emit(t, meta);
      } else if (*spin_areas) {
        const auto t = io::area_table(sphere);
        meta["areas"] = table_json(t);
        output.emit(t, meta);
      } else if (*spin_conv) {
        const auto report = spinmap::convergence(j_list, conv_n);
        CsvTable t{{"J", "n", "rho", "target"}, {}};
        for (std::size_t a = 0; a < report.j_values.size(); ++a) {
          for (std::size_t k = 0; k < report.n.size(); ++k) {
            t.rows.push_back({report.j_values[a], static_cast<double>(report.n[k]),
                              report.radii[a][k], report.target[k]});
          }
        }
        output.emit(t, io::convergence_json(report));
      }
    } else if (*val) {
      std::ifstream f(in_path, std::ios::binary);
      if (!f) throw ValidationError("cannot open " + in_path);
      const auto table = io::read_csv(f);
      const auto& known = io::known_headers();
      if (std::find(known.begin(), known.end(), table.header) == known.end()) {
        throw ValidationError("unrecognized CSV header in " + in_path);
      }
      if (output.to_file()) output.emit(table, table_json(table));
      output.summary() << "rows " << table.rows.size() << "\n";
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
