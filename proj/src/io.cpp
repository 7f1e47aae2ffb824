#include "wignerfresnel/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace wf::io {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_field(const std::string& text, std::size_t line_no) {
  if (text.empty()) {
    throw ValidationError("empty field on line " + std::to_string(line_no));
  }
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || (errno == ERANGE && std::isinf(value))) {
    throw ValidationError("field '" + text + "' on line " +
                          std::to_string(line_no) + " is not a number");
  }
  return value;
}

Json number_or_null(double x) {
  return std::isfinite(x) ? Json(x) : Json(nullptr);
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("CSV input is empty");
  if (!line.empty() && line.back() == '\r') {
    throw ValidationError("CSV must use LF line endings");
  }
  table.header = split(line, ',');
  if (table.header.empty()) throw ValidationError("CSV header is empty");
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) throw ValidationError("blank line " + std::to_string(line_no));
    const auto fields = split(line, ',');
    if (fields.size() != table.header.size()) {
      throw ValidationError("line " + std::to_string(line_no) + " has " +
                            std::to_string(fields.size()) + " fields, header has " +
                            std::to_string(table.header.size()));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_field(f, line_no));
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_csv(std::ostream& out, const CsvTable& table) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out << ',';
    out << table.header[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
}

const std::vector<std::vector<std::string>>& known_headers() {
  static const std::vector<std::vector<std::string>> headers = {
      {"u", "v", "w"},
      {"n", "p_overlap", "p_poisson"},
      {"n", "rho", "re_Un", "im_Un", "abs_Un", "phase_Un"},
      {"re_U", "im_U", "abs_U", "phase_U", "abs_over_free"},
      {"n", "m", "z_lo", "z_hi", "area"},
      {"n", "m", "rho_lo", "rho_hi", "area"},
      {"n", "m", "area", "area_over_2pi"},
      {"J", "n", "rho", "target"},
  };
  return headers;
}

CsvTable wigner_table(const wigner::WignerField& field) {
  CsvTable t{{"u", "v", "w"}, {}};
  const auto& g = field.grid();
  t.rows.reserve(field.values().size());
  for (int i = 0; i < g.n_u; ++i) {
    for (int j = 0; j < g.n_v; ++j) t.rows.push_back({g.u(i), g.v(j), field.value(i, j)});
  }
  return t;
}

Json wigner_json(const wigner::WignerField& field) {
  const auto& g = field.grid();
  Json j;
  j["grid"] = {{"u_min", g.u_min}, {"u_max", g.u_max}, {"n_u", g.n_u},
               {"v_min", g.v_min}, {"v_max", g.v_max}, {"n_v", g.n_v}};
  Json rows = Json::array();
  for (int i = 0; i < g.n_u; ++i) {
    Json row = Json::array();
    for (int k = 0; k < g.n_v; ++k) row.push_back(field.value(i, k));
    rows.push_back(std::move(row));
  }
  j["values"] = std::move(rows);
  return j;
}

CsvTable comparison_table(const semiclassics::PoissonComparison& report) {
  CsvTable t{{"n", "p_overlap", "p_poisson"}, {}};
  for (std::size_t n = 0; n < report.p_overlap.size(); ++n) {
    t.rows.push_back({static_cast<double>(n), report.p_overlap[n], report.p_poisson[n]});
  }
  return t;
}

Json comparison_json(const semiclassics::PoissonComparison& report) {
  Json j;
  j["beta"] = report.beta;
  j["overlap_mean"] = report.overlap_mean;
  j["poisson_mean"] = report.poisson_mean;
  j["overlap_variance"] = report.overlap_variance;
  j["poisson_variance"] = report.poisson_variance;
  j["tv_distance"] = report.tv_distance;
  Json table = Json::array();
  for (std::size_t n = 0; n < report.p_overlap.size(); ++n) {
    table.push_back({{"n", n},
                     {"p_overlap", report.p_overlap[n]},
                     {"p_poisson", report.p_poisson[n]}});
  }
  j["table"] = std::move(table);
  return j;
}

CsvTable zone_table(const fresnel::FresnelGeometry& geom, int count, int order) {
  CsvTable t{{"n", "rho", "re_Un", "im_Un", "abs_Un", "phase_Un"}, {}};
  const auto u = fresnel::zone_contributions(geom, count, order);
  for (int n = 0; n < count; ++n) {
    const auto z = u[static_cast<std::size_t>(n)];
    t.rows.push_back({static_cast<double>(n), fresnel::zone_radius(geom, n + 1),
                      z.real(), z.imag(), std::abs(z), std::arg(z)});
  }
  return t;
}

Json complex_json(std::complex<double> z) {
  return {{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}, {"phase", std::arg(z)}};
}

Json geometry_json(const fresnel::FresnelGeometry& geom) {
  return {{"r0", geom.r0}, {"b", geom.b}, {"lambda", geom.lambda}, {"amplitude", geom.amplitude}};
}

CsvTable belt_table(const spinmap::SpinSphere& sphere) {
  CsvTable t{{"n", "m", "z_lo", "z_hi", "area"}, {}};
  for (const auto& b : spinmap::belts(sphere)) {
    t.rows.push_back({static_cast<double>(b.n), b.m(), b.z_lo, b.z_hi,
                      spinmap::belt_area(sphere, b.m())});
  }
  return t;
}

CsvTable band_table(const spinmap::SpinSphere& sphere) {
  CsvTable t{{"n", "m", "rho_lo", "rho_hi", "area"}, {}};
  for (int n = 0; n < sphere.belt_count(); ++n) {
    const auto band = spinmap::projected_band(sphere, n);
    const double area = band.open_ended
                            ? std::numeric_limits<double>::infinity()
                            : spinmap::projected_band_area(sphere, n);
    t.rows.push_back({static_cast<double>(n), 0.5 * band.two_m, band.rho_lo,
                      band.rho_hi, area});
  }
  return t;
}

CsvTable area_table(const spinmap::SpinSphere& sphere) {
  CsvTable t{{"n", "m", "area", "area_over_2pi"}, {}};
  for (int n = 0; n < sphere.belt_count(); ++n) {
    const auto band = spinmap::projected_band(sphere, n);
    const double area = band.open_ended
                            ? std::numeric_limits<double>::infinity()
                            : spinmap::projected_band_area(sphere, n);
    t.rows.push_back({static_cast<double>(n), 0.5 * band.two_m, area,
                      area / (2.0 * std::numbers::pi)});
  }
  return t;
}

Json convergence_json(const spinmap::ConvergenceReport& report) {
  Json j;
  j["J_values"] = report.j_values;
  j["n"] = report.n;
  Json radii = Json::array();
  for (const auto& r : report.radii) radii.push_back(r);
  j["radii"] = std::move(radii);
  j["target"] = report.target;
  Json errs = Json::array();
  for (double e : report.max_relative_error) errs.push_back(number_or_null(e));
  j["max_relative_error"] = std::move(errs);
  return j;
}

}  // namespace wf::io
