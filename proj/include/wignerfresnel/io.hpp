#pragma once

// CSV and JSON forms of every table the library produces.  CSV: header row,
// comma separated, LF endings, floats with 17 significant digits.  JSON:
// one top-level object with a fixed key order.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wignerfresnel/fresnel.hpp"
#include "wignerfresnel/semiclassics.hpp"
#include "wignerfresnel/spinmap.hpp"
#include "wignerfresnel/wigner.hpp"

namespace wf::io {

using Json = nlohmann::ordered_json;

std::string format_double(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// Rejects ragged rows and fields that are not complete numbers.
CsvTable read_csv(std::istream& in);
void write_csv(std::ostream& out, const CsvTable& table);

// Column sets of the tables written below, for validation of re-read files.
const std::vector<std::vector<std::string>>& known_headers();

CsvTable wigner_table(const wigner::WignerField& field);
Json wigner_json(const wigner::WignerField& field);

CsvTable comparison_table(const semiclassics::PoissonComparison& report);
Json comparison_json(const semiclassics::PoissonComparison& report);

// Rows n, rho, re_Un, im_Un, abs_Un, phase_Un for zones 0..count-1; rho is
// the outer boundary radius of each zone.
CsvTable zone_table(const fresnel::FresnelGeometry& geom, int count, int order);

Json complex_json(std::complex<double> z);
Json geometry_json(const fresnel::FresnelGeometry& geom);

CsvTable belt_table(const spinmap::SpinSphere& sphere);
CsvTable band_table(const spinmap::SpinSphere& sphere);
CsvTable area_table(const spinmap::SpinSphere& sphere);
Json convergence_json(const spinmap::ConvergenceReport& report);

}  // namespace wf::io
