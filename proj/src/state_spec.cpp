#include "wignerfresnel/state_spec.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

namespace wf {

namespace {

double parse_number(std::string_view text, std::string_view what) {
  const std::string s(text);
  char* end = nullptr;
  const double value = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(value)) {
    throw ValidationError("bad " + std::string(what) + " '" + s + "' in state spec");
  }
  return value;
}

int parse_index(std::string_view text) {
  const double value = parse_number(text, "Fock index");
  if (value < 0 || value != std::floor(value) || value > 10000) {
    throw ValidationError("Fock index must be an integer in 0..10000");
  }
  return static_cast<int>(value);
}

fock::DensityMatrix parse_simple(std::string_view spec) {
  if (spec == "vacuum") return fock::DensityMatrix::number(0, fock::default_truncation(0, 0));
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ValidationError("unknown state spec '" + std::string(spec) + "'");
  }
  const auto kind = spec.substr(0, colon);
  const auto args = spec.substr(colon + 1);
  if (kind == "fock") {
    const int n = parse_index(args);
    return fock::DensityMatrix::number(
        n, fock::default_truncation(0, std::sqrt(static_cast<double>(n))));
  }
  if (kind == "coherent") {
    const auto comma = args.find(',');
    const double re = parse_number(args.substr(0, comma), "coherent amplitude");
    const double im = comma == std::string_view::npos
                          ? 0.0
                          : parse_number(args.substr(comma + 1), "coherent amplitude");
    const Complex beta(re, im);
    return fock::DensityMatrix::pure(fock::coherent_amplitudes(
        beta, fock::default_truncation(0, std::abs(beta))));
  }
  throw ValidationError("unknown state kind '" + std::string(kind) + "'");
}

}  // namespace

fock::DensityMatrix parse_state(std::string_view spec) {
  constexpr std::string_view kMixture = "mixture:";
  if (!spec.starts_with(kMixture)) return parse_simple(spec);

  std::vector<fock::DensityMatrix> parts;
  std::vector<double> weights;
  std::string_view rest = spec.substr(kMixture.size());
  while (true) {
    const auto semi = rest.find(';');
    const auto item = rest.substr(0, semi);
    const auto at = item.rfind('@');
    if (at == std::string_view::npos) {
      throw ValidationError("mixture component '" + std::string(item) +
                            "' lacks an @weight");
    }
    const auto component = item.substr(0, at);
    if (component.starts_with(kMixture)) {
      throw ValidationError("nested mixtures are not supported");
    }
    parts.push_back(parse_simple(component));
    weights.push_back(parse_number(item.substr(at + 1), "mixture weight"));
    if (semi == std::string_view::npos) break;
    rest = rest.substr(semi + 1);
  }
  return fock::DensityMatrix::mixture(parts, weights);
}

}  // namespace wf
