#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "gofpower/model.hpp"
#include "gofpower/spectrum.hpp"

namespace gofpower {

/// A model plus the perturbation that came with it, if the source had one
/// (model files carry "a"; `example:K` carries the example's perturbation).
struct ModelSource {
  ProbabilityModel model;
  std::optional<Perturbation> perturbation;
  std::string description;
};

/// Accepts `uniform:M`, `poisson:LAMBDA[:TOL]` (TOL defaults to 1e-10),
/// `example:K` for K in 1..4, `file:PATH`, or a bare path ending in `.json`.
ModelSource parse_model_spec(std::string_view spec);

/// Accepts `zero`, `alternating:AMP`, `file:PATH`, or an empty string, which
/// selects the source's own perturbation (zero when it has none).
Perturbation parse_perturbation_spec(std::string_view spec, const ModelSource& source);

/// Reads `{"p0": [...], "a": [...]}`; "a" is optional, arrays must match.
ModelSource read_model_json(std::istream& in, std::string_view origin = "<stream>");
ModelSource load_model_file(const std::string& path);

/// `{"sigma2": [...], "zeta": [...], "stability_rhs": r}`; an overflowed
/// stability bound is written as the string "inf".
std::string spectrum_to_json(const Spectrum& spectrum);

/// Strict decimal parsing: the whole token must be consumed.
double parse_real(std::string_view token, std::string_view field);
std::size_t parse_count(std::string_view token, std::string_view field);

}  // namespace gofpower
