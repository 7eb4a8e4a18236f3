#include "gofpower/model_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "gofpower/error.hpp"

namespace gofpower {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// 1-based line and column of a byte offset, for parse diagnostics.
std::string position_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::vector<double> real_array(const nlohmann::json& doc, const char* key,
                               std::string_view origin) {
  const auto& node = doc.at(key);
  if (!node.is_array()) {
    throw ParseError(std::string(origin) + ": field \"" + key + "\" must be an array", key);
  }
  std::vector<double> out;
  out.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (!node[i].is_number()) {
      throw ParseError(std::string(origin) + ": field \"" + key + "\" entry " +
                           std::to_string(i + 1) + " is not a number",
                       key);
    }
    out.push_back(node[i].get<double>());
  }
  return out;
}

}  // namespace

double parse_real(std::string_view token, std::string_view field) {
  const std::string text(token);
  if (text.empty()) throw ParseError("missing value for " + std::string(field), std::string(field));
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ParseError("cannot parse \"" + text + "\" as a real number for " + std::string(field),
                     std::string(field));
  }
  return v;
}

std::size_t parse_count(std::string_view token, std::string_view field) {
  const double v = parse_real(token, field);
  if (v < 0.0 || v != std::floor(v) || v > 1e15) {
    throw ParseError("\"" + std::string(token) + "\" is not a nonnegative integer for " +
                         std::string(field),
                     std::string(field));
  }
  return static_cast<std::size_t>(v);
}

ModelSource read_model_json(std::istream& in, std::string_view origin) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string(origin) + ": malformed JSON at " + position_of(text, e.byte) +
                     ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError(std::string(origin) + ": top level must be an object");
  if (!doc.contains("p0")) throw ParseError(std::string(origin) + ": missing field \"p0\"", "p0");

  auto p0 = real_array(doc, "p0", origin);
  std::optional<std::vector<double>> a;
  if (doc.contains("a")) {
    a = real_array(doc, "a", origin);
    if (a->size() != p0.size()) {
      throw ParseError(std::string(origin) + ": \"a\" has " + std::to_string(a->size()) +
                           " entries but \"p0\" has " + std::to_string(p0.size()),
                       "a");
    }
  }
  ModelSource source{ProbabilityModel::from_probabilities(std::move(p0)), std::nullopt,
                     std::string(origin)};
  if (a) source.perturbation = Perturbation::from_entries(std::move(*a));
  return source;
}

ModelSource load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file " + path, "file");
  return read_model_json(in, path);
}

ModelSource parse_model_spec(std::string_view spec) {
  const auto parts = split(spec, ':');
  const std::string_view kind = parts.front();
  if (kind == "uniform") {
    if (parts.size() != 2) throw ParseError("expected uniform:M", "model");
    const std::size_t m = parse_count(parts[1], "uniform:M");
    return {uniform_model(m), std::nullopt, std::string(spec)};
  }
  if (kind == "poisson") {
    if (parts.size() < 2 || parts.size() > 3) {
      throw ParseError("expected poisson:LAMBDA[:TOL]", "model");
    }
    const double lambda = parse_real(parts[1], "poisson:LAMBDA");
    const double tol = parts.size() == 3 ? parse_real(parts[2], "poisson:TOL") : 1e-10;
    return {poisson_model(lambda, tol), std::nullopt, std::string(spec)};
  }
  if (kind == "example") {
    if (parts.size() != 2) throw ParseError("expected example:K", "model");
    const std::size_t id = parse_count(parts[1], "example:K");
    if (id < 1 || id > 4) throw ParseError("example id must be 1..4", "model");
    auto ex = reference_example(static_cast<int>(id));
    return {std::move(ex.model), std::move(ex.perturbation), ex.label};
  }
  if (kind == "file") {
    if (parts.size() < 2) throw ParseError("expected file:PATH", "model");
    return load_model_file(std::string(spec.substr(5)));
  }
  if (ends_with(spec, ".json")) return load_model_file(std::string(spec));
  throw ParseError("unknown model builder \"" + std::string(spec) +
                       "\" (expected uniform:M, poisson:LAMBDA[:TOL], example:K, file:PATH)",
                   "model");
}

Perturbation parse_perturbation_spec(std::string_view spec, const ModelSource& source) {
  const std::size_t m = source.model.size();
  if (spec.empty()) return source.perturbation ? *source.perturbation : Perturbation::zero(m);
  const auto parts = split(spec, ':');
  const std::string_view kind = parts.front();
  if (kind == "zero" && parts.size() == 1) return Perturbation::zero(m);
  if (kind == "alternating") {
    if (parts.size() != 2) throw ParseError("expected alternating:AMP", "pert");
    return alternating_perturbation(m, parse_real(parts[1], "alternating:AMP"));
  }
  if (kind == "file" || ends_with(spec, ".json")) {
    const std::string path = kind == "file" ? std::string(spec.substr(5)) : std::string(spec);
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open perturbation file " + path, "pert");
    std::stringstream buffer;
    buffer << in.rdbuf();
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(path + ": malformed JSON at " + position_of(buffer.str(), e.byte) + ": " +
                       e.what());
    }
    if (!doc.is_object() || !doc.contains("a")) {
      throw ParseError(path + ": missing field \"a\"", "a");
    }
    auto a = real_array(doc, "a", path);
    if (a.size() != m) {
      throw ParseError(path + ": \"a\" has " + std::to_string(a.size()) +
                           " entries but the model has " + std::to_string(m) + " bins",
                       "a");
    }
    return Perturbation::from_entries(std::move(a));
  }
  throw ParseError("unknown perturbation builder \"" + std::string(spec) +
                       "\" (expected zero, alternating:AMP, file:PATH)",
                   "pert");
}

std::string spectrum_to_json(const Spectrum& spectrum) {
  nlohmann::json doc;
  std::vector<double> sigma2(spectrum.ell());
  for (std::size_t k = 0; k < spectrum.ell(); ++k) sigma2[k] = spectrum.sigma2(k);
  doc["sigma2"] = sigma2;
  doc["zeta"] = std::vector<double>(spectrum.zeta().begin(), spectrum.zeta().end());
  if (spectrum.stability_overflow()) {
    doc["stability_rhs"] = "inf";
  } else {
    doc["stability_rhs"] = spectrum.stability_rhs();
  }
  return doc.dump(2);
}

}  // namespace gofpower
