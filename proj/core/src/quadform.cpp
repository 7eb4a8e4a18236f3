#include "gofpower/quadform.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "gofpower/error.hpp"

namespace gofpower {

namespace {

using cplx = std::complex<double>;

// Terms with (numerically) equal sigma^2 contribute identical w_k, so they
// are merged: multiplicity m contributes m/2 * Log w and the zeta^2 add.
struct Term {
  double sigma2;
  double multiplicity;
  double zeta2;
};

std::vector<Term> ungrouped_terms(const Spectrum& spectrum) {
  std::vector<Term> terms;
  terms.reserve(spectrum.ell());
  for (std::size_t k = 0; k < spectrum.ell(); ++k) {
    terms.push_back({spectrum.sigma2(k), 1.0, spectrum.zeta()[k] * spectrum.zeta()[k]});
  }
  return terms;
}

std::vector<Term> grouped_terms(const Spectrum& spectrum) {
  constexpr double kSameSigma = 1e-13;
  std::vector<Term> terms;
  for (const Term& t : ungrouped_terms(spectrum)) {
    // sigma is sorted, so equal values are adjacent.
    if (!terms.empty() &&
        std::abs(terms.back().sigma2 - t.sigma2) <= kSameSigma * terms.back().sigma2) {
      terms.back().multiplicity += 1.0;
      terms.back().zeta2 += t.zeta2;
    } else {
      terms.push_back(t);
    }
  }
  return terms;
}

class ShiftedContourIntegrand {
 public:
  ShiftedContourIntegrand(double x, const Spectrum& spectrum, std::vector<Term> terms)
      : x_(x),
        ell_(static_cast<double>(spectrum.ell())),
        root_ell_(std::sqrt(ell_)),
        pole_(1.0 / cplx(1.0, -root_ell_)),
        terms_(std::move(terms)) {}

  ShiftedContourTerms evaluate(double y) const {
    ShiftedContourTerms out;
    cplx exponent(1.0 - y, y * root_ell_);
    double log_root_modulus = 0.0;
    double numerator_log = 0.0;
    for (const Term& t : terms_) {
      const double r = 2.0 * t.sigma2 / x_;
      const cplx one_minus_w(r * (y - 1.0), -r * y * root_ell_);
      const cplx w = 1.0 - one_minus_w;
      const cplx ratio = one_minus_w / w;
      const cplx log_w = std::log(w);
      const cplx shift = 0.5 * t.zeta2 * ratio;
      exponent += shift - 0.5 * t.multiplicity * log_w;
      log_root_modulus += 0.5 * t.multiplicity * log_w.real();
      numerator_log += shift.real();
      out.max_ratio_modulus = std::max(out.max_ratio_modulus, std::abs(ratio));
    }
    out.root_product_modulus = std::exp(log_root_modulus);
    out.numerator_modulus = std::exp(numerator_log);
    const cplx numer = std::polar(std::exp(exponent.real()), exponent.imag());
    out.value = (numer / (std::numbers::pi * (y - pole_))).imag();
    return out;
  }

  double operator()(double y) const {
    const ShiftedContourTerms t = evaluate(y);
    assert(t.root_product_modulus > std::exp(-0.25) * (1.0 - 1e-12));
    assert(t.max_ratio_modulus <= std::sqrt(1.0 + 1.0 / ell_) * (1.0 + 1e-12));
    return t.value;
  }

 private:
  double x_;
  double ell_;
  double root_ell_;
  cplx pole_;
  std::vector<Term> terms_;
};

class ImhofIntegrand {
 public:
  ImhofIntegrand(double x, std::vector<Term> terms) : x_(x), terms_(std::move(terms)) {}

  ImhofTerms evaluate(double y) const {
    ImhofTerms out;
    double log_modulus = 0.0;
    double phase = -y;
    for (const Term& t : terms_) {
      const double s = 2.0 * t.sigma2 * y / x_;
      const double s2 = s * s;
      const double denom = 2.0 * (1.0 + s2);
      // zeta^2 (1 - v) / (2 v) with v = 1 - i s, and -1/2 Log v, split into
      // real and imaginary parts.
      const double decay = -t.zeta2 * s2 / denom;
      log_modulus += decay - 0.25 * t.multiplicity * std::log1p(s2);
      phase += t.zeta2 * s / denom + 0.5 * t.multiplicity * std::atan(s);
      out.max_exponential_modulus =
          std::max(out.max_exponential_modulus, std::exp(decay));
    }
    out.value = std::exp(log_modulus) * std::sin(phase) / (std::numbers::pi * y);
    return out;
  }

  double operator()(double y) const {
    const ImhofTerms t = evaluate(y);
    assert(t.max_exponential_modulus <= 1.0);
    return t.value;
  }

 private:
  double x_;
  std::vector<Term> terms_;
};

void require_positive_x(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw PreconditionError("integrand evaluation needs a positive finite x");
  }
}

}  // namespace

std::string_view to_string(CdfMethod method) noexcept {
  switch (method) {
    case CdfMethod::ShiftedContour:
      return "ShiftedContour";
    case CdfMethod::Imhof:
      return "Imhof";
  }
  return "unknown";
}

ShiftedContourTerms shifted_contour_terms(double y, double x, const Spectrum& spectrum) {
  require_positive_x(x);
  return ShiftedContourIntegrand(x, spectrum, ungrouped_terms(spectrum)).evaluate(y);
}

ImhofTerms imhof_terms(double y, double x, const Spectrum& spectrum) {
  require_positive_x(x);
  return ImhofIntegrand(x, ungrouped_terms(spectrum)).evaluate(y);
}

double integrand_shifted(double y, double x, const Spectrum& spectrum) {
  return shifted_contour_terms(y, x, spectrum).value;
}

double integrand_imhof(double y, double x, const Spectrum& spectrum) {
  return imhof_terms(y, x, spectrum).value;
}

double stability_rhs(const Spectrum& spectrum) {
  return detail::stability_from_zeta(spectrum.zeta()).value;
}

CdfMethod select_method(const Spectrum& spectrum, const QuadratureConfig& cfg) {
  if (spectrum.stability_overflow() || spectrum.stability_rhs() > cfg.stability_threshold) {
    return CdfMethod::Imhof;
  }
  return CdfMethod::ShiftedContour;
}

IntegrationOptions integration_options(CdfMethod method, std::size_t ell) {
  IntegrationOptions options;
  options.initial_window = 10.0 + std::sqrt(static_cast<double>(ell));
  if (method == CdfMethod::Imhof) options.alignment_period = 2.0 * std::numbers::pi;
  return options;
}

CdfEvaluation cdf_with_method(double x, const Spectrum& spectrum, CdfMethod method,
                              const QuadratureConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(x)) throw PreconditionError("cdf: x must be finite");
  CdfEvaluation out;
  out.method = method;
  if (x <= 0.0) return out;

  IntegrationOptions options = integration_options(method, spectrum.ell());
  IntegrationResult integral;
  if (method == CdfMethod::ShiftedContour) {
    const ShiftedContourIntegrand f(x, spectrum, grouped_terms(spectrum));
    integral = adaptive_integrate(std::cref(f), cfg, options);
    out.raw_value = integral.value;
  } else {
    // Phase and modulus first change on the scale x / sum sigma^2 (1 + zeta^2).
    options.feature_scale = x / (2.0 * spectrum.mean());
    const ImhofIntegrand f(x, grouped_terms(spectrum));
    integral = adaptive_integrate(std::cref(f), cfg, options);
    out.raw_value = 0.5 - integral.value;
  }
  out.abs_error_estimate = integral.error;
  out.nodes_used = integral.nodes;
  out.budget_exhausted = integral.budget_exhausted;
  out.value = std::clamp(out.raw_value, 0.0, 1.0);
  return out;
}

CdfEvaluation cdf(double x, const Spectrum& spectrum, const QuadratureConfig& cfg) {
  return cdf_with_method(x, spectrum, select_method(spectrum, cfg), cfg);
}

}  // namespace gofpower
