#pragma once

#include <cstddef>
#include <string_view>

#include "gofpower/quadrature.hpp"
#include "gofpower/spectrum.hpp"

namespace gofpower {

enum class CdfMethod { ShiftedContour, Imhof };

std::string_view to_string(CdfMethod method) noexcept;

struct CdfEvaluation {
  /// F(x), clamped to [0, 1].
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t nodes_used = 0;
  CdfMethod method = CdfMethod::ShiftedContour;
  /// Set when a subdivision or window budget ran out; value is best effort.
  bool budget_exhausted = false;
  /// Value before clamping.
  double raw_value = 0.0;
};

/// Everything the shifted-contour integrand computes at one node, including
/// the moduli the a-priori stability bounds talk about.
struct ShiftedContourTerms {
  double value = 0.0;
  /// |prod_k sqrt(w_k)|; bounded below by e^{-1/4}.
  double root_product_modulus = 0.0;
  /// max_k |(1 - w_k) / w_k|; bounded above by sqrt(1 + 1/l).
  double max_ratio_modulus = 0.0;
  /// |prod_k exp(zeta_k^2 (1 - w_k) / (2 w_k))|; bounded by stability_rhs.
  double numerator_modulus = 0.0;
};

struct ImhofTerms {
  double value = 0.0;
  /// max_k |exp(zeta_k^2 (1 - v_k) / (2 v_k))|; never above 1.
  double max_exponential_modulus = 0.0;
};

ShiftedContourTerms shifted_contour_terms(double y, double x, const Spectrum& spectrum);
ImhofTerms imhof_terms(double y, double x, const Spectrum& spectrum);

/// Integrand of the shifted-contour representation; F(x) is its integral
/// over y in (0, inf).
double integrand_shifted(double y, double x, const Spectrum& spectrum);

/// Integrand of the real-axis (Imhof) representation; F(x) = 1/2 minus its
/// integral over y in (0, inf).
double integrand_imhof(double y, double x, const Spectrum& spectrum);

/// prod_k exp(zeta_k^2 sqrt(1 + 1/l) / 2), evaluated as one exponential of
/// the summed exponent. +inf when that exponent exceeds 700.
double stability_rhs(const Spectrum& spectrum);

/// Shifted contour unless the stability bound exceeds the configured
/// threshold (or overflowed), in which case Imhof.
CdfMethod select_method(const Spectrum& spectrum, const QuadratureConfig& cfg);

/// CDF of X = sum_k sigma_k^2 (Z_k + zeta_k)^2 at x with automatic method
/// selection.
CdfEvaluation cdf(double x, const Spectrum& spectrum, const QuadratureConfig& cfg = {});

/// Same, with the representation forced.
CdfEvaluation cdf_with_method(double x, const Spectrum& spectrum, CdfMethod method,
                              const QuadratureConfig& cfg = {});

/// Initial integration window for a given method and number of terms.
IntegrationOptions integration_options(CdfMethod method, std::size_t ell);

}  // namespace gofpower
