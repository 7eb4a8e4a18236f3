#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace gofpower {

struct QuadratureConfig {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  /// Bisections allowed per integration window.
  int max_subdivisions = 200;
  /// Largest stability bound for which the shifted contour is used.
  double stability_threshold = 1e8;

  void validate() const;
};

/// 21-point Kronrod estimate and its embedded 10-point Gauss estimate.
struct PanelEstimate {
  double kronrod = 0.0;
  double gauss = 0.0;
};

using Integrand = std::function<double(double)>;

PanelEstimate gauss_kronrod_21(const Integrand& f, double a, double b);

struct IntegrationOptions {
  /// Upper limit Y0 of the first window (0, Y0].
  double initial_window = 10.0;
  /// When positive the integrand is taken to oscillate with this period at
  /// large y: Y0 is rounded up to a multiple of it, the tail is walked in
  /// half-period cycles instead of doubling windows, and Wynn extrapolation
  /// over the cycle partial sums becomes an extra stopping rule.
  double alignment_period = 0.0;
  /// Doubling windows; an oscillatory tail may use 25 times as many cycles.
  int max_windows = 40;
  /// When in (0, Y0), the first window starts out split at s, 4s, 16s, ...
  /// so features near y = 0 narrower than one panel are not missed.
  double feature_scale = 0.0;
};

struct IntegrationResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t nodes = 0;
  int windows = 0;
  bool budget_exhausted = false;
  bool extrapolated = false;
};

/// Integral of f over (0, inf).
///
/// The window (0, Y0] is integrated by global adaptive bisection of the
/// worst panel until the summed |K21 - G10| error meets
/// max(abs_tol, rel_tol |I|). The upper limit then doubles, each new window
/// (Y, 2Y] integrated the same way, until one contributes less than
/// 0.1 abs_tol. `nodes` counts every evaluation of f.
IntegrationResult adaptive_integrate(const Integrand& f, const QuadratureConfig& cfg,
                                     const IntegrationOptions& options = {});

/// Adaptive integral over the finite interval [a, b].
IntegrationResult adaptive_integrate_finite(const Integrand& f, double a, double b,
                                            double tolerance_abs, double tolerance_rel,
                                            int max_subdivisions,
                                            const std::vector<double>& breakpoints = {});

/// Wynn epsilon extrapolation of a sequence of partial sums; returns the
/// highest-order even-column estimate.
double wynn_epsilon(const std::vector<double>& partial_sums);

}  // namespace gofpower
