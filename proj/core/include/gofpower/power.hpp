#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "gofpower/model.hpp"
#include "gofpower/quadform.hpp"
#include "gofpower/spectrum.hpp"

namespace gofpower {

struct PowerPoint {
  double x = 0.0;
  double f0 = 0.0;
  double fa = 0.0;
  /// 1 - F0(x)
  double alpha = 0.0;
  /// 1 - Fa(x)
  double power = 0.0;
};

/// Asymptotic power curve traced as (1 - F0(x), 1 - Fa(x)) over a grid of x.
struct PowerCurve {
  std::vector<PowerPoint> points;
  /// Largest quadrature node counts over the grid (the q0 / qa cost figures).
  std::size_t max_nodes_null = 0;
  std::size_t max_nodes_alt = 0;
  CdfMethod null_method = CdfMethod::ShiftedContour;
  CdfMethod alt_method = CdfMethod::ShiftedContour;
  /// Grid points whose quadrature ran out of budget.
  std::size_t budget_warnings = 0;
  double largest_error_estimate = 0.0;
  double seconds = 0.0;
};

/// 1 - F0(x), clamped to [0, 1].
double pvalue(double x_statistic, const Spectrum& null_spectrum, const QuadratureConfig& cfg = {});

/// x = step, 2 step, ..., up to and including `max` (default k / 2000 for
/// k = 1..10000).
std::vector<double> default_grid(double step = 1.0 / 2000.0, double max = 5.0);

PowerCurve power_curve(const SpectrumPair& spectra, std::span<const double> grid,
                       const QuadratureConfig& cfg = {}, unsigned threads = 1);

PowerCurve power_curve(const ProbabilityModel& model, const Perturbation& perturbation,
                       std::span<const double> grid, const QuadratureConfig& cfg = {},
                       unsigned threads = 1);

/// Power at a single significance level: x* solves 1 - F0(x*) = alpha by
/// bisection, result is 1 - Fa(x*).
double power_at(double alpha, const SpectrumPair& spectra, const QuadratureConfig& cfg = {});
double power_at(double alpha, const ProbabilityModel& model, const Perturbation& perturbation,
                const QuadratureConfig& cfg = {});

/// Critical value x* with F0(x*) = 1 - alpha to within 1e-8 in probability.
double critical_value(double alpha, const Spectrum& null_spectrum,
                      const QuadratureConfig& cfg = {});

/// CSV with header `x,F0,Fa,alpha,power`, 17 significant digits.
void write_power_csv(std::ostream& out, const PowerCurve& curve);

}  // namespace gofpower
