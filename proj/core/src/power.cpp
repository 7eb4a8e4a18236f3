#include "gofpower/power.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "gofpower/error.hpp"
#include "gofpower/parallel.hpp"

namespace gofpower {

double pvalue(double x_statistic, const Spectrum& null_spectrum, const QuadratureConfig& cfg) {
  if (!(x_statistic >= 0.0)) throw PreconditionError("pvalue: statistic must be nonnegative");
  return std::clamp(1.0 - cdf(x_statistic, null_spectrum, cfg).value, 0.0, 1.0);
}

std::vector<double> default_grid(double step, double max) {
  if (!(step > 0.0) || !(max >= step)) {
    throw PreconditionError("grid: step must be positive and no larger than the maximum");
  }
  const auto count = static_cast<std::size_t>(std::floor(max / step + 1e-9));
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) grid[k] = static_cast<double>(k + 1) * step;
  return grid;
}

PowerCurve power_curve(const SpectrumPair& spectra, std::span<const double> grid,
                       const QuadratureConfig& cfg, unsigned threads) {
  cfg.validate();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] > 0.0) || (k > 0 && !(grid[k] > grid[k - 1]))) {
      throw PreconditionError("power curve: grid must be positive and strictly increasing");
    }
  }
  const auto start = std::chrono::steady_clock::now();

  PowerCurve curve;
  curve.null_method = select_method(spectra.null, cfg);
  curve.alt_method = select_method(spectra.alternative, cfg);
  std::vector<CdfEvaluation> null_evals(grid.size());
  std::vector<CdfEvaluation> alt_evals(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t k) {
    null_evals[k] = cdf_with_method(grid[k], spectra.null, curve.null_method, cfg);
    alt_evals[k] = cdf_with_method(grid[k], spectra.alternative, curve.alt_method, cfg);
  });

  curve.points.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const CdfEvaluation& n = null_evals[k];
    const CdfEvaluation& a = alt_evals[k];
    curve.points[k] = {grid[k], n.value, a.value, 1.0 - n.value, 1.0 - a.value};
    curve.max_nodes_null = std::max(curve.max_nodes_null, n.nodes_used);
    curve.max_nodes_alt = std::max(curve.max_nodes_alt, a.nodes_used);
    if (n.budget_exhausted || a.budget_exhausted) ++curve.budget_warnings;
    curve.largest_error_estimate =
        std::max({curve.largest_error_estimate, n.abs_error_estimate, a.abs_error_estimate});
  }
  curve.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return curve;
}

PowerCurve power_curve(const ProbabilityModel& model, const Perturbation& perturbation,
                       std::span<const double> grid, const QuadratureConfig& cfg,
                       unsigned threads) {
  return power_curve(compute_spectrum_pair(model, perturbation), grid, cfg, threads);
}

double critical_value(double alpha, const Spectrum& null_spectrum, const QuadratureConfig& cfg) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw PreconditionError("significance level must lie in (0, 1)");
  }
  const double target = 1.0 - alpha;
  constexpr double kProbabilityTolerance = 1e-8;

  double lo = 0.0;
  double hi = std::max(null_spectrum.mean(), 1e-300);
  int doublings = 0;
  while (cdf(hi, null_spectrum, cfg).value <= target) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 200) throw Error("critical value: could not bracket the quantile");
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double f = cdf(mid, null_spectrum, cfg).value;
    if (std::abs(f - target) < kProbabilityTolerance) return mid;
    if (f < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
  }
  return 0.5 * (lo + hi);
}

double power_at(double alpha, const SpectrumPair& spectra, const QuadratureConfig& cfg) {
  const double x = critical_value(alpha, spectra.null, cfg);
  return std::clamp(1.0 - cdf(x, spectra.alternative, cfg).value, 0.0, 1.0);
}

double power_at(double alpha, const ProbabilityModel& model, const Perturbation& perturbation,
                const QuadratureConfig& cfg) {
  return power_at(alpha, compute_spectrum_pair(model, perturbation), cfg);
}

void write_power_csv(std::ostream& out, const PowerCurve& curve) {
  out << "x,F0,Fa,alpha,power\n";
  char line[160];
  for (const PowerPoint& p : curve.points) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g\n", p.x, p.f0, p.fa,
                  p.alpha, p.power);
    out << line;
  }
}

}  // namespace gofpower
