#include "gofpower/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "gofpower/error.hpp"

namespace gofpower {

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !(stability_threshold > 0.0) ||
      max_subdivisions < 1) {
    std::ostringstream os;
    os << "quadrature config: tolerances and threshold must be positive and "
          "max_subdivisions >= 1 (abs_tol="
       << abs_tol << ", rel_tol=" << rel_tol << ", max_subdivisions=" << max_subdivisions
       << ", stability_threshold=" << stability_threshold << ')';
    throw PreconditionError(os.str());
  }
}

namespace {

// QUADPACK qk21: Kronrod abscissae; odd entries are the 10-point Gauss nodes.
constexpr std::array<double, 11> kNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};

constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208745310625, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr std::size_t kRuleNodes = 21;

double checked(const Integrand& f, double y) {
  const double v = f(y);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os.precision(17);
    os << "integrand is not finite at y = " << y;
    throw NumericalError(os.str(), y);
  }
  return v;
}

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

struct WorseFirst {
  bool operator()(const Panel& l, const Panel& r) const { return l.error < r.error; }
};

Panel make_panel(const Integrand& f, double a, double b) {
  const PanelEstimate est = gauss_kronrod_21(f, a, b);
  return {a, b, est.kronrod, std::abs(est.kronrod - est.gauss)};
}

}  // namespace

PanelEstimate gauss_kronrod_21(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(f, center);
  double kronrod = fc * kKronrodWeights[10];
  double gauss = 0.0;
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kNodes[j];
    const double pair = checked(f, center - dx) + checked(f, center + dx);
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  return {kronrod * half, gauss * half};
}

IntegrationResult adaptive_integrate_finite(const Integrand& f, double a, double b,
                                            double tolerance_abs, double tolerance_rel,
                                            int max_subdivisions,
                                            const std::vector<double>& breakpoints) {
  IntegrationResult out;
  std::vector<Panel> panels;
  double left = a;
  for (double cut : breakpoints) {
    if (cut <= left || cut >= b) continue;
    panels.push_back(make_panel(f, left, cut));
    left = cut;
  }
  panels.push_back(make_panel(f, left, b));
  std::make_heap(panels.begin(), panels.end(), WorseFirst{});
  out.nodes = kRuleNodes * panels.size();

  int subdivisions = 0;
  for (;;) {
    double value = 0.0;
    double error = 0.0;
    for (const Panel& p : panels) {
      value += p.value;
      error += p.error;
    }
    out.value = value;
    out.error = error;
    if (error <= std::max(tolerance_abs, tolerance_rel * std::abs(value))) break;
    if (subdivisions >= max_subdivisions) {
      out.budget_exhausted = true;
      break;
    }
    std::pop_heap(panels.begin(), panels.end(), WorseFirst{});
    const Panel worst = panels.back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel is at the resolution limit of double precision.
      std::push_heap(panels.begin(), panels.end(), WorseFirst{});
      out.budget_exhausted = true;
      break;
    }
    panels.back() = make_panel(f, worst.a, mid);
    std::push_heap(panels.begin(), panels.end(), WorseFirst{});
    panels.push_back(make_panel(f, mid, worst.b));
    std::push_heap(panels.begin(), panels.end(), WorseFirst{});
    out.nodes += 2 * kRuleNodes;
    ++subdivisions;
  }
  out.windows = 1;
  return out;
}

double wynn_epsilon(const std::vector<double>& partial_sums) {
  const std::size_t n = partial_sums.size();
  if (n == 0) return 0.0;
  // prev holds column k-1, cur column k; column index k increases left to right.
  std::vector<double> prev(n + 1, 0.0);
  std::vector<double> cur(partial_sums.begin(), partial_sums.end());
  double best = partial_sums.back();
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> next(n - k);
    for (std::size_t i = 0; i + k < n; ++i) {
      const double diff = cur[i + 1] - cur[i];
      if (diff == 0.0 || !std::isfinite(diff)) return best;
      next[i] = prev[i + 1] + 1.0 / diff;
    }
    prev = std::move(cur);
    cur = std::move(next);
    if (k % 2 == 0) best = cur.back();
  }
  return best;
}

IntegrationResult adaptive_integrate(const Integrand& f, const QuadratureConfig& cfg,
                                     const IntegrationOptions& options) {
  cfg.validate();
  double upper = options.initial_window;
  if (options.alignment_period > 0.0) {
    upper = options.alignment_period * std::ceil(upper / options.alignment_period);
  }
  std::vector<double> breakpoints;
  if (options.feature_scale > 0.0) {
    for (double cut = options.feature_scale; cut < upper; cut *= 4.0) breakpoints.push_back(cut);
  }
  IntegrationResult out = adaptive_integrate_finite(f, 0.0, upper, cfg.abs_tol, cfg.rel_tol,
                                                    cfg.max_subdivisions, breakpoints);

  const double tail_target = 0.1 * cfg.abs_tol;
  bool converged = false;
  auto absorb = [&](const IntegrationResult& piece) {
    out.value += piece.value;
    out.error += piece.error;
    out.nodes += piece.nodes;
    out.windows += 1;
    out.budget_exhausted = out.budget_exhausted || piece.budget_exhausted;
  };

  if (options.alignment_period <= 0.0) {
    for (int w = 0; w < options.max_windows; ++w) {
      const double window_tol = 0.1 * std::max(cfg.abs_tol, cfg.rel_tol * std::abs(out.value));
      const IntegrationResult win = adaptive_integrate_finite(
          f, upper, 2.0 * upper, window_tol, 0.0, cfg.max_subdivisions);
      absorb(win);
      upper *= 2.0;
      if (std::abs(win.value) + win.error < tail_target) {
        converged = true;
        break;
      }
    }
  } else {
    // Oscillatory tail: half-period cycles give a roughly alternating series
    // whose partial sums Wynn's epsilon can sum long before the cycles
    // themselves become negligible.
    const double cycle = 0.5 * options.alignment_period;
    const int max_cycles = 25 * options.max_windows;
    constexpr std::size_t kTable = 24;
    std::vector<double> partial{out.value};
    double last_extrapolant = std::numeric_limits<double>::quiet_NaN();
    int agreements = 0;
    for (int c = 0; c < max_cycles; ++c) {
      const double window_tol = 0.1 * std::max(cfg.abs_tol, cfg.rel_tol * std::abs(out.value));
      const IntegrationResult piece = adaptive_integrate_finite(
          f, upper, upper + cycle, window_tol, 0.0, cfg.max_subdivisions);
      absorb(piece);
      upper += cycle;
      if (std::abs(piece.value) + piece.error < tail_target) {
        converged = true;
        break;
      }
      partial.push_back(out.value);
      if (partial.size() < 4) continue;
      const std::vector<double> recent(
          partial.end() - static_cast<std::ptrdiff_t>(std::min(partial.size(), kTable)), partial.end());
      const double ext = wynn_epsilon(recent);
      if (std::isfinite(ext) && std::isfinite(last_extrapolant) &&
          std::abs(ext - last_extrapolant) < tail_target) {
        if (++agreements >= 2) {
          out.error += std::abs(ext - last_extrapolant);
          out.value = ext;
          out.extrapolated = true;
          converged = true;
          break;
        }
      } else {
        agreements = 0;
      }
      last_extrapolant = ext;
    }
  }
  if (!converged) out.budget_exhausted = true;
  return out;
}

}  // namespace gofpower
