#pragma once

// Reference chi-square distribution functions for the test suites. These
// deliberately share no code with the library: series and continued-fraction
// evaluation of the regularized incomplete gamma function, and the Poisson
// mixture for the noncentral case.

#include <cmath>
#include <limits>
#include <stdexcept>

namespace oracle {

// P(a, x) by its power series; converges for all x, fast for x < a + 1.
inline double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 100000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-17) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a, x) by the modified Lentz continued fraction, for x >= a + 1.
inline double gamma_q_continued_fraction(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

// Regularized lower incomplete gamma P(a, x).
inline double gamma_p(double a, double x) {
  if (x <= 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_continued_fraction(a, x);
}

inline double chi_square_cdf(double dof, double x) {
  return x <= 0.0 ? 0.0 : gamma_p(0.5 * dof, 0.5 * x);
}

// Noncentral chi-square CDF with noncentrality lambda (= sum of squared
// means) as the Poisson(lambda / 2) mixture of central chi-squares.
inline double noncentral_chi_square_cdf(double dof, double lambda, double x) {
  if (x <= 0.0) return 0.0;
  const double half = 0.5 * lambda;
  if (half == 0.0) return chi_square_cdf(dof, x);
  double sum = 0.0;
  double weight_total = 0.0;
  for (int j = 0; j < 10000; ++j) {
    const double w = std::exp(-half + j * std::log(half) - std::lgamma(j + 1.0));
    sum += w * chi_square_cdf(dof + 2.0 * j, x);
    weight_total += w;
    if (j > half && 1.0 - weight_total < 1e-17) break;
  }
  return sum;
}

template <class Cdf>
double quantile(Cdf&& cdf, double p, double hi_start = 1.0) {
  double lo = 0.0;
  double hi = hi_start;
  while (cdf(hi) < p) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) < p) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
