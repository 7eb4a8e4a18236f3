#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gofpower/error.hpp"
#include "gofpower/quadrature.hpp"

using namespace gofpower;

TEST_SUITE("quadrature") {

TEST_CASE("GK21 is exact for low-degree polynomials") {
  // Kronrod 21 integrates degree 31 exactly, the embedded Gauss 10 degree 19.
  const auto est = gauss_kronrod_21([](double y) { return std::pow(y, 19); }, 0.0, 1.0);
  CHECK(est.kronrod == doctest::Approx(1.0 / 20.0).epsilon(1e-15));
  CHECK(est.gauss == doctest::Approx(1.0 / 20.0).epsilon(1e-15));
  const auto est2 = gauss_kronrod_21([](double y) { return std::pow(y, 30); }, -1.0, 1.0);
  CHECK(est2.kronrod == doctest::Approx(2.0 / 31.0).epsilon(1e-14));
  CHECK(std::abs(est2.gauss - 2.0 / 31.0) > 1e-10);
}

TEST_CASE("finite adaptive integration") {
  const auto r = adaptive_integrate_finite([](double y) { return std::sqrt(y); }, 0.0, 1.0, 1e-12, 1e-12, 200);
  CHECK(r.value == doctest::Approx(2.0 / 3.0).epsilon(1e-11));
  CHECK(r.nodes % 21 == 0);
  CHECK_FALSE(r.budget_exhausted);

  const auto peaked = adaptive_integrate_finite(
      [](double y) { return 1e-3 / (1e-6 + (y - 0.3) * (y - 0.3)); }, 0.0, 1.0, 1e-10, 1e-10, 200, {0.3});
  const double exact = std::atan(0.7 / 1e-3) + std::atan(0.3 / 1e-3);
  CHECK(peaked.value == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("budget exhaustion is reported, not hidden") {
  const auto r = adaptive_integrate_finite([](double y) { return std::sin(1.0 / (y + 1e-4)); }, 0.0, 1.0,
                                           1e-14, 0.0, 3);
  CHECK(r.budget_exhausted);
}

TEST_CASE("non-finite integrand raises a numerical error") {
  CHECK_THROWS_AS(adaptive_integrate_finite([](double) { return std::nan(""); }, 0.0, 1.0, 1e-9, 1e-9, 10),
                  NumericalError);
}

TEST_CASE("exponential tail on (0, inf)") {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-13;
  cfg.rel_tol = 1e-13;
  const auto r = adaptive_integrate([](double y) { return std::exp(-y); }, cfg);
  CHECK(std::abs(r.value - 1.0) <= 1e-12);
  CHECK(r.windows >= 2);
}

TEST_CASE("Dirichlet integral with aligned windows and extrapolation") {
  QuadratureConfig cfg;
  IntegrationOptions opt;
  opt.alignment_period = 2.0 * std::numbers::pi;
  const auto r = adaptive_integrate(
      [](double y) { return y == 0.0 ? 1.0 / std::numbers::pi : std::sin(y) / (std::numbers::pi * y); }, cfg,
      opt);
  CHECK(std::abs(r.value - 0.5) <= 1e-9);
  CHECK(r.extrapolated);
}

TEST_CASE("Wynn epsilon accelerates alternating series") {
  // Partial sums of log 2 = 1 - 1/2 + 1/3 - ...
  std::vector<double> sums;
  double s = 0.0;
  for (int k = 1; k <= 12; ++k) {
    s += (k % 2 ? 1.0 : -1.0) / k;
    sums.push_back(s);
  }
  CHECK(std::abs(sums.back() - std::log(2.0)) > 1e-2);
  CHECK(std::abs(wynn_epsilon(sums) - std::log(2.0)) <= 1e-8);
  CHECK(wynn_epsilon({0.25}) == 0.25);
}

TEST_CASE("configuration validation") {
  QuadratureConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.abs_tol = -1.0;
  CHECK_THROWS_AS(cfg.validate(), PreconditionError);
  cfg = {};
  cfg.max_subdivisions = 0;
  CHECK_THROWS_AS(cfg.validate(), PreconditionError);
  cfg = {};
  cfg.stability_threshold = std::nan("");
  CHECK_THROWS_AS(cfg.validate(), PreconditionError);
}

}  // TEST_SUITE
