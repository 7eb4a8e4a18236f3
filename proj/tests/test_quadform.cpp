#include <doctest.h>

#include <cmath>

#include "gofpower/error.hpp"
#include "gofpower/quadform.hpp"
#include "gofpower/spectrum.hpp"
#include "oracles/chi_square.hpp"

using namespace gofpower;

namespace {

Spectrum example_spectrum(int id) {
  const auto ex = reference_example(id);
  return compute_spectrum(ex.model, ex.perturbation);
}

}  // namespace

TEST_SUITE("quadform") {

TEST_CASE("shifted-contour moduli respect their a-priori bounds") {
  for (int id = 1; id <= 3; ++id) {
    const auto s = example_spectrum(id);
    const double ratio_bound = std::sqrt(1.0 + 1.0 / static_cast<double>(s.ell()));
    for (double x : {0.05, 0.5, 2.0}) {
      for (double y : {0.01, 0.1, 1.0, 10.0, 100.0}) {
        CAPTURE(id);
        CAPTURE(x);
        CAPTURE(y);
        const auto t = shifted_contour_terms(y, x, s);
        CHECK(t.root_product_modulus >= std::exp(-0.25) * (1.0 - 1e-12));
        CHECK(t.max_ratio_modulus <= ratio_bound * (1.0 + 1e-12));
        CHECK(t.numerator_modulus <= s.stability_rhs() * (1.0 + 1e-12));
        CHECK(std::isfinite(t.value));
        CHECK(t.value == doctest::Approx(integrand_shifted(y, x, s)).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("Imhof exponentials never exceed one") {
  const auto s = example_spectrum(4);
  for (double x : {0.0005, 0.05, 1.0, 5.0}) {
    for (double y : {1e-4, 0.01, 0.1, 1.0, 10.0, 100.0, 1e4}) {
      const auto t = imhof_terms(y, x, s);
      CHECK(t.max_exponential_modulus <= 1.0);
      CHECK(std::isfinite(t.value));
      CHECK(t.value == doctest::Approx(integrand_imhof(y, x, s)).epsilon(1e-14));
    }
  }
}

TEST_CASE("single chi-square term") {
  const auto s = Spectrum::from_parameters({1.0}, {0.0});
  const auto f1 = cdf(1.0, s);
  CHECK(f1.method == CdfMethod::ShiftedContour);
  CHECK(std::abs(f1.value - oracle::chi_square_cdf(1, 1.0)) <= 1e-9);
  CHECK(std::abs(f1.value - 0.682689492137) <= 1e-9);
  CHECK(std::abs(cdf(3.8414588206941, s).value - 0.95) <= 1e-9);
  CHECK(std::abs(cdf_with_method(3.8414588206941, s, CdfMethod::Imhof).value - 0.95) <= 1e-8);
}

TEST_CASE("uniform null law is a scaled chi-square") {
  // sigma^2 = 1/m with m - 1 terms: X ~ chi2_{m-1} / m.
  const auto s = compute_spectrum(uniform_model(10), Perturbation::zero(10));
  const double q95 = 16.918977604620449 / 10.0;
  CHECK(std::abs(cdf(q95, s).value - 0.95) <= 1e-9);
  CHECK(std::abs(cdf(1.691898, s).value - 0.95) <= 1e-6);
  for (double x : {0.05, 0.3, 0.9, 2.5}) {
    CAPTURE(x);
    CHECK(std::abs(cdf(x, s).value - oracle::chi_square_cdf(9, 10.0 * x)) <= 1e-9);
  }
}

TEST_CASE("uniform alternative is a scaled noncentral chi-square") {
  const auto s = example_spectrum(1);
  for (double x : {0.5, 1.0, 2.0, 4.0}) {
    CAPTURE(x);
    const double expected = oracle::noncentral_chi_square_cdf(9, 4.0, 10.0 * x);
    CHECK(std::abs(cdf(x, s).value - expected) <= 1e-9);
    CHECK(std::abs(cdf_with_method(x, s, CdfMethod::Imhof).value - expected) <= 1e-9);
  }
}

TEST_CASE("boundary behaviour") {
  const auto s = example_spectrum(2);
  const auto zero = cdf(0.0, s);
  CHECK(zero.value == 0.0);
  CHECK(zero.nodes_used == 0);
  CHECK(cdf(-1.0, s).value == 0.0);
  CHECK_THROWS_AS(cdf(std::nan(""), s), PreconditionError);
  CHECK_THROWS_AS(cdf(INFINITY, s), PreconditionError);
  CHECK(cdf(50.0 * s.mean(), s).value > 1.0 - 1e-6);
  CHECK(cdf(1e-6 * s.mean(), s).value < 1e-6);
}

TEST_CASE("the two representations agree where both are stable") {
  for (int id = 1; id <= 3; ++id) {
    for (bool alt : {false, true}) {
      auto s = example_spectrum(id);
      if (!alt) s = s.centered();
      for (double x : {0.25 * s.mean(), s.mean(), 3.0 * s.mean()}) {
        CAPTURE(id);
        CAPTURE(alt);
        CAPTURE(x);
        const auto a = cdf_with_method(x, s, CdfMethod::ShiftedContour);
        const auto b = cdf_with_method(x, s, CdfMethod::Imhof);
        CHECK(std::abs(a.value - b.value) <= 1e-8);
      }
    }
  }
}

TEST_CASE("method gate follows the stability bound") {
  QuadratureConfig cfg;
  CHECK(select_method(example_spectrum(1), cfg) == CdfMethod::ShiftedContour);
  CHECK(select_method(example_spectrum(3), cfg) == CdfMethod::ShiftedContour);
  CHECK(select_method(example_spectrum(4), cfg) == CdfMethod::Imhof);
  CHECK(select_method(example_spectrum(4).centered(), cfg) == CdfMethod::ShiftedContour);
  cfg.stability_threshold = 5.0;
  CHECK(select_method(example_spectrum(1), cfg) == CdfMethod::Imhof);
  CHECK(to_string(CdfMethod::Imhof) == "Imhof");
  CHECK(to_string(CdfMethod::ShiftedContour) == "ShiftedContour");
}

TEST_CASE("noncentral mass lies to the right of the null") {
  const auto s = example_spectrum(4);
  const auto f0 = cdf(s.centered().mean(), s.centered());
  const auto fa = cdf(s.centered().mean(), s);
  CHECK(fa.value < f0.value);
  CHECK(fa.method == CdfMethod::Imhof);
  CHECK_FALSE(fa.budget_exhausted);
}

TEST_CASE("monotone in x") {
  const auto s = example_spectrum(3);
  double prev = 0.0;
  for (int i = 1; i <= 40; ++i) {
    const double v = cdf(0.1 * i * s.mean(), s).value;
    CHECK(v >= prev - 2e-9);
    prev = v;
  }
}

}  // TEST_SUITE
