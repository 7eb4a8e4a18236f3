#include <doctest.h>

#include <cmath>
#include <numeric>

#include "gofpower/error.hpp"
#include "gofpower/model.hpp"

using namespace gofpower;

TEST_SUITE("model") {

TEST_CASE("uniform model") {
  const auto m10 = uniform_model(10);
  REQUIRE(m10.size() == 10);
  for (double p : m10.probs()) CHECK(p == 0.1);
  CHECK(std::abs(std::accumulate(m10.probs().begin(), m10.probs().end(), 0.0) - 1.0) <= 1e-15);

  const auto m2 = uniform_model(2);
  CHECK(m2[0] == 0.5);
  CHECK(m2[1] == 0.5);

  CHECK_THROWS_AS(uniform_model(1), InvalidDimensionError);
  CHECK_THROWS_AS(uniform_model(0), InvalidDimensionError);
}

TEST_CASE("uniform entries sum to one for many m") {
  for (std::size_t m = 2; m < 300; m += 7) {
    const auto model = uniform_model(m);
    const double total = std::accumulate(model.probs().begin(), model.probs().end(), 0.0);
    CHECK(std::abs(total - 1.0) <= 1e-13);
  }
}

TEST_CASE("explicit probabilities: lossless, renormalized, or rejected") {
  const std::vector<double> p{0.2, 0.3, 0.5};
  const auto model = ProbabilityModel::from_probabilities(p);
  for (std::size_t k = 0; k < p.size(); ++k) CHECK(model[k] == p[k]);

  const auto nudged = ProbabilityModel::from_probabilities({0.2, 0.3, 0.5 + 5e-10});
  const double total = nudged[0] + nudged[1] + nudged[2];
  CHECK(std::abs(total - 1.0) <= 1e-15);

  CHECK_THROWS_AS(ProbabilityModel::from_probabilities({0.2, 0.3, 0.6}), InvalidModelError);
  CHECK_THROWS_AS(ProbabilityModel::from_probabilities({0.5, 0.5, 0.0}), InvalidModelError);
  CHECK_THROWS_AS(ProbabilityModel::from_probabilities({1.2, -0.2}), InvalidModelError);
  CHECK_THROWS_AS(ProbabilityModel::from_probabilities({1.0}), InvalidDimensionError);
  CHECK_THROWS_AS(ProbabilityModel::from_probabilities({0.5, NAN}), InvalidModelError);
}

TEST_CASE("poisson truncation") {
  const auto model = poisson_model(3.0, 1e-10);
  CHECK(model.size() == 20);
  CHECK(model[0] == doctest::Approx(std::exp(-3.0)).epsilon(1e-14));
  CHECK(model[0] == doctest::Approx(0.049787).epsilon(1e-5));
  // Masses are left as computed: the sum falls short of one by the tail.
  const double total = std::accumulate(model.probs().begin(), model.probs().end(), 0.0);
  CHECK(total < 1.0);
  CHECK(1.0 - total < 1e-10);
  // Strictly decreasing beyond the mode.
  for (std::size_t k = 4; k < model.size(); ++k) CHECK(model[k] < model[k - 1]);

  SUBCASE("19 bins would leave too much tail") {
    double tail = 0.0;
    for (int j = 19; j < 200; ++j) tail += std::exp(-3.0 + j * std::log(3.0) - std::lgamma(j + 1.0));
    CHECK(tail >= 1e-10);
  }
}

TEST_CASE("poisson degenerate and failing cases") {
  const auto tiny = poisson_model(1e-300, 1e-10);
  CHECK(tiny.size() == 2);
  CHECK(tiny[0] == doctest::Approx(1.0));

  CHECK_THROWS_AS(poisson_model(1e6, 1e-10), TruncationError);
  CHECK_THROWS_AS(poisson_model(-1.0, 1e-10), InvalidModelError);
  CHECK_THROWS_AS(poisson_model(3.0, 0.0), InvalidModelError);
  CHECK_THROWS_AS(poisson_model(3.0, 1.5), InvalidModelError);
}

TEST_CASE("alternating perturbation") {
  const auto a = alternating_perturbation(10, 0.2);
  REQUIRE(a.size() == 10);
  for (std::size_t k = 1; k <= 10; ++k) CHECK(a[k - 1] == (k % 2 == 0 ? 0.2 : -0.2));
  CHECK(std::accumulate(a.entries().begin(), a.entries().end(), 0.0) == 0.0);

  const auto zero = alternating_perturbation(2, 0.0);
  CHECK(zero.is_zero());

  CHECK_THROWS_AS(alternating_perturbation(3, 1.0), InvalidDimensionError);
}

TEST_CASE("alternating entry sums vanish exactly for even m") {
  for (std::size_t m = 2; m <= 400; m += 2) {
    for (double amp : {0.1, 1.0 / 3.0, 7.25}) {
      const auto a = alternating_perturbation(m, amp);
      CHECK(std::accumulate(a.entries().begin(), a.entries().end(), 0.0) == 0.0);
    }
  }
}

TEST_CASE("perturbation sum check") {
  CHECK_NOTHROW(Perturbation::from_entries({1.0, -0.5, -0.5}));
  CHECK_THROWS_AS(Perturbation::from_entries({1.0, -0.5, -0.4}), InvalidModelError);
  CHECK_THROWS_AS(Perturbation::from_entries({1.0}), InvalidDimensionError);
}

TEST_CASE("validate_alternative") {
  const auto model = uniform_model(10);
  const auto a = alternating_perturbation(10, 0.2);

  const auto big_n = validate_alternative(Alternative(model, a, 1000000));
  CHECK(big_n.valid);
  CHECK(big_n.min_entry == doctest::Approx(0.0998).epsilon(1e-12));

  const auto zero = validate_alternative(Alternative(model, Perturbation::zero(10), 1));
  CHECK(zero.valid);

  const auto one = validate_alternative(Alternative(model, a, 1));
  CHECK_FALSE(one.valid);
  CHECK(one.offending_bins == std::vector<std::size_t>{1, 3, 5, 7, 9});
  CHECK(one.describe().find("bin(s) 1 3 5 7 9") != std::string::npos);

  CHECK_THROWS_AS(Alternative(model, Perturbation::zero(9), 10), InvalidDimensionError);
}

TEST_CASE("reference examples") {
  const auto all = reference_examples();
  REQUIRE(all.size() == 4);
  CHECK(all[0].model.size() == 10);
  CHECK(all[1].model.size() == 100);
  CHECK(all[2].model.size() == 20);
  CHECK(all[3].model.size() == 20);

  CHECK(all[1].model[0] == 0.5);
  CHECK(all[1].model[50] == doctest::Approx(1.0 / 198.0));
  CHECK(all[1].perturbation[0] == doctest::Approx(2.0 / 3.0));
  CHECK(all[1].perturbation[99] == doctest::Approx(-2.0 / 297.0));

  const std::vector<double> head{-0.25, 0.25, -0.25, 0.25, -0.5, 0.5, 0.0};
  for (std::size_t k = 0; k < head.size(); ++k) CHECK(all[2].perturbation[k] == head[k]);

  CHECK(all[3].perturbation[0] == 1.0);
  CHECK(all[3].perturbation[11] == doctest::Approx(-1.0 / 11.0));
  CHECK(all[3].perturbation[12] == 0.0);

  CHECK_THROWS_AS(reference_example(5), InvalidDimensionError);
}

}  // TEST_SUITE
