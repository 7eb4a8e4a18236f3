#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gofpower/error.hpp"
#include "gofpower/power.hpp"
#include "oracles/chi_square.hpp"

using namespace gofpower;

TEST_SUITE("power") {

TEST_CASE("p-values of the uniform null") {
  const auto s = compute_spectrum(uniform_model(10), Perturbation::zero(10)).centered();
  CHECK(pvalue(0.0, s) == 1.0);
  CHECK(std::abs(pvalue(1.6918977604620449, s) - 0.05) <= 1e-9);
  CHECK(std::abs(pvalue(5.0, s) - (1.0 - 0.99999989227618)) <= 1e-9);
  CHECK(pvalue(1e3, s) <= 1e-12);
  CHECK_THROWS_AS(pvalue(-0.1, s), PreconditionError);
}

TEST_CASE("default grid") {
  const auto g = default_grid();
  REQUIRE(g.size() == 10000);
  CHECK(g.front() == doctest::Approx(0.0005));
  CHECK(g.back() == doctest::Approx(5.0));
  CHECK(default_grid(0.5, 2.0).size() == 4);
  CHECK_THROWS_AS(default_grid(0.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(default_grid(2.0, 1.0), PreconditionError);
}

TEST_CASE("zero perturbation traces the diagonal") {
  const auto ex = reference_example(2);
  const auto grid = default_grid(1.0 / 100.0, 3.0);
  const auto curve = power_curve(ex.model, Perturbation::zero(ex.model.size()), grid);
  REQUIRE(curve.points.size() == grid.size());
  for (const auto& p : curve.points) CHECK(std::abs(p.power - p.alpha) <= 2e-9);
  CHECK(curve.budget_warnings == 0);
}

TEST_CASE("power of the uniform example matches the noncentral oracle") {
  const auto ex = reference_example(1);
  const double crit = oracle::quantile([](double t) { return oracle::chi_square_cdf(9, t); }, 0.95, 40.0);
  const double expected = 1.0 - oracle::noncentral_chi_square_cdf(9, 4.0, crit);
  CHECK(expected == doctest::Approx(0.22536101968566).epsilon(1e-10));
  CHECK(std::abs(power_at(0.05, ex.model, ex.perturbation) - expected) <= 1e-7);

  const auto pair = compute_spectrum_pair(ex.model, ex.perturbation);
  CHECK(std::abs(critical_value(0.05, pair.null) - crit / 10.0) <= 1e-7);
}

TEST_CASE("no perturbation means power equals size") {
  const auto ex = reference_example(3);
  for (double alpha : {0.01, 0.3, 0.9}) {
    CHECK(std::abs(power_at(alpha, ex.model, Perturbation::zero(ex.model.size())) - alpha) <= 1e-8);
  }
  CHECK_THROWS_AS(power_at(0.0, ex.model, ex.perturbation), PreconditionError);
  CHECK_THROWS_AS(power_at(1.0, ex.model, ex.perturbation), PreconditionError);
}

TEST_CASE("single-level power agrees with the traced curve") {
  const auto ex = reference_example(2);
  const auto pair = compute_spectrum_pair(ex.model, ex.perturbation);
  const auto curve = power_curve(pair, default_grid(1.0 / 400.0, 3.0));
  for (double alpha : {0.05, 0.1, 0.5}) {
    // Curve points run from alpha near 1 down to alpha near 0.
    auto it = std::find_if(curve.points.begin(), curve.points.end(),
                           [&](const PowerPoint& p) { return p.alpha <= alpha; });
    REQUIRE(it != curve.points.begin());
    REQUIRE(it != curve.points.end());
    const auto& hi = *(it - 1);
    const auto& lo = *it;
    const double t = (alpha - lo.alpha) / (hi.alpha - lo.alpha);
    const double interpolated = lo.power + t * (hi.power - lo.power);
    CAPTURE(alpha);
    CHECK(std::abs(power_at(alpha, pair) - interpolated) <= 1e-4);
  }
}

TEST_CASE("curve is monotone and dominates the diagonal") {
  const auto ex = reference_example(3);
  const auto curve = power_curve(ex.model, ex.perturbation, default_grid(1.0 / 200.0, 5.0));
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    CHECK(curve.points[i].alpha <= curve.points[i - 1].alpha + 2e-9);
    CHECK(curve.points[i].power <= curve.points[i - 1].power + 2e-9);
  }
  for (const auto& p : curve.points) CHECK(p.power >= p.alpha - 2e-9);
  CHECK(curve.max_nodes_null > 0);
  CHECK(curve.max_nodes_alt > 0);
}

TEST_CASE("thread count does not change the curve") {
  const auto ex = reference_example(1);
  const auto grid = default_grid(1.0 / 50.0, 2.0);
  const auto a = power_curve(ex.model, ex.perturbation, grid, {}, 1);
  const auto b = power_curve(ex.model, ex.perturbation, grid, {}, 3);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(a.points[i].f0 == b.points[i].f0);
    CHECK(a.points[i].fa == b.points[i].fa);
  }
}

TEST_CASE("invalid grids are rejected") {
  const auto ex = reference_example(1);
  const std::vector<double> bad{0.5, 0.5};
  CHECK_THROWS_AS(power_curve(ex.model, ex.perturbation, bad), PreconditionError);
  const std::vector<double> neg{-0.5, 0.5};
  CHECK_THROWS_AS(power_curve(ex.model, ex.perturbation, neg), PreconditionError);
}

TEST_CASE("CSV layout") {
  const auto ex = reference_example(1);
  const std::vector<double> grid{0.5, 1.0};
  const auto curve = power_curve(ex.model, ex.perturbation, grid);
  std::ostringstream os;
  write_power_csv(os, curve);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,F0,Fa,alpha,power");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 4);
  }
  CHECK(rows == 2);
}

}  // TEST_SUITE
