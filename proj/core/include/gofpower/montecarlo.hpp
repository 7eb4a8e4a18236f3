#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "gofpower/model.hpp"

namespace gofpower {

/// Trial values of X_n = n * sum_k ((Y_n)_k - (p0)_k)^2.
struct SimulationResult {
  std::vector<double> statistics;
  std::uint64_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

/// Seed of the generator used for one trial; a pure function of its inputs,
/// so the thread count cannot change which numbers a trial sees.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

/// One multinomial(n, probs) draw by sequential conditional binomials.
/// `probs` must be nonnegative with a positive sum; counts.size() == probs.size().
void sample_multinomial(std::mt19937_64& rng, std::uint64_t n, std::span<const double> probs,
                        std::span<std::uint64_t> counts);

/// Draws `trials` multinomial samples of size n from p0 + a / sqrt(n).
/// Throws PreconditionError when that vector leaves [0, 1].
SimulationResult simulate_statistics(const ProbabilityModel& model,
                                     const Perturbation& perturbation, std::uint64_t n,
                                     std::size_t trials, std::uint64_t seed,
                                     unsigned threads = 1);

struct EmpiricalPowerPoint {
  double alpha = 0.0;
  double critical_value = 0.0;
  double power = 0.0;
  /// sqrt(alpha (1 - alpha) / trials)
  double standard_error = 0.0;
  /// alpha * trials < 10: too few null exceedances to trust the quantile.
  bool low_count = false;
};

/// Critical value is the order statistic of the null sample at index
/// ceil((1 - alpha) * trials); power is the fraction of alternative
/// statistics at or above it.
std::vector<EmpiricalPowerPoint> empirical_power(const SimulationResult& null_sim,
                                                 const SimulationResult& alt_sim,
                                                 std::span<const double> alphas);

/// Header `x_n`, one statistic per line, 17 significant digits.
void write_statistics_csv(std::ostream& out, const SimulationResult& sim);

/// Header `alpha,power,standard_error,critical_value`.
void write_empirical_power_csv(std::ostream& out, std::span<const EmpiricalPowerPoint> points);

}  // namespace gofpower
