#include "gofpower/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <boost/random/binomial_distribution.hpp>

#include "gofpower/error.hpp"
#include "gofpower/parallel.hpp"

namespace gofpower {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x632be59bd9b4e019ULL));
}

void sample_multinomial(std::mt19937_64& rng, std::uint64_t n, std::span<const double> probs,
                        std::span<std::uint64_t> counts) {
  const std::size_t m = probs.size();
  if (counts.size() != m || m == 0) {
    throw InvalidDimensionError("sample_multinomial: counts and probs sizes differ");
  }
  double remaining_mass = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw PreconditionError("sample_multinomial: negative probability");
    remaining_mass += p;
  }
  if (!(remaining_mass > 0.0)) throw PreconditionError("sample_multinomial: no positive mass");

  std::uint64_t remaining = n;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    if (remaining == 0 || !(remaining_mass > 0.0)) {
      counts[k] = 0;
      continue;
    }
    const double q = std::clamp(probs[k] / remaining_mass, 0.0, 1.0);
    std::uint64_t draw = 0;
    if (q >= 1.0) {
      draw = remaining;
    } else if (q > 0.0) {
      boost::random::binomial_distribution<std::int64_t, double> binom(
          static_cast<std::int64_t>(remaining), q);
      draw = static_cast<std::uint64_t>(binom(rng));
    }
    counts[k] = draw;
    remaining -= draw;
    remaining_mass -= probs[k];
  }
  counts[m - 1] = remaining;
}

SimulationResult simulate_statistics(const ProbabilityModel& model,
                                     const Perturbation& perturbation, std::uint64_t n,
                                     std::size_t trials, std::uint64_t seed, unsigned threads) {
  const Alternative alt(model, perturbation, n);
  const AlternativeCheck check = validate_alternative(alt);
  if (!check.valid) {
    throw PreconditionError("simulation at n=" + std::to_string(n) + ": " + check.describe());
  }
  if (trials == 0) throw PreconditionError("simulation needs at least one trial");

  const std::vector<double> pa = shifted_probabilities(alt);
  const std::size_t m = pa.size();
  const double nd = static_cast<double>(n);

  SimulationResult out;
  out.n = n;
  out.trials = trials;
  out.seed = seed;
  out.statistics.resize(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    std::mt19937_64 rng(trial_seed(seed, t));
    std::vector<std::uint64_t> counts(m);
    sample_multinomial(rng, n, pa, counts);
    double sum = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double diff = static_cast<double>(counts[k]) - nd * model[k];
      sum += diff * diff;
    }
    out.statistics[t] = sum / nd;
  });
  return out;
}

std::vector<EmpiricalPowerPoint> empirical_power(const SimulationResult& null_sim,
                                                 const SimulationResult& alt_sim,
                                                 std::span<const double> alphas) {
  if (null_sim.n != alt_sim.n) {
    throw PreconditionError("empirical power: simulations use different n");
  }
  if (null_sim.statistics.empty() || alt_sim.statistics.empty()) {
    throw PreconditionError("empirical power: empty simulation");
  }
  std::vector<double> null_sorted = null_sim.statistics;
  std::sort(null_sorted.begin(), null_sorted.end());
  std::vector<double> alt_sorted = alt_sim.statistics;
  std::sort(alt_sorted.begin(), alt_sorted.end());

  const double trials = static_cast<double>(null_sorted.size());
  std::vector<EmpiricalPowerPoint> out;
  out.reserve(alphas.size());
  for (double alpha : alphas) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
      throw PreconditionError("empirical power: alpha outside [0, 1]");
    }
    EmpiricalPowerPoint point;
    point.alpha = alpha;
    const double rank = std::ceil((1.0 - alpha) * trials - 1e-9);
    const auto index = static_cast<std::size_t>(std::clamp(rank, 1.0, trials)) - 1;
    point.critical_value = null_sorted[index];
    const auto first_at_or_above =
        std::lower_bound(alt_sorted.begin(), alt_sorted.end(), point.critical_value);
    point.power = static_cast<double>(alt_sorted.end() - first_at_or_above) /
                  static_cast<double>(alt_sorted.size());
    point.standard_error = std::sqrt(alpha * (1.0 - alpha) / trials);
    point.low_count = alpha * trials < 10.0;
    out.push_back(point);
  }
  return out;
}

void write_statistics_csv(std::ostream& out, const SimulationResult& sim) {
  out << "x_n\n";
  char line[64];
  for (double v : sim.statistics) {
    std::snprintf(line, sizeof line, "%.17g\n", v);
    out << line;
  }
}

void write_empirical_power_csv(std::ostream& out, std::span<const EmpiricalPowerPoint> points) {
  out << "alpha,power,standard_error,critical_value\n";
  char line[128];
  for (const auto& p : points) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", p.alpha, p.power,
                  p.standard_error, p.critical_value);
    out << line;
  }
}

}  // namespace gofpower
