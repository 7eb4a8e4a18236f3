#include "gofpower/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "gofpower/error.hpp"

namespace gofpower {

namespace {

double kahan_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

void require_finite(std::span<const double> values, const char* what) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k])) {
      std::ostringstream os;
      os << what << ": entry " << (k + 1) << " is not finite";
      throw InvalidModelError(os.str());
    }
  }
}

}  // namespace

ProbabilityModel ProbabilityModel::from_probabilities(std::vector<double> probs) {
  if (probs.size() < 2) {
    throw InvalidDimensionError("probability model needs at least 2 bins, got " +
                                std::to_string(probs.size()));
  }
  require_finite(probs, "probability model");
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (!(probs[k] > 0.0)) {
      std::ostringstream os;
      os << "probability model: bin " << (k + 1) << " has nonpositive mass " << probs[k];
      throw InvalidModelError(os.str());
    }
  }
  const double total = kahan_sum(probs);
  if (std::abs(total - 1.0) > kRenormalizeGate) {
    std::ostringstream os;
    os.precision(17);
    os << "probability model: masses sum to " << total << ", not 1";
    throw InvalidModelError(os.str());
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    for (double& p : probs) p /= total;
  }
  return ProbabilityModel(std::move(probs));
}

double ProbabilityModel::condition_ratio() const noexcept {
  const auto [lo, hi] = std::minmax_element(probs_.begin(), probs_.end());
  return *hi / *lo;
}

Perturbation Perturbation::from_entries(std::vector<double> entries) {
  if (entries.size() < 2) {
    throw InvalidDimensionError("perturbation needs at least 2 entries, got " +
                                std::to_string(entries.size()));
  }
  require_finite(entries, "perturbation");
  const double total = kahan_sum(entries);
  double scale = 0.0;
  for (double v : entries) scale += std::abs(v);
  if (std::abs(total) > 1e-12 * std::max(1.0, scale)) {
    std::ostringstream os;
    os.precision(17);
    os << "perturbation: entries sum to " << total << ", not 0";
    throw InvalidModelError(os.str());
  }
  return Perturbation(std::move(entries));
}

Perturbation Perturbation::zero(std::size_t m) {
  if (m < 2) throw InvalidDimensionError("perturbation needs at least 2 entries");
  return Perturbation(std::vector<double>(m, 0.0));
}

bool Perturbation::is_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](double v) { return v == 0.0; });
}

Alternative::Alternative(ProbabilityModel model_, Perturbation perturbation_, std::uint64_t n_)
    : model(std::move(model_)), perturbation(std::move(perturbation_)), n(n_) {
  if (model.size() != perturbation.size()) {
    throw InvalidDimensionError("perturbation has " + std::to_string(perturbation.size()) +
                                " entries but the model has " +
                                std::to_string(model.size()) + " bins");
  }
  if (n == 0) throw PreconditionError("draw count n must be positive");
}

std::string AlternativeCheck::describe() const {
  if (valid) return "valid";
  std::ostringstream os;
  os << "p0 + a/sqrt(n) leaves [0, 1] in bin(s)";
  for (std::size_t k : offending_bins) os << ' ' << k;
  os << " (min entry " << min_entry << ", max entry " << max_entry << ')';
  return os.str();
}

ProbabilityModel uniform_model(std::size_t m) {
  if (m < 2) {
    throw InvalidDimensionError("uniform model needs m >= 2, got " + std::to_string(m));
  }
  return ProbabilityModel::from_probabilities(
      std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

ProbabilityModel poisson_model(double lambda, double tail_tol, std::size_t max_bins) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidModelError("poisson model: lambda must be positive and finite");
  }
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
    throw InvalidModelError("poisson model: tail tolerance must lie in (0, 1)");
  }
  // P(X >= m) for X ~ Poisson(lambda) is the regularized lower gamma P(m, lambda).
  std::size_t m = 2;
  while (boost::math::gamma_p(static_cast<double>(m), lambda) >= tail_tol) {
    if (++m > max_bins) {
      std::ostringstream os;
      os << "poisson model: lambda=" << lambda << " with tail tolerance " << tail_tol
         << " needs more than " << max_bins << " bins";
      throw TruncationError(os.str());
    }
  }
  std::vector<double> probs(m);
  const double log_lambda = std::log(lambda);
  for (std::size_t j = 0; j < m; ++j) {
    const double jd = static_cast<double>(j);
    probs[j] = std::exp(-lambda + jd * log_lambda - std::lgamma(jd + 1.0));
    if (!(probs[j] > 0.0)) {
      throw TruncationError("poisson model: mass of bin " + std::to_string(j + 1) +
                            " underflows to zero before the tail tolerance is met");
    }
  }
  return ProbabilityModel(std::move(probs));
}

Perturbation alternating_perturbation(std::size_t m, double amplitude) {
  if (m < 2 || m % 2 != 0) {
    throw InvalidDimensionError("alternating perturbation needs an even m >= 2, got " +
                                std::to_string(m));
  }
  std::vector<double> a(m);
  for (std::size_t k = 1; k <= m; ++k) a[k - 1] = (k % 2 == 0) ? amplitude : -amplitude;
  return Perturbation::from_entries(std::move(a));
}

std::vector<double> shifted_probabilities(const Alternative& alt) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(alt.n));
  std::vector<double> pa(alt.model.size());
  for (std::size_t k = 0; k < pa.size(); ++k) {
    pa[k] = alt.model[k] + alt.perturbation[k] * scale;
  }
  return pa;
}

AlternativeCheck validate_alternative(const Alternative& alt) {
  AlternativeCheck check;
  const auto pa = shifted_probabilities(alt);
  const auto [lo, hi] = std::minmax_element(pa.begin(), pa.end());
  check.min_entry = *lo;
  check.max_entry = *hi;
  for (std::size_t k = 0; k < pa.size(); ++k) {
    if (pa[k] < 0.0 || pa[k] > 1.0) check.offending_bins.push_back(k + 1);
  }
  check.valid = check.offending_bins.empty();
  return check;
}

ReferenceExample reference_example(int id) {
  switch (id) {
    case 1:
      return {1, "uniform, m=10", uniform_model(10), alternating_perturbation(10, 0.2)};
    case 2: {
      std::vector<double> p(100, 1.0 / 198.0);
      std::vector<double> a(100, -2.0 / 297.0);
      p[0] = 0.5;
      a[0] = 2.0 / 3.0;
      return {2, "nonuniform, m=100", ProbabilityModel::from_probabilities(std::move(p)),
              Perturbation::from_entries(std::move(a))};
    }
    case 3: {
      auto model = poisson_model(3.0, 1e-10);
      std::vector<double> a(model.size(), 0.0);
      for (std::size_t k = 1; k <= 6; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        a[k - 1] = sign * (k <= 4 ? 0.25 : 0.5);
      }
      return {3, "Poisson(3), alternating head", std::move(model),
              Perturbation::from_entries(std::move(a))};
    }
    case 4: {
      auto model = poisson_model(3.0, 1e-10);
      std::vector<double> a(model.size(), 0.0);
      a[0] = 1.0;
      for (std::size_t k = 2; k <= 12; ++k) a[k - 1] = -1.0 / 11.0;
      return {4, "Poisson(3), first-bin excess", std::move(model),
              Perturbation::from_entries(std::move(a))};
    }
    default:
      throw InvalidDimensionError("reference examples are numbered 1..4, got " +
                                  std::to_string(id));
  }
}

std::vector<ReferenceExample> reference_examples() {
  std::vector<ReferenceExample> out;
  for (int id = 1; id <= 4; ++id) out.push_back(reference_example(id));
  return out;
}

}  // namespace gofpower
