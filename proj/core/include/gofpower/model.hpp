#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gofpower {

/// A fully specified probability distribution p0 over m >= 2 bins.
///
/// Entries are strictly positive. The general constructor accepts sums within
/// 1e-9 of one and renormalizes; anything further off is rejected so that
/// genuine data errors are not silently absorbed. The truncated Poisson
/// builder is the one exception and keeps its masses as computed.
class ProbabilityModel {
 public:
  static constexpr double kSumTolerance = 1e-12;
  static constexpr double kRenormalizeGate = 1e-9;

  static ProbabilityModel from_probabilities(std::vector<double> probs);

  std::size_t size() const noexcept { return probs_.size(); }
  std::span<const double> probs() const noexcept { return probs_; }
  double operator[](std::size_t k) const { return probs_[k]; }

  /// max_k p_k / min_k p_k; the entry-formation error of B scales with it.
  double condition_ratio() const noexcept;

 private:
  explicit ProbabilityModel(std::vector<double> probs) : probs_(std::move(probs)) {}
  friend ProbabilityModel poisson_model(double, double, std::size_t);

  std::vector<double> probs_;
};

/// Direction a of the local alternative p_a = p0 + a / sqrt(n); sum a_k = 0.
class Perturbation {
 public:
  static Perturbation from_entries(std::vector<double> entries);
  static Perturbation zero(std::size_t m);

  std::size_t size() const noexcept { return entries_.size(); }
  std::span<const double> entries() const noexcept { return entries_; }
  double operator[](std::size_t k) const { return entries_[k]; }
  bool is_zero() const noexcept;

 private:
  explicit Perturbation(std::vector<double> entries) : entries_(std::move(entries)) {}
  std::vector<double> entries_;
};

struct Alternative {
  Alternative(ProbabilityModel model, Perturbation perturbation, std::uint64_t n);

  ProbabilityModel model;
  Perturbation perturbation;
  std::uint64_t n;
};

struct AlternativeCheck {
  bool valid = true;
  /// 1-based indices of bins whose shifted mass falls outside [0, 1].
  std::vector<std::size_t> offending_bins;
  double min_entry = 0.0;
  double max_entry = 0.0;

  std::string describe() const;
};

ProbabilityModel uniform_model(std::size_t m);

/// Poisson(lambda) masses e^{-lambda} lambda^{k-1} / (k-1)! for k = 1..m with
/// m the smallest count whose omitted tail is below tail_tol (and m >= 2).
ProbabilityModel poisson_model(double lambda, double tail_tol,
                               std::size_t max_bins = 10000);

/// a_k = (-1)^k * amplitude for k = 1..m; m must be even.
Perturbation alternating_perturbation(std::size_t m, double amplitude);

/// Entries of p0 + a / sqrt(n), unchecked.
std::vector<double> shifted_probabilities(const Alternative& alt);

AlternativeCheck validate_alternative(const Alternative& alt);

/// One of the four reference configurations used throughout the test suites
/// and by `gofpower examples`.
struct ReferenceExample {
  int id;
  std::string label;
  ProbabilityModel model;
  Perturbation perturbation;
};

ReferenceExample reference_example(int id);
std::vector<ReferenceExample> reference_examples();

}  // namespace gofpower
