#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gofpower/model.hpp"

namespace gofpower {

/// Dense row-major square matrix; only what the Jacobi solver needs.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<const double> data() const noexcept { return data_; }

  /// max_i sum_j |a_ij|
  double norm_inf() const noexcept;
  double norm_frobenius() const noexcept;
  bool is_symmetric() const noexcept;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// B = H D H with D = diag(1/p0) and H the centering projector. Formed
/// entrywise, exactly symmetric, with the ones vector in its null space.
DenseMatrix build_b_matrix(const ProbabilityModel& model);

struct Eigendecomposition {
  /// Descending; for B the trailing value is the theoretical zero.
  std::vector<double> values;
  /// Column k is the unit eigenvector for values[k], first nonzero entry > 0.
  DenseMatrix vectors;
  int sweeps = 0;
};

struct JacobiOptions {
  double relative_tolerance = 1e-14;
  int max_sweeps = 50;
};

/// Cyclic Jacobi eigensolver for a symmetric matrix.
Eigendecomposition eigendecompose(const DenseMatrix& symmetric, JacobiOptions options = {});

/// Parameters (sigma_k, zeta_k), k = 1..l, of X = sum_k sigma_k^2 (Z_k + zeta_k)^2.
///
/// Pairs are kept in descending sigma order. The right-hand side of the
/// shifted-contour stability bound, prod_k exp(zeta_k^2 sqrt(1 + 1/l) / 2),
/// is computed once at construction; `stability_overflow()` is set when it
/// exceeds the double range and the cached value is +infinity.
class Spectrum {
 public:
  static Spectrum from_parameters(std::vector<double> sigma, std::vector<double> zeta);

  std::size_t ell() const noexcept { return sigma_.size(); }
  std::span<const double> sigma() const noexcept { return sigma_; }
  std::span<const double> zeta() const noexcept { return zeta_; }
  double sigma2(std::size_t k) const { return sigma_[k] * sigma_[k]; }

  double stability_rhs() const noexcept { return stability_rhs_; }
  bool stability_overflow() const noexcept { return stability_overflow_; }

  double zeta_norm2() const noexcept;
  /// E[X] = sum sigma_k^2 (1 + zeta_k^2)
  double mean() const noexcept;

  /// The same spectrum with every zeta_k set to zero (the null law).
  Spectrum centered() const;

 private:
  Spectrum() = default;

  std::vector<double> sigma_;
  std::vector<double> zeta_;
  double stability_rhs_ = 1.0;
  bool stability_overflow_ = false;
};

/// Full pipeline p0, a -> B -> Q Lambda Q^T -> (sigma, zeta).
/// Throws DegenerateModelError when one of the first m - 1 eigenvalues is
/// below 1e-10 times the largest.
Spectrum compute_spectrum(const ProbabilityModel& model, const Perturbation& perturbation);

/// Both spectra of a power computation share the eigendecomposition.
struct SpectrumPair {
  Spectrum null;
  Spectrum alternative;
};
SpectrumPair compute_spectrum_pair(const ProbabilityModel& model,
                                   const Perturbation& perturbation);

namespace detail {
struct StabilityValue {
  double value;
  bool overflow;
};
StabilityValue stability_from_zeta(std::span<const double> zeta);
}  // namespace detail

}  // namespace gofpower
