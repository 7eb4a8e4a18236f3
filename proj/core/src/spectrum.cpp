#include "gofpower/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "gofpower/error.hpp"

namespace gofpower {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

double DenseMatrix::norm_inf() const noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n_; ++j) row += std::abs((*this)(i, j));
    best = std::max(best, row);
  }
  return best;
}

double DenseMatrix::norm_frobenius() const noexcept {
  double sum = 0.0;
  for (double v : data_) sum += v * v;
  return std::sqrt(sum);
}

bool DenseMatrix::is_symmetric() const noexcept {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return false;
    }
  }
  return true;
}

DenseMatrix build_b_matrix(const ProbabilityModel& model) {
  const std::size_t m = model.size();
  const double md = static_cast<double>(m);
  std::vector<double> inv(m);
  double inv_sum = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    inv[k] = 1.0 / model[k];
    inv_sum += inv[k];
  }
  const double shift = inv_sum / (md * md);

  DenseMatrix b(m);
  for (std::size_t j = 0; j < m; ++j) {
    b(j, j) = inv[j] - (inv[j] + inv[j]) / md + shift;
    for (std::size_t k = j + 1; k < m; ++k) {
      const double v = -(inv[j] + inv[k]) / md + shift;
      b(j, k) = v;
      b(k, j) = v;
    }
  }
  return b;
}

namespace {

double off_diagonal_norm(const DenseMatrix& a) {
  double sum = 0.0;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

// Rotation in the (p, q) plane annihilating a(p, q); a stays symmetric.
void rotate(DenseMatrix& a, DenseMatrix& v, std::size_t p, std::size_t q) {
  const std::size_t n = a.size();
  const double apq = a(p, q);
  const double diff = a(q, q) - a(p, p);
  double t;
  if (std::abs(diff) + 100.0 * std::abs(apq) == std::abs(diff)) {
    t = apq / diff;
  } else {
    const double theta = 0.5 * diff / apq;
    t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const double tau = s / (1.0 + c);

  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    if (r == p || r == q) continue;
    const double g = a(r, p);
    const double h = a(r, q);
    const double rp = g - s * (h + g * tau);
    const double rq = h + s * (g - h * tau);
    a(r, p) = rp;
    a(p, r) = rp;
    a(r, q) = rq;
    a(q, r) = rq;
  }
  for (std::size_t r = 0; r < n; ++r) {
    const double g = v(r, p);
    const double h = v(r, q);
    v(r, p) = g - s * (h + g * tau);
    v(r, q) = h + s * (g - h * tau);
  }
}

}  // namespace

Eigendecomposition eigendecompose(const DenseMatrix& symmetric, JacobiOptions options) {
  if (!symmetric.is_symmetric()) {
    throw PreconditionError("eigendecompose: input matrix is not symmetric");
  }
  const std::size_t n = symmetric.size();
  DenseMatrix a = symmetric;
  DenseMatrix v = DenseMatrix::identity(n);
  const double scale = symmetric.norm_frobenius();
  const double target = options.relative_tolerance * scale;
  // Below this an off-diagonal entry is indistinguishable from rounding.
  const double negligible = 1e-3 * std::numeric_limits<double>::epsilon() * scale;

  int sweep = 0;
  for (;; ++sweep) {
    const double off = off_diagonal_norm(a);
    if (off <= target) break;
    if (sweep >= options.max_sweeps) {
      std::ostringstream os;
      os << "Jacobi eigensolver did not converge in " << options.max_sweeps
         << " sweeps (off-diagonal norm " << off << ", target " << target << ')';
      throw EigensolverError(os.str(), off);
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        const double g = 100.0 * std::abs(apq);
        if (std::abs(apq) <= negligible ||
            (sweep > 3 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
             std::abs(a(q, q)) + g == std::abs(a(q, q)))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotate(a, v, p, q);
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  Eigendecomposition out;
  out.values.resize(n);
  out.vectors = DenseMatrix(n);
  out.sweeps = sweep;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values[k] = a(src, src);
    double sign = 1.0;
    for (std::size_t r = 0; r < n; ++r) {
      if (std::abs(v(r, src)) > 1e-8) {
        sign = v(r, src) < 0.0 ? -1.0 : 1.0;
        break;
      }
    }
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = sign * v(r, src);
  }
  return out;
}

namespace detail {

StabilityValue stability_from_zeta(std::span<const double> zeta) {
  if (zeta.empty()) return {1.0, false};
  const double ell = static_cast<double>(zeta.size());
  double zeta2 = 0.0;
  for (double z : zeta) zeta2 += z * z;
  const double exponent = 0.5 * std::sqrt(1.0 + 1.0 / ell) * zeta2;
  if (exponent > 700.0) return {std::numeric_limits<double>::infinity(), true};
  return {std::exp(exponent), false};
}

}  // namespace detail

Spectrum Spectrum::from_parameters(std::vector<double> sigma, std::vector<double> zeta) {
  if (sigma.empty()) throw InvalidDimensionError("spectrum needs at least one term");
  if (sigma.size() != zeta.size()) {
    throw InvalidDimensionError("spectrum: sigma and zeta lengths differ");
  }
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    if (!(sigma[k] > 0.0) || !std::isfinite(sigma[k])) {
      throw InvalidModelError("spectrum: sigma_" + std::to_string(k + 1) +
                              " must be positive and finite");
    }
    if (!std::isfinite(zeta[k])) {
      throw InvalidModelError("spectrum: zeta_" + std::to_string(k + 1) + " is not finite");
    }
  }
  std::vector<std::size_t> order(sigma.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

  Spectrum out;
  out.sigma_.reserve(sigma.size());
  out.zeta_.reserve(zeta.size());
  for (std::size_t k : order) {
    out.sigma_.push_back(sigma[k]);
    out.zeta_.push_back(zeta[k]);
  }
  const auto stab = detail::stability_from_zeta(out.zeta_);
  out.stability_rhs_ = stab.value;
  out.stability_overflow_ = stab.overflow;
  return out;
}

double Spectrum::zeta_norm2() const noexcept {
  double sum = 0.0;
  for (double z : zeta_) sum += z * z;
  return sum;
}

double Spectrum::mean() const noexcept {
  double sum = 0.0;
  for (std::size_t k = 0; k < sigma_.size(); ++k) sum += sigma2(k) * (1.0 + zeta_[k] * zeta_[k]);
  return sum;
}

Spectrum Spectrum::centered() const {
  Spectrum out = *this;
  std::fill(out.zeta_.begin(), out.zeta_.end(), 0.0);
  out.stability_rhs_ = 1.0;
  out.stability_overflow_ = false;
  return out;
}

namespace {

struct Decomposed {
  Eigendecomposition eig;
  std::vector<double> sigma;
};

Decomposed decompose_model(const ProbabilityModel& model) {
  const DenseMatrix b = build_b_matrix(model);
  Decomposed out{eigendecompose(b), {}};
  const auto& values = out.eig.values;
  const std::size_t m = values.size();
  const double top = values.front();
  const double floor = 1e-10 * top;
  if (!(top > 0.0) || !(values[m - 2] > floor)) {
    std::ostringstream os;
    os << "degenerate model: eigenvalue " << (m - 1) << " of B is "
       << (m >= 2 ? values[m - 2] : 0.0) << " against a largest of " << top
       << " (max p / min p = " << model.condition_ratio() << ')';
    throw DegenerateModelError(os.str(), model.condition_ratio());
  }
  if (std::abs(values[m - 1]) > floor) {
    std::ostringstream os;
    os << "B has no numerical null vector: smallest eigenvalue " << values[m - 1];
    throw EigensolverError(os.str(), std::abs(values[m - 1]));
  }
  out.sigma.resize(m - 1);
  for (std::size_t k = 0; k + 1 < m; ++k) out.sigma[k] = 1.0 / std::sqrt(values[k]);
  return out;
}

std::vector<double> zeta_for(const Decomposed& d, const Perturbation& perturbation) {
  const std::size_t m = d.eig.values.size();
  std::vector<double> zeta(m - 1);
  for (std::size_t k = 0; k + 1 < m; ++k) {
    double eta = 0.0;
    for (std::size_t r = 0; r < m; ++r) eta += d.eig.vectors(r, k) * perturbation[r];
    zeta[k] = eta / d.sigma[k];
  }
  return zeta;
}

void require_matching(const ProbabilityModel& model, const Perturbation& perturbation) {
  if (model.size() != perturbation.size()) {
    throw InvalidDimensionError("perturbation has " + std::to_string(perturbation.size()) +
                                " entries but the model has " +
                                std::to_string(model.size()) + " bins");
  }
}

}  // namespace

Spectrum compute_spectrum(const ProbabilityModel& model, const Perturbation& perturbation) {
  require_matching(model, perturbation);
  const Decomposed d = decompose_model(model);
  return Spectrum::from_parameters(d.sigma, zeta_for(d, perturbation));
}

SpectrumPair compute_spectrum_pair(const ProbabilityModel& model,
                                   const Perturbation& perturbation) {
  require_matching(model, perturbation);
  const Decomposed d = decompose_model(model);
  auto alt = Spectrum::from_parameters(d.sigma, zeta_for(d, perturbation));
  auto null = alt.centered();
  return {std::move(null), std::move(alt)};
}

}  // namespace gofpower
