#pragma once

// Complex correntropy estimators built on the complex Gaussian kernel.
//
// For complex samples c1 = x + jz and c2 = y + js the sample estimator is
//
//   V(c1, c2) = 1/(2 pi sigma^2) * mean_n exp(-|c1_n - c2_n|^2 / (2 sigma^2))
//
// which lies in (0, 1/(2 pi sigma^2)] and reaches the upper bound only when
// the two series coincide. Sums use pairwise summation.

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ccorr/detail/summation.hpp"

namespace ccorr {

using complex = std::complex<double>;

enum class KernelFamily { ComplexGaussian };

class KernelSpec {
 public:
  explicit KernelSpec(double sigma, KernelFamily family = KernelFamily::ComplexGaussian)
      : sigma_(sigma), family_(family) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
      throw std::domain_error("kernel bandwidth must be finite and > 0");
  }

  double sigma() const noexcept { return sigma_; }
  KernelFamily family() const noexcept { return family_; }

  // Peak value 1/(2 pi sigma^2), reached at zero difference.
  double peak() const noexcept { return 1.0 / (2.0 * std::numbers::pi * sigma_ * sigma_); }

 private:
  double sigma_;
  KernelFamily family_;
};

inline bool is_finite(const complex& z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Two equal-length, non-empty, finite complex sequences.
class ComplexSeries {
 public:
  ComplexSeries(std::vector<complex> c1, std::vector<complex> c2)
      : c1_(std::move(c1)), c2_(std::move(c2)) {
    if (c1_.size() != c2_.size())
      throw std::domain_error("complex series must have equal lengths");
    if (c1_.empty()) throw std::domain_error("complex series must be non-empty");
    for (std::size_t i = 0; i < c1_.size(); ++i)
      if (!is_finite(c1_[i]) || !is_finite(c2_[i]))
        throw std::domain_error("complex series contains a non-finite sample");
  }

  // Purely real series embedded in the complex plane.
  static ComplexSeries from_real(std::span<const double> x, std::span<const double> y) {
    std::vector<complex> a(x.begin(), x.end());
    std::vector<complex> b(y.begin(), y.end());
    return ComplexSeries(std::move(a), std::move(b));
  }

  std::size_t size() const noexcept { return c1_.size(); }
  std::span<const complex> c1() const noexcept { return c1_; }
  std::span<const complex> c2() const noexcept { return c2_; }

  ComplexSeries swapped() const { return ComplexSeries(c2_, c1_); }

 private:
  std::vector<complex> c1_;
  std::vector<complex> c2_;
};

inline double complex_gaussian_kernel(const complex& delta, const KernelSpec& spec) {
  if (!is_finite(delta)) throw std::domain_error("kernel argument must be finite");
  const double s2 = spec.sigma() * spec.sigma();
  return spec.peak() * std::exp(-std::norm(delta) / (2.0 * s2));
}

inline double complex_correntropy(const ComplexSeries& series, const KernelSpec& spec) {
  const auto a = series.c1();
  const auto b = series.c2();
  const double inv = 1.0 / (2.0 * spec.sigma() * spec.sigma());
  return spec.peak() *
         detail::pairwise_mean(a.size(), [&](std::size_t n) { return std::exp(-std::norm(a[n] - b[n]) * inv); });
}

// Conventional (real) correntropy with the 1-D Gaussian kernel.
inline double real_correntropy(std::span<const double> x, std::span<const double> y, const KernelSpec& spec) {
  if (x.size() != y.size()) throw std::domain_error("real correntropy: length mismatch");
  if (x.empty()) throw std::domain_error("real correntropy: empty input");
  const double sigma = spec.sigma();
  const double inv = 1.0 / (2.0 * sigma * sigma);
  const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * sigma);
  return norm * detail::pairwise_mean(x.size(), [&](std::size_t n) {
           const double d = x[n] - y[n];
           return std::exp(-d * d * inv);
         });
}

class PolarComplex {
 public:
  PolarComplex(double magnitude, double angle) : magnitude_(magnitude), angle_(angle) {
    if (!(magnitude >= 0.0) || !std::isfinite(magnitude) || !std::isfinite(angle))
      throw std::domain_error("polar magnitude must be finite and >= 0");
  }

  static PolarComplex from_rectangular(const complex& z) { return {std::abs(z), std::arg(z)}; }

  double magnitude() const noexcept { return magnitude_; }
  double angle() const noexcept { return angle_; }
  complex to_rectangular() const { return std::polar(magnitude_, angle_); }

 private:
  double magnitude_;
  double angle_;
};

struct PolarPair {
  PolarComplex first;
  PolarComplex second;
};

// Same estimator written in magnitudes and phases:
//   |c1|^2 + |c2|^2 - 2 |c1| |c2| cos(theta - phi) == |c1 - c2|^2.
inline double complex_correntropy_polar(std::span<const PolarPair> pairs, const KernelSpec& spec) {
  if (pairs.empty()) throw std::domain_error("polar correntropy: empty input");
  const double inv = 1.0 / (2.0 * spec.sigma() * spec.sigma());
  return spec.peak() * detail::pairwise_mean(pairs.size(), [&](std::size_t n) {
           const double r1 = pairs[n].first.magnitude();
           const double r2 = pairs[n].second.magnitude();
           const double dtheta = pairs[n].first.angle() - pairs[n].second.angle();
           const double gap = r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * std::cos(dtheta);
           return std::exp(-gap * inv);
         });
}

// Split of the estimator into its large-bandwidth expansion:
//   leading          = 1/(2 pi sigma^2)
//   correlation_term = -leading * mean|c1 - c2|^2 / (2 sigma^2)
//   remainder        = estimator - leading - correlation_term   (the O(sigma^-4) tail)
struct TaylorDiagnostics {
  double leading;
  double correlation_term;
  double remainder;
};

inline TaylorDiagnostics taylor_decompose(const ComplexSeries& series, const KernelSpec& spec) {
  const auto a = series.c1();
  const auto b = series.c2();
  const double s2 = spec.sigma() * spec.sigma();
  const double leading = spec.peak();
  const double second_moment = detail::pairwise_mean(a.size(), [&](std::size_t n) { return std::norm(a[n] - b[n]); });
  const double correlation_term = -leading * second_moment / (2.0 * s2);
  const double inv = 1.0 / (2.0 * s2);
  // The tail mean(exp(-u) - 1 + u) is summed directly so that it keeps full
  // relative precision when sigma is large and u is tiny.
  const double tail = detail::pairwise_mean(a.size(), [&](std::size_t n) {
    const double u = std::norm(a[n] - b[n]) * inv;
    return std::expm1(-u) + u;
  });
  return {leading, correlation_term, leading * tail};
}

// Returns 2 pi sigma^2 * V for each bandwidth, i.e. mean exp(-|delta|^2/(2 sigma^2)).
// For discrete data this tends to the fraction of exactly equal pairs.
inline std::vector<double> small_sigma_limit(const ComplexSeries& series, std::span<const double> sigmas) {
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    if (!(sigmas[i] > 0.0)) throw std::domain_error("small_sigma_limit: bandwidths must be > 0");
    if (i > 0 && !(sigmas[i] < sigmas[i - 1]))
      throw std::domain_error("small_sigma_limit: bandwidths must be strictly decreasing");
  }
  const auto a = series.c1();
  const auto b = series.c2();
  std::vector<double> out;
  out.reserve(sigmas.size());
  for (double sigma : sigmas) {
    const double inv = 1.0 / (2.0 * sigma * sigma);
    out.push_back(detail::pairwise_mean(a.size(), [&](std::size_t n) { return std::exp(-std::norm(a[n] - b[n]) * inv); }));
  }
  return out;
}

}  // namespace ccorr
