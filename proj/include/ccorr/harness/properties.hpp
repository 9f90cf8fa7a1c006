#pragma once

// Executable checks of the seven complex-correntropy properties on seeded
// random data. Used by `ccorr validate-properties`.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "ccorr/correntropy.hpp"
#include "ccorr/parzen.hpp"
#include "ccorr/random.hpp"

namespace ccorr::harness {

struct PropertyCheck {
  int id;
  std::string name;
  bool passed;
  std::string detail;
};

struct PropertySuiteOptions {
  std::size_t datasets = 1000;
  std::uint64_t seed = 20240601;
};

namespace detail {

inline std::vector<complex> random_complex(Rng& rng, std::size_t n, double scale) {
  std::vector<complex> out(n);
  for (complex& c : out) c = {scale * rng.normal(), scale * rng.normal()};
  return out;
}

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

inline double relative_error(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace detail

inline PropertyCheck check_symmetry(const PropertySuiteOptions& opt) {
  Rng rng(derive_seed(opt.seed, 1));
  for (std::size_t k = 0; k < opt.datasets; ++k) {
    const std::size_t n = 1 + rng.uniform_index(64);
    const ComplexSeries s(detail::random_complex(rng, n, 2.0), detail::random_complex(rng, n, 2.0));
    const KernelSpec spec(0.1 + 10.0 * rng.uniform());
    if (complex_correntropy(s, spec) != complex_correntropy(s.swapped(), spec))
      return {1, "symmetry", false, "dataset " + std::to_string(k) + " differs under swap"};
  }
  return {1, "symmetry", true, std::to_string(opt.datasets) + " datasets, bit-identical under swap"};
}

inline PropertyCheck check_boundedness(const PropertySuiteOptions& opt) {
  Rng rng(derive_seed(opt.seed, 2));
  for (std::size_t k = 0; k < opt.datasets; ++k) {
    const std::size_t n = 1 + rng.uniform_index(64);
    auto a = detail::random_complex(rng, n, 2.0);
    const KernelSpec spec(0.5 + 5.0 * rng.uniform());
    const double same = complex_correntropy(ComplexSeries(a, a), spec);
    if (same != spec.peak()) return {2, "boundedness", false, "identical series did not reach the bound"};
    auto b = a;
    b[rng.uniform_index(n)] += complex(0.5, -0.25);
    const double v = complex_correntropy(ComplexSeries(a, b), spec);
    if (!(v > 0.0 && v < spec.peak())) return {2, "boundedness", false, "estimate outside (0, 1/(2 pi sigma^2))"};
  }
  return {2, "boundedness", true, "0 < V <= 1/(2 pi sigma^2), equality only for identical series"};
}

// Slope of log|remainder| against log sigma, least squares.
inline double taylor_remainder_slope(const ComplexSeries& s, const std::vector<double>& sigmas) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double sigma : sigmas) {
    const TaylorDiagnostics t = taylor_decompose(s, KernelSpec(sigma));
    // Scale out the 1/(2 pi sigma^2) prefactor so the remaining tail is O(sigma^-4).
    const double x = std::log(sigma);
    const double y = std::log(std::abs(t.remainder / t.leading));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(sigmas.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline PropertyCheck check_large_sigma(const PropertySuiteOptions& opt) {
  Rng rng(derive_seed(opt.seed, 3));
  const ComplexSeries s(detail::random_complex(rng, 64, 1.0), detail::random_complex(rng, 64, 1.0));
  const double slope = taylor_remainder_slope(s, {4.0, 8.0, 16.0, 32.0});
  const bool ok = std::abs(slope + 4.0) <= 0.3;
  return {3, "large-sigma correlation limit", ok, "remainder log-log slope " + std::to_string(slope)};
}

inline PropertyCheck check_small_sigma(const PropertySuiteOptions& opt) {
  Rng rng(derive_seed(opt.seed, 4));
  // 3 of 8 pairs identical, the rest separated by at least 0.1.
  std::vector<complex> a = detail::random_complex(rng, 8, 1.0);
  std::vector<complex> b = a;
  for (std::size_t i = 3; i < 8; ++i) b[i] += complex(0.1 + rng.uniform(), 0.0);
  const ComplexSeries s(a, b);
  const std::vector<double> sigmas{1e-2, 1e-4, 1e-6};
  const double limit = small_sigma_limit(s, sigmas).back();
  bool ok = std::abs(limit - 3.0 / 8.0) <= 1e-12;
  // Parzen plane identity at sigma = 1 on the same data.
  const PlaneIntegral plane = plane_integral_check(s, 1.0);
  ok = ok && std::abs(plane.lhs - plane.rhs) <= 1e-6;
  return {4, "small-sigma probability limit", ok,
          "equal-pair fraction " + std::to_string(limit) + ", plane identity gap " +
              detail::sci(std::abs(plane.lhs - plane.rhs))};
}

// Variance of the estimator across `resamples` independent draws of size n.
inline double estimator_variance(std::size_t n, std::size_t resamples, const KernelSpec& spec, Rng& rng) {
  std::vector<double> values(resamples);
  for (double& v : values) {
    std::vector<complex> a = detail::random_complex(rng, n, 1.0);
    std::vector<complex> b = detail::random_complex(rng, n, 1.0);
    v = complex_correntropy(ComplexSeries(std::move(a), std::move(b)), spec);
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(resamples);
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  return var / static_cast<double>(resamples - 1);
}

inline PropertyCheck check_consistency(const PropertySuiteOptions& opt) {
  Rng rng(derive_seed(opt.seed, 5));
  const KernelSpec spec(1.0);
  const double v1 = estimator_variance(32, 4000, spec, rng);
  const double v4 = estimator_variance(128, 4000, spec, rng);
  const double ratio = v1 / v4;
  return {5, "mean-square consistency", ratio >= 3.0 && ratio <= 5.0, "variance ratio N/4N " + std::to_string(ratio)};
}

inline PropertyCheck check_real_relation(const PropertySuiteOptions& opt) {
  Rng rng(derive_seed(opt.seed, 6));
  double worst = 0.0;
  for (std::size_t k = 0; k < opt.datasets; ++k) {
    const std::size_t n = 1 + rng.uniform_index(64);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = 2.0 * rng.normal();
      y[i] = 2.0 * rng.normal();
    }
    const KernelSpec spec(0.5 + 5.0 * rng.uniform());
    const double complex_scaled =
        complex_correntropy(ComplexSeries::from_real(x, y), spec) * std::sqrt(2.0 * std::numbers::pi) * spec.sigma();
    worst = std::max(worst, detail::relative_error(complex_scaled, real_correntropy(x, y, spec)));
  }
  return {6, "relation to real correntropy", worst <= 1e-12, "max relative error " + detail::sci(worst)};
}

inline PropertyCheck check_polar_form(const PropertySuiteOptions& opt) {
  Rng rng(derive_seed(opt.seed, 7));
  double worst = 0.0;
  for (std::size_t k = 0; k < opt.datasets; ++k) {
    const std::size_t n = 1 + rng.uniform_index(64);
    std::vector<PolarPair> pairs;
    std::vector<complex> a, b;
    for (std::size_t i = 0; i < n; ++i) {
      const PolarComplex p(2.0 * rng.uniform(), 2.0 * std::numbers::pi * rng.uniform());
      const PolarComplex q(2.0 * rng.uniform(), 2.0 * std::numbers::pi * rng.uniform());
      pairs.push_back({p, q});
      a.push_back(p.to_rectangular());
      b.push_back(q.to_rectangular());
    }
    const KernelSpec spec(0.5 + 2.0 * rng.uniform());
    const double polar = complex_correntropy_polar(pairs, spec);
    const double rect = complex_correntropy(ComplexSeries(a, b), spec);
    worst = std::max(worst, detail::relative_error(polar, rect));
  }
  return {7, "polar form", worst <= 1e-12, "max relative error " + detail::sci(worst)};
}

inline std::vector<PropertyCheck> validate_properties(const PropertySuiteOptions& opt = {}) {
  return {check_symmetry(opt),      check_boundedness(opt), check_large_sigma(opt), check_small_sigma(opt),
          check_consistency(opt), check_real_relation(opt), check_polar_form(opt)};
}

}  // namespace ccorr::harness
