#pragma once

// Parzen view of complex correntropy. Each sample pair (c1, c2) is the 4-D
// point (x, y, z, s) = (Re c1, Re c2, Im c1, Im c2); the joint density estimate
// is a mean of products of 1-D Gaussians. Integrating that estimate over the
// plane x = y = u1, z = s = u2 reproduces the complex correntropy estimator
// at bandwidth sigma * sqrt(2).

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ccorr/correntropy.hpp"
#include "ccorr/errors.hpp"

namespace ccorr {

struct Point4 {
  double x;
  double y;
  double z;
  double s;
};

inline double gaussian_1d(double u, double sigma) {
  return std::exp(-u * u / (2.0 * sigma * sigma)) / (std::sqrt(2.0 * std::numbers::pi) * sigma);
}

inline double parzen_joint_density(const ComplexSeries& series, const KernelSpec& spec, const Point4& p) {
  const auto a = series.c1();
  const auto b = series.c2();
  const double sigma = spec.sigma();
  return detail::pairwise_mean(a.size(), [&](std::size_t n) {
    return gaussian_1d(p.x - a[n].real(), sigma) * gaussian_1d(p.y - b[n].real(), sigma) *
           gaussian_1d(p.z - a[n].imag(), sigma) * gaussian_1d(p.s - b[n].imag(), sigma);
  });
}

struct QuadratureSettings {
  double tolerance = 1e-7;        // stop when successive refinements differ by less
  int max_refinements = 10;       // grid halvings after the initial step
  double initial_step = 1.0;      // in units of sigma
  double margin = 8.0;            // integration box extends this many sigma past the data
};

struct PlaneIntegral {
  double lhs;              // complex correntropy at sigma * sqrt(2)
  double rhs;              // numeric plane integral of the Parzen estimate at sigma
  double estimated_error;  // |last refinement - previous refinement|
  int refinements;
};

namespace detail {

// Composite 2-D trapezoid of the Parzen density restricted to x = y, z = s.
inline double plane_trapezoid(const ComplexSeries& series, const KernelSpec& spec, double lo, double hi,
                              std::size_t intervals) {
  const double h = (hi - lo) / static_cast<double>(intervals);
  auto weight = [intervals](std::size_t i) { return (i == 0 || i == intervals) ? 0.5 : 1.0; };
  double total = 0.0;
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double u1 = lo + h * static_cast<double>(i);
    double row = 0.0;
    for (std::size_t k = 0; k <= intervals; ++k) {
      const double u2 = lo + h * static_cast<double>(k);
      row += weight(k) * parzen_joint_density(series, spec, {u1, u1, u2, u2});
    }
    total += weight(i) * row;
  }
  return total * h * h;
}

}  // namespace detail

inline PlaneIntegral plane_integral_check(const ComplexSeries& series, double sigma,
                                          const QuadratureSettings& settings = {}) {
  const KernelSpec spec(sigma);
  double lo = series.c1()[0].real();
  double hi = lo;
  for (auto seq : {series.c1(), series.c2()}) {
    for (const complex& c : seq) {
      lo = std::min({lo, c.real(), c.imag()});
      hi = std::max({hi, c.real(), c.imag()});
    }
  }
  lo -= settings.margin * sigma;
  hi += settings.margin * sigma;

  std::size_t intervals =
      std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil((hi - lo) / (settings.initial_step * sigma))));
  double previous = detail::plane_trapezoid(series, spec, lo, hi, intervals);
  double error = INFINITY;
  int refinements = 0;
  while (refinements < settings.max_refinements) {
    intervals *= 2;
    ++refinements;
    const double current = detail::plane_trapezoid(series, spec, lo, hi, intervals);
    error = std::abs(current - previous);
    previous = current;
    if (error < settings.tolerance) break;
  }
  if (!(error < settings.tolerance))
    throw AccuracyError("plane integral did not converge to the requested tolerance", error);

  return {complex_correntropy(series, KernelSpec(sigma * std::numbers::sqrt2)), previous, error, refinements};
}

}  // namespace ccorr
