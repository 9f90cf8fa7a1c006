#pragma once

// Minimal dense complex linear algebra for the small (L x L) systems the
// adaptive filters solve.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ccorr/errors.hpp"

namespace ccorr {

using complex = std::complex<double>;
using cvector = std::vector<complex>;

// Square complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t n, complex fill = {}) : n_(n), data_(n * n, fill) {}

  static CMatrix identity(std::size_t n, double scale = 1.0) {
    CMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = scale;
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const complex& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  double trace_real() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += data_[i * n_ + i].real();
    return t;
  }

  // max |A - A^H| entry.
  double hermitian_defect() const {
    double d = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
  }

  // A <- (A + A^H) / 2
  void symmetrize() {
    for (std::size_t i = 0; i < n_; ++i) {
      (*this)(i, i) = (*this)(i, i).real();
      for (std::size_t j = i + 1; j < n_; ++j) {
        const complex avg = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
        (*this)(i, j) = avg;
        (*this)(j, i) = std::conj(avg);
      }
    }
  }

 private:
  std::size_t n_ = 0;
  std::vector<complex> data_;
};

// a^H b
inline complex inner(const cvector& a, const cvector& b) {
  complex acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

inline double norm2(const cvector& v) {
  double acc = 0.0;
  for (const complex& c : v) acc += std::norm(c);
  return std::sqrt(acc);
}

inline double distance(const cvector& a, const cvector& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::norm(a[i] - b[i]);
  return std::sqrt(acc);
}

inline bool all_finite(const cvector& v) {
  return std::all_of(v.begin(), v.end(), [](const complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

inline cvector matvec(const CMatrix& a, const cvector& x) {
  cvector y(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

// Solves A x = b for Hermitian positive definite A via Cholesky (A = L L^H).
// Throws SingularMatrixError when a pivot collapses relative to the trace;
// the attached condition estimate is (max pivot / min pivot)^2.
inline cvector hermitian_solve(const CMatrix& a, const cvector& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("hermitian_solve: dimension mismatch");
  const double scale = a.trace_real();
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 0.0);
  CMatrix l(n);
  double max_pivot = 0.0;
  double min_pivot = INFINITY;
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a(j, j).real();
    for (std::size_t k = 0; k < j; ++k) diag -= std::norm(l(j, k));
    if (!(diag > floor) || !std::isfinite(diag)) {
      const double cond = (diag > 0.0 && min_pivot > 0.0) ? std::max(max_pivot, diag) / std::min(min_pivot, diag) : INFINITY;
      throw SingularMatrixError("weighted normal matrix is numerically singular", cond);
    }
    const double pivot = std::sqrt(diag);
    max_pivot = std::max(max_pivot, diag);
    min_pivot = std::min(min_pivot, diag);
    l(j, j) = pivot;
    for (std::size_t i = j + 1; i < n; ++i) {
      complex acc = a(i, j);
      for (std::size_t k = 0; k < j; ++k) acc -= l(i, k) * std::conj(l(j, k));
      l(i, j) = acc / pivot;
    }
  }
  // Forward: L y = b; backward: L^H x = y.
  cvector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    complex acc = b[i];
    for (std::size_t k = 0; k < i; ++k) acc -= l(i, k) * y[k];
    y[i] = acc / l(i, i).real();
  }
  cvector x(n);
  for (std::size_t i = n; i-- > 0;) {
    complex acc = y[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= std::conj(l(k, i)) * x[k];
    x[i] = acc / l(i, i).real();
  }
  return x;
}

}  // namespace ccorr
