#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ccorr/parzen.hpp"
#include "ccorr/random.hpp"

using namespace ccorr;

namespace {

std::vector<complex> random_series(Rng& rng, std::size_t n) {
  std::vector<complex> v(n);
  for (complex& c : v) c = {rng.normal(), rng.normal()};
  return v;
}

// Independent 4-D trapezoid of the Parzen density over a box.
double integrate_4d(const ComplexSeries& s, const KernelSpec& spec, double lo, double hi, int n) {
  const double h = (hi - lo) / n;
  auto w = [n](int i) { return (i == 0 || i == n) ? 0.5 : 1.0; };
  double total = 0.0;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      for (int k = 0; k <= n; ++k)
        for (int l = 0; l <= n; ++l)
          total += w(i) * w(j) * w(k) * w(l) *
                   parzen_joint_density(s, spec, {lo + i * h, lo + j * h, lo + k * h, lo + l * h});
  return total * h * h * h * h;
}

}  // namespace

TEST(ParzenJointDensity, PeakOfSingleKernel) {
  const ComplexSeries s({{0.5, -1.0}}, {{2.0, 0.25}});
  // point = (x, y, z, s) = (Re c1, Re c2, Im c1, Im c2)
  EXPECT_NEAR(parzen_joint_density(s, KernelSpec(1.0), {0.5, 2.0, -1.0, 0.25}), 0.025330295910584444, 1e-17);
}

TEST(ParzenJointDensity, VanishesFarFromData) {
  const ComplexSeries s({{0.0, 0.0}}, {{0.0, 0.0}});
  EXPECT_LT(parzen_joint_density(s, KernelSpec(1.0), {100, 100, 100, 100}), 1e-300);
}

TEST(ParzenJointDensity, IntegratesToOne) {
  Rng rng(3);
  const ComplexSeries s(random_series(rng, 2), random_series(rng, 2));
  const double total = integrate_4d(s, KernelSpec(1.0), -11.0, 11.0, 44);
  EXPECT_NEAR(total, 1.0, 1e-3);
}

TEST(PlaneIntegralCheck, SinglePairAtOrigin) {
  const ComplexSeries s({{0, 0}}, {{0, 0}});
  const PlaneIntegral r = plane_integral_check(s, 1.0);
  EXPECT_NEAR(r.lhs, 1.0 / (2.0 * std::numbers::pi * 2.0), 1e-15);
  EXPECT_NEAR(r.rhs, r.lhs, 1e-6);
}

TEST(PlaneIntegralCheck, RandomDataMatchesWidenedEstimator) {
  Rng rng(5);
  for (int k = 0; k < 5; ++k) {
    const ComplexSeries s(random_series(rng, 16), random_series(rng, 16));
    const PlaneIntegral r = plane_integral_check(s, 1.0);
    EXPECT_LE(std::abs(r.lhs - r.rhs), 1e-6);
    EXPECT_LT(r.estimated_error, 1e-7);
  }
}

TEST(PlaneIntegralCheck, ShiftLeavesGapUnchanged) {
  Rng rng(6);
  auto a = random_series(rng, 8);
  auto b = random_series(rng, 8);
  const PlaneIntegral base = plane_integral_check(ComplexSeries(a, b), 0.7);
  for (complex& c : a) c += complex(3.0, -2.0);
  for (complex& c : b) c += complex(3.0, -2.0);
  const PlaneIntegral shifted = plane_integral_check(ComplexSeries(a, b), 0.7);
  EXPECT_NEAR(base.lhs, shifted.lhs, 1e-15);
  EXPECT_NEAR(base.lhs - base.rhs, shifted.lhs - shifted.rhs, 1e-7);
}

TEST(PlaneIntegralCheck, CoarseBudgetRaisesAccuracyError) {
  const ComplexSeries s({{0, 0}}, {{1, 1}});
  QuadratureSettings q;
  q.max_refinements = 0;
  EXPECT_THROW(plane_integral_check(s, 1.0, q), AccuracyError);
  q.max_refinements = 1;
  q.tolerance = 1e-300;
  q.initial_step = 4.0;
  EXPECT_THROW(plane_integral_check(s, 1.0, q), AccuracyError);
}
