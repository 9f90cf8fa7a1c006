#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <vector>

#include "ccorr/equalization.hpp"

using namespace ccorr;

TEST(Constellation, SixteenQamPowerAndGray) {
  const Constellation c = make_16qam();
  EXPECT_EQ(c.size(), 16u);
  EXPECT_EQ(c.bits_per_symbol(), 4u);
  EXPECT_DOUBLE_EQ(c.average_power(), 10.0);
  // Nearest neighbours (distance 2) differ in exactly one bit.
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j)
      if (std::abs(std::abs(c.point(i) - c.point(j)) - 2.0) < 1e-12) {
        EXPECT_EQ(std::popcount(c.bits(i) ^ c.bits(j)), 1) << i << " " << j;
      }
}

TEST(Constellation, RejectsBadLabels) {
  EXPECT_THROW(Constellation({{1, 0}, {-1, 0}}, {0, 0}, 1), std::domain_error);
  EXPECT_THROW(Constellation({{1, 0}, {-1, 0}, {0, 1}}, {0, 1, 2}, 2), std::domain_error);
  EXPECT_THROW(make_square_qam({-1.0, 0.0, 1.0}), std::domain_error);
}

TEST(Channel, ReferenceExample) {
  const cvector a{complex(1, 0), complex(0, 0)};
  const cvector b = apply_channel(a, ChannelModel::reference());
  EXPECT_EQ(b[0], complex(1.1, -1.1));
  EXPECT_EQ(b[1], complex(0.9, -0.2));
}

TEST(Channel, IsLinear) {
  Rng rng(1);
  cvector a(50), b(50), sum(50);
  const complex alpha(0.3, -1.2), beta(2.0, 0.5);
  for (std::size_t k = 0; k < 50; ++k) {
    a[k] = {rng.normal(), rng.normal()};
    b[k] = {rng.normal(), rng.normal()};
    sum[k] = alpha * a[k] + beta * b[k];
  }
  const ChannelModel h = ChannelModel::reference();
  const cvector ya = apply_channel(a, h), yb = apply_channel(b, h), ys = apply_channel(sum, h);
  for (std::size_t k = 0; k < 50; ++k) EXPECT_LE(std::abs(ys[k] - (alpha * ya[k] + beta * yb[k])), 1e-12);
  EXPECT_THROW(ChannelModel({complex{}, complex{}}), std::domain_error);
}

TEST(AlphaStable, GaussianCaseVariance) {
  const NoiseSpec spec{2.0, 0.0, 0.7, {}};
  const cvector x = sample_alpha_stable(spec, 1000000, 11);
  double vr = 0, vi = 0;
  for (const complex& z : x) {
    vr += z.real() * z.real();
    vi += z.imag() * z.imag();
  }
  vr /= static_cast<double>(x.size());
  vi /= static_cast<double>(x.size());
  EXPECT_NEAR(vr / (2 * 0.7), 1.0, 0.05);
  EXPECT_NEAR(vi / (2 * 0.7), 1.0, 0.05);
}

TEST(AlphaStable, CauchyCaseQuantiles) {
  const double gamma = 2.0;
  const NoiseSpec spec{1.0, 0.0, gamma, {}};
  const cvector x = sample_alpha_stable(spec, 1000000, 12);
  std::vector<double> mag;
  for (const complex& z : x) mag.push_back(std::abs(z.real()));
  std::sort(mag.begin(), mag.end());
  for (double p : {0.25, 0.5, 0.75, 0.9}) {
    const double q = mag[static_cast<std::size_t>(p * static_cast<double>(mag.size()))];
    EXPECT_NEAR(q / (gamma * std::tan(std::numbers::pi * p / 2)), 1.0, 0.02) << p;
  }
}

TEST(AlphaStable, SymmetricAndDeterministic) {
  const NoiseSpec spec{1.5, 0.0, 1.0, {}};
  const cvector x = sample_alpha_stable(spec, 200000, 13);
  EXPECT_EQ(x, sample_alpha_stable(spec, 200000, 13));
  EXPECT_NE(x, sample_alpha_stable(spec, 200000, 14));
  std::size_t positive = 0;
  for (const complex& z : x) positive += z.real() > 0;
  EXPECT_NEAR(static_cast<double>(positive) / static_cast<double>(x.size()), 0.5, 0.005);
}

TEST(AlphaStable, RejectsInvalidParameters) {
  EXPECT_THROW(sample_alpha_stable({0.0, 0.0, 1.0, {}}, 1, 1), std::domain_error);
  EXPECT_THROW(sample_alpha_stable({2.5, 0.0, 1.0, {}}, 1, 1), std::domain_error);
  EXPECT_THROW(sample_alpha_stable({1.5, 0.5, 1.0, {}}, 1, 1), std::domain_error);
  EXPECT_THROW(sample_alpha_stable({1.5, 0.0, 0.0, {}}, 1, 1), std::domain_error);
}

TEST(Gsnr, CalibrationRoundTrip) {
  EXPECT_NEAR(calibrate_gamma(10.0, 15.0), 0.31622776601683794, 1e-15);
  for (double db : {-5.0, 0.0, 10.0, 20.0}) EXPECT_NEAR(gsnr_from_power(3.7, calibrate_gamma(3.7, db)), db, 1e-12);
  const cvector s{complex(1, 1), complex(-1, 1)};
  EXPECT_NEAR(gsnr(s, 0.2), 10.0, 1e-12);
  EXPECT_THROW(gsnr_from_power(1.0, 0.0), std::domain_error);
}

TEST(Regressors, TapDelayLine) {
  const cvector c{complex(1), complex(2), complex(3)};
  const cvector a{complex(4), complex(5), complex(6)};
  const auto r = build_regressors(c, a, 2);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].x, (cvector{complex(1), complex(0)}));
  EXPECT_EQ(r[2].x, (cvector{complex(3), complex(2)}));
  EXPECT_EQ(r[2].d, complex(6));
  EXPECT_THROW(build_regressors(c, cvector(2), 2), std::domain_error);
}

TEST(Decide, ExamplesAndTieRule) {
  const Constellation c = make_16qam();
  const Decisions d = decide(cvector{complex(2.9, -0.8), complex(2.0, 0.0), complex(0.0, 0.0)}, c);
  EXPECT_EQ(d.symbols[0], complex(3, -1));
  // Four points at distance sqrt(2): smallest magnitude, then smallest (Re, Im).
  EXPECT_EQ(d.symbols[1], complex(1, -1));
  EXPECT_EQ(d.symbols[2], complex(-1, -1));
  EXPECT_EQ(d.bits.size(), 12u);
}

TEST(Decide, IdempotentOnPoints) {
  const Constellation c = make_16qam();
  cvector pts(c.points().begin(), c.points().end());
  const Decisions d = decide(pts, c);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_EQ(d.indices[i], static_cast<std::int32_t>(i));
    EXPECT_EQ(d.symbols[i], pts[i]);
  }
  const Decisions again = decide(d.symbols, c);
  EXPECT_EQ(again.indices, d.indices);
}

TEST(Decide, NonFiniteIsErasure) {
  const Constellation c = make_16qam();
  const Decisions d = decide(cvector{complex(NAN, 0.0)}, c);
  EXPECT_EQ(d.indices[0], kErasure);
  EXPECT_EQ(ber(bits_of(std::vector<std::int32_t>{0}, c), d.bits), 1.0);
  EXPECT_THROW(decide(cvector{}, c), std::domain_error);
}

TEST(ErrorRates, Examples) {
  const std::vector<std::uint8_t> a{0, 1, 1, 0}, b{0, 1, 0, 0};
  EXPECT_EQ(ber(a, a), 0.0);
  EXPECT_EQ(ber(a, b), 0.25);
  EXPECT_EQ(ser(std::vector<std::int32_t>{1, 2}, std::vector<std::int32_t>{1, 3}), 0.5);
  EXPECT_THROW(ber(a, std::vector<std::uint8_t>{0}), std::domain_error);
}

TEST(Trial, DeterministicInSeed) {
  TrialSetup setup;
  setup.noise = NoiseSpec{1.5, 0.0, 0.5, {}};
  setup.train_len = 50;
  setup.test_len = 100;
  const TrialData a = generate_trial(setup, 5), b = generate_trial(setup, 5), c = generate_trial(setup, 6);
  EXPECT_EQ(a.test.received, b.test.received);
  EXPECT_EQ(a.train.indices, b.train.indices);
  EXPECT_NE(a.test.received, c.test.received);
}

TEST(Trial, NoiselessIdentityChannelHasZeroBer) {
  TrialSetup setup;
  setup.channel = ChannelModel({complex(1.0)});
  setup.train_len = 100;
  setup.test_len = 1000;
  const TrialData data = generate_trial(setup, 3);
  for (FilterState init : {FilterState::mccc(2), FilterState::crls(2), FilterState::clms(2)}) {
    const EqualizationRun run = evaluate(init, data, setup.constellation);
    EXPECT_FALSE(run.diverged);
    EXPECT_EQ(run.ber, 0.0) << to_string(init.algo);
    EXPECT_EQ(run.ser, 0.0);
  }
}
