#pragma once

// Channel-equalization experiment fabric: square QAM source with Gray
// mapping, FIR channel, symmetric alpha-stable noise calibrated by GSNR,
// delay-line regressors, nearest-neighbour decisions and error counting.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ccorr/filters.hpp"
#include "ccorr/random.hpp"

namespace ccorr {

// Point set with a Gray bit label per point. bits[i] labels points[i].
class Constellation {
 public:
  Constellation(std::vector<complex> points, std::vector<std::uint32_t> bits, unsigned bits_per_symbol)
      : points_(std::move(points)), bits_(std::move(bits)), bits_per_symbol_(bits_per_symbol) {
    if (points_.empty()) throw std::domain_error("constellation must be non-empty");
    if (bits_per_symbol_ >= 32 || points_.size() != (std::size_t{1} << bits_per_symbol_))
      throw std::domain_error("constellation size must equal 2^bits_per_symbol");
    if (bits_.size() != points_.size()) throw std::domain_error("constellation bit map size mismatch");
    std::vector<bool> seen(points_.size(), false);
    for (std::uint32_t b : bits_) {
      if (b >= points_.size() || seen[b]) throw std::domain_error("constellation bit map is not a bijection");
      seen[b] = true;
    }
    double power = 0.0;
    for (const complex& p : points_) power += std::norm(p);
    average_power_ = power / static_cast<double>(points_.size());
    if (!(average_power_ > 0.0)) throw std::domain_error("constellation average power must be > 0");
  }

  std::size_t size() const noexcept { return points_.size(); }
  unsigned bits_per_symbol() const noexcept { return bits_per_symbol_; }
  double average_power() const noexcept { return average_power_; }
  std::span<const complex> points() const noexcept { return points_; }
  const complex& point(std::size_t i) const { return points_.at(i); }
  std::uint32_t bits(std::size_t i) const { return bits_.at(i); }

 private:
  std::vector<complex> points_;
  std::vector<std::uint32_t> bits_;
  unsigned bits_per_symbol_;
  double average_power_ = 0.0;
};

// Square QAM on levels x levels. Each axis carries a reflected Gray code over
// the sorted level list; the in-phase bits are the high half of the label.
inline Constellation make_square_qam(std::vector<double> levels) {
  std::sort(levels.begin(), levels.end());
  const std::size_t m = levels.size();
  if (m < 2 || (m & (m - 1)) != 0) throw std::domain_error("QAM level count must be a power of two >= 2");
  if (std::adjacent_find(levels.begin(), levels.end()) != levels.end())
    throw std::domain_error("QAM levels must be distinct");
  unsigned axis_bits = 0;
  while ((std::size_t{1} << axis_bits) < m) ++axis_bits;

  std::vector<complex> points;
  std::vector<std::uint32_t> bits;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t q = 0; q < m; ++q) {
      const auto gray_i = static_cast<std::uint32_t>(i ^ (i >> 1));
      const auto gray_q = static_cast<std::uint32_t>(q ^ (q >> 1));
      points.emplace_back(levels[i], levels[q]);
      bits.push_back((gray_i << axis_bits) | gray_q);
    }
  }
  return Constellation(std::move(points), std::move(bits), 2 * axis_bits);
}

inline Constellation make_16qam() { return make_square_qam({-3.0, -1.0, 1.0, 3.0}); }

// FIR channel b_k = sum_i taps[i] a_{k-i}, with a_k = 0 for k < 0.
class ChannelModel {
 public:
  explicit ChannelModel(cvector taps) : taps_(std::move(taps)) {
    if (std::none_of(taps_.begin(), taps_.end(), [](const complex& t) { return t != complex{}; }))
      throw std::domain_error("channel needs at least one nonzero tap");
  }

  static ChannelModel reference() { return ChannelModel({{1.1, -1.1}, {0.9, -0.2}}); }

  const cvector& taps() const noexcept { return taps_; }
  double power_gain() const {
    double g = 0.0;
    for (const complex& t : taps_) g += std::norm(t);
    return g;
  }

 private:
  cvector taps_;
};

inline cvector apply_channel(std::span<const complex> symbols, const ChannelModel& channel) {
  if (symbols.empty()) throw std::domain_error("apply_channel: empty input");
  const cvector& taps = channel.taps();
  cvector out(symbols.size());
  for (std::size_t k = 0; k < symbols.size(); ++k) {
    complex acc{};
    for (std::size_t i = 0; i < taps.size() && i <= k; ++i) acc += taps[i] * symbols[k - i];
    out[k] = acc;
  }
  return out;
}

// Symmetric alpha-stable noise. gamma is the dispersion of each real
// component; the component scale is gamma^(1/alpha) (S0 parameterization).
struct NoiseSpec {
  double alpha = 1.8;
  double beta = 0.0;
  double gamma = 1.0;
  std::optional<double> target_gsnr_db;

  void validate() const {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw std::domain_error("alpha must lie in (0, 2]");
    if (beta != 0.0) throw std::domain_error("only symmetric (beta = 0) noise is supported");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::domain_error("dispersion gamma must be finite and > 0");
  }

  double scale() const { return std::pow(gamma, 1.0 / alpha); }
};

// Standard symmetric alpha-stable variate (unit scale) by the
// Chambers-Mallows-Stuck transform.
inline double standard_symmetric_stable(double alpha, Rng& rng) {
  const double v = rng.uniform_half_angle();
  const double w = rng.exponential();
  if (alpha == 1.0) return std::tan(v);
  const double av = alpha * v;
  return std::sin(av) / std::pow(std::cos(v), 1.0 / alpha) *
         std::pow(std::cos(v - av) / w, (1.0 - alpha) / alpha);
}

inline cvector sample_alpha_stable(const NoiseSpec& spec, std::size_t n, Rng& rng) {
  spec.validate();
  const double c = spec.scale();
  cvector out(n);
  for (complex& z : out) {
    const double re = standard_symmetric_stable(spec.alpha, rng);
    const double im = standard_symmetric_stable(spec.alpha, rng);
    z = {c * re, c * im};
  }
  return out;
}

inline cvector sample_alpha_stable(const NoiseSpec& spec, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_alpha_stable(spec, n, rng);
}

inline double gsnr_from_power(double signal_power, double gamma) {
  if (!(gamma > 0.0)) throw std::domain_error("gsnr: gamma must be > 0");
  return 10.0 * std::log10(signal_power / gamma);
}

// 10 log10( mean |s|^2 / gamma ).
inline double gsnr(std::span<const complex> signal, double gamma) {
  if (signal.empty()) throw std::domain_error("gsnr: empty signal");
  const double power =
      detail::pairwise_mean(signal.size(), [&](std::size_t i) { return std::norm(signal[i]); });
  return gsnr_from_power(power, gamma);
}

inline double calibrate_gamma(double signal_power, double target_gsnr_db) {
  if (!(signal_power > 0.0)) throw std::domain_error("calibrate_gamma: signal power must be > 0");
  return signal_power * std::pow(10.0, -target_gsnr_db / 10.0);
}

// Regressor k: x = [c_k, c_{k-1}, ..., c_{k-L+1}] (zero before the start), d = a_k.
inline std::vector<Regressor> build_regressors(std::span<const complex> received, std::span<const complex> training,
                                               std::size_t taps) {
  if (received.size() != training.size()) throw std::domain_error("build_regressors: length mismatch");
  if (taps == 0) throw std::domain_error("build_regressors: taps must be >= 1");
  std::vector<Regressor> out(received.size());
  for (std::size_t k = 0; k < received.size(); ++k) {
    out[k].x.assign(taps, complex{});
    for (std::size_t i = 0; i < taps && i <= k; ++i) out[k].x[i] = received[k - i];
    out[k].d = training[k];
  }
  return out;
}

// Index reserved for estimates that cannot be decided (non-finite).
inline constexpr std::int32_t kErasure = -1;

struct Decisions {
  std::vector<std::int32_t> indices;  // constellation index or kErasure
  std::vector<complex> symbols;       // decided points; NaN for erasures
  std::vector<std::uint8_t> bits;     // bits_per_symbol per symbol, MSB first
};

namespace detail {

// Nearest point; ties go to the smaller |point|, then the smaller (Re, Im).
inline std::int32_t nearest_point(const complex& z, const Constellation& c) {
  std::int32_t best = 0;
  double best_dist = std::norm(z - c.point(0));
  for (std::size_t i = 1; i < c.size(); ++i) {
    const complex& p = c.point(i);
    const double d = std::norm(z - p);
    if (d > best_dist) continue;
    const complex& b = c.point(static_cast<std::size_t>(best));
    if (d == best_dist) {
      const double np = std::norm(p);
      const double nb = std::norm(b);
      if (np > nb) continue;
      if (np == nb && (p.real() > b.real() || (p.real() == b.real() && p.imag() >= b.imag()))) continue;
    }
    best = static_cast<std::int32_t>(i);
    best_dist = d;
  }
  return best;
}

}  // namespace detail

inline Decisions decide(std::span<const complex> estimates, const Constellation& c) {
  if (estimates.empty()) throw std::domain_error("decide: empty input");
  Decisions out;
  const unsigned nb = c.bits_per_symbol();
  out.indices.reserve(estimates.size());
  out.symbols.reserve(estimates.size());
  out.bits.reserve(estimates.size() * nb);
  for (const complex& z : estimates) {
    if (!is_finite(z)) {
      out.indices.push_back(kErasure);
      out.symbols.emplace_back(NAN, NAN);
      // Filled with 2, which never matches a reference bit.
      out.bits.insert(out.bits.end(), nb, 2);
      continue;
    }
    const std::int32_t idx = detail::nearest_point(z, c);
    out.indices.push_back(idx);
    out.symbols.push_back(c.point(static_cast<std::size_t>(idx)));
    const std::uint32_t label = c.bits(static_cast<std::size_t>(idx));
    for (unsigned b = nb; b-- > 0;) out.bits.push_back(static_cast<std::uint8_t>((label >> b) & 1u));
  }
  return out;
}

// Bit labels of constellation indices, MSB first.
inline std::vector<std::uint8_t> bits_of(std::span<const std::int32_t> indices, const Constellation& c) {
  std::vector<std::uint8_t> out;
  out.reserve(indices.size() * c.bits_per_symbol());
  for (std::int32_t idx : indices) {
    const std::uint32_t label = c.bits(static_cast<std::size_t>(idx));
    for (unsigned b = c.bits_per_symbol(); b-- > 0;) out.push_back(static_cast<std::uint8_t>((label >> b) & 1u));
  }
  return out;
}

inline double ber(std::span<const std::uint8_t> reference, std::span<const std::uint8_t> estimate) {
  if (reference.size() != estimate.size()) throw std::domain_error("ber: length mismatch");
  if (reference.empty()) throw std::domain_error("ber: empty input");
  std::size_t errors = 0;
  for (std::size_t i = 0; i < reference.size(); ++i) errors += reference[i] != estimate[i];
  return static_cast<double>(errors) / static_cast<double>(reference.size());
}

inline double ser(std::span<const std::int32_t> reference, std::span<const std::int32_t> estimate) {
  if (reference.size() != estimate.size()) throw std::domain_error("ser: length mismatch");
  if (reference.empty()) throw std::domain_error("ser: empty input");
  std::size_t errors = 0;
  for (std::size_t i = 0; i < reference.size(); ++i) errors += reference[i] != estimate[i];
  return static_cast<double>(errors) / static_cast<double>(reference.size());
}

}  // namespace ccorr
