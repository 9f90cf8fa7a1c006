#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace ccorr {

// SplitMix64 finalizer; used to derive independent stream seeds from counters.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Counter-based seed for stream `index` under `master`. Order-independent, so
// parallel workers reproduce the serial result.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

// Deterministic generator. Variates are built from raw 64-bit engine output
// rather than <random> distributions, whose algorithms are
// implementation-defined, so a seed reproduces bit-identical streams on every
// standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (0, 1).
  double uniform_open() {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return u;
  }

  // Uniform on (-pi/2, pi/2).
  double uniform_half_angle() { return std::numbers::pi * (uniform_open() - 0.5); }

  // Exp(1).
  double exponential() { return -std::log(uniform_open()); }

  // Standard normal via Box-Muller (one of the pair is discarded).
  double normal() {
    const double r = std::sqrt(-2.0 * std::log(uniform_open()));
    return r * std::cos(2.0 * std::numbers::pi * uniform());
  }

  // Uniform integer on [0, n), n >= 1. Rejection removes modulo bias.
  std::uint64_t uniform_index(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ccorr
