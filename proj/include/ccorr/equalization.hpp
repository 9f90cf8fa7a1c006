#pragma once

// One end-to-end equalization trial: source -> channel -> noise -> train ->
// decide on a fresh test sequence.

#include <cstdint>
#include <optional>
#include <vector>

#include "ccorr/channel.hpp"

namespace ccorr {

struct TrialSetup {
  Constellation constellation = make_16qam();
  ChannelModel channel = ChannelModel::reference();
  std::optional<NoiseSpec> noise;  // absent: noiseless
  std::size_t taps = 2;
  std::size_t train_len = 500;
  std::size_t test_len = 10000;

  // Mean power of the channel output for i.i.d. uniform symbols; this is the
  // signal power the GSNR refers to.
  double received_signal_power() const { return constellation.average_power() * channel.power_gain(); }
};

// One realization of the signal chain. Stage names follow the block diagram:
// A source symbols, B channel output, C received (B + noise).
struct SequenceData {
  std::vector<std::int32_t> indices;
  cvector source;     // A
  cvector channel;    // B
  cvector received;   // C
  std::vector<Regressor> regressors;
};

struct TrialData {
  std::uint64_t seed;
  SequenceData train;
  SequenceData test;
};

namespace detail {

inline SequenceData draw_sequence(const TrialSetup& setup, std::size_t n, Rng& rng) {
  SequenceData s;
  s.indices.resize(n);
  s.source.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    s.indices[k] = static_cast<std::int32_t>(rng.uniform_index(setup.constellation.size()));
    s.source[k] = setup.constellation.point(static_cast<std::size_t>(s.indices[k]));
  }
  s.channel = apply_channel(s.source, setup.channel);
  s.received = s.channel;
  return s;
}

inline void add_noise(SequenceData& s, const std::optional<NoiseSpec>& noise, Rng& rng) {
  if (noise) {
    const cvector eta = sample_alpha_stable(*noise, s.received.size(), rng);
    for (std::size_t k = 0; k < eta.size(); ++k) s.received[k] += eta[k];
  }
}

}  // namespace detail

// Deterministic in (setup, seed). Every algorithm evaluated on the same seed
// sees the same symbols and noise.
inline TrialData generate_trial(const TrialSetup& setup, std::uint64_t seed) {
  if (setup.train_len == 0 || setup.test_len == 0) throw std::domain_error("trial lengths must be >= 1");
  Rng rng(seed);
  TrialData data{seed, detail::draw_sequence(setup, setup.train_len, rng),
                 detail::draw_sequence(setup, setup.test_len, rng)};
  detail::add_noise(data.train, setup.noise, rng);
  detail::add_noise(data.test, setup.noise, rng);
  for (SequenceData* s : {&data.train, &data.test})
    s->regressors = build_regressors(s->received, s->source, setup.taps);
  return data;
}

struct EqualizationRun {
  Algorithm algo;
  std::size_t training_length = 0;
  std::uint64_t seed = 0;
  cvector final_w;
  double ber = 0.0;
  double ser = 0.0;
  bool diverged = false;
};

// Equalizer output w^H x over a regressor sequence.
inline cvector equalize(const cvector& w, std::span<const Regressor> regressors) {
  cvector y(regressors.size());
  for (std::size_t k = 0; k < regressors.size(); ++k) y[k] = output(w, regressors[k].x);
  return y;
}

// Trains `init` on the training sequence and measures BER/SER of the final
// weights on the test sequence. Divergence is recorded, not thrown.
inline EqualizationRun evaluate(FilterState init, const TrialData& data, const Constellation& constellation) {
  EqualizationRun run{init.algo, data.train.regressors.size(), data.seed, {}, 1.0, 1.0, false};
  try {
    for (const Regressor& r : data.train.regressors) update(init, r);
  } catch (const DivergenceError&) {
    run.diverged = true;
    return run;
  }
  run.final_w = init.w;
  const cvector y = equalize(run.final_w, data.test.regressors);
  const Decisions dec = decide(y, constellation);
  run.ber = ber(bits_of(data.test.indices, constellation), dec.bits);
  run.ser = ser(data.test.indices, dec.indices);
  return run;
}

}  // namespace ccorr
