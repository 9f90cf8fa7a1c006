#pragma once

// Seeded Monte-Carlo sweeps over (alpha, GSNR, algorithm, sigma).
//
// Each (alpha, GSNR) cell runs `trials` independent trials. Trial t of cell c
// draws its data from derive_seed(derive_seed(master_seed, c), t), and every
// algorithm of the cell is evaluated on that same data. Workers pull trial
// indices from a shared counter and write into preallocated slots; the
// reduction runs afterwards in trial order, so results do not depend on the
// thread count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ccorr/harness/config.hpp"

namespace ccorr::harness {

struct AggregateRow {
  std::string algo;
  std::optional<double> sigma;
  double alpha = 0.0;
  double gsnr_db = 0.0;
  double ber_mean = 0.0;
  double ber_std = 0.0;
  std::size_t trials = 0;
  std::size_t divergent = 0;

  bool operator==(const AggregateRow&) const = default;
};

struct TrialRecord {
  std::string algo;
  std::optional<double> sigma;
  double alpha = 0.0;
  double gsnr_db = 0.0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double ber = 0.0;
  double ser = 0.0;
  bool diverged = false;
};

struct SweepResult {
  std::vector<AggregateRow> rows;
  std::vector<TrialRecord> trials;  // row-major: rows[i] owns trials[i*T, (i+1)*T)
};

struct RunOptions {
  std::size_t threads = 0;  // 0: HARNESS_THREADS, else hardware concurrency
};

// HARNESS_THREADS (integer >= 1) caps parallelism when set.
inline std::size_t resolve_threads(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HARNESS_THREADS")) {
    const std::string text(env);
    char* end = nullptr;
    const long v = std::strtol(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0' || v < 1) throw ConfigError("HARNESS_THREADS", "must be an integer >= 1");
    return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Mean and sample standard deviation (n - 1) of the non-divergent trials, in
// trial order. A cell where every trial diverged reports mean 1 and std 0.
inline void aggregate(AggregateRow& row, const std::vector<TrialRecord>& records) {
  std::vector<double> bers;
  bers.reserve(records.size());
  row.trials = records.size();
  row.divergent = 0;
  for (const TrialRecord& r : records) {
    if (r.diverged)
      ++row.divergent;
    else
      bers.push_back(r.ber);
  }
  if (bers.empty()) {
    row.ber_mean = 1.0;
    row.ber_std = 0.0;
    return;
  }
  const double mean = ccorr::detail::pairwise_mean(bers.size(), [&](std::size_t i) { return bers[i]; });
  double var = 0.0;
  if (bers.size() > 1) {
    var = ccorr::detail::pairwise_sum(0, bers.size(), [&](std::size_t i) { return (bers[i] - mean) * (bers[i] - mean); }) /
          static_cast<double>(bers.size() - 1);
  }
  row.ber_mean = mean;
  row.ber_std = std::sqrt(var);
}

namespace detail {

template <typename Work>
void parallel_for(std::size_t count, std::size_t threads, const Work& work) {
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          work(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(count);
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

inline SweepResult run_cells(const SweepConfig& cfg, const std::vector<AlgorithmEntry>& entries,
                             const RunOptions& options) {
  const std::size_t n_gsnr = cfg.gsnr_db.size();
  const std::size_t n_cells = cfg.alpha.size() * n_gsnr;
  const std::size_t n_algo = entries.size();
  const std::size_t n_trials = cfg.trials;

  std::vector<TrialSetup> setups;
  setups.reserve(n_cells);
  for (std::size_t c = 0; c < n_cells; ++c) setups.push_back(cfg.setup(cfg.alpha[c / n_gsnr], cfg.gsnr_db[c % n_gsnr]));
  std::vector<FilterState> initial;
  for (const AlgorithmEntry& e : entries) initial.push_back(cfg.initial_state(e));

  // records[(cell * n_algo + a) * n_trials + t]
  std::vector<TrialRecord> records(n_cells * n_algo * n_trials);
  parallel_for(n_cells * n_trials, resolve_threads(options.threads), [&](std::size_t job) {
    const std::size_t cell = job / n_trials;
    const std::size_t trial = job % n_trials;
    const std::uint64_t seed = derive_seed(derive_seed(cfg.master_seed, cell), trial);
    const TrialData data = generate_trial(setups[cell], seed);
    for (std::size_t a = 0; a < n_algo; ++a) {
      const EqualizationRun run = evaluate(initial[a], data, setups[cell].constellation);
      TrialRecord& rec = records[(cell * n_algo + a) * n_trials + trial];
      rec.algo = std::string(to_string(entries[a].algo));
      rec.sigma = entries[a].sigma;
      rec.alpha = cfg.alpha[cell / n_gsnr];
      rec.gsnr_db = cfg.gsnr_db[cell % n_gsnr];
      rec.trial = trial;
      rec.seed = seed;
      rec.ber = run.ber;
      rec.ser = run.ser;
      rec.diverged = run.diverged;
    }
  });

  SweepResult result;
  result.rows.reserve(n_cells * n_algo);
  for (std::size_t cell = 0; cell < n_cells; ++cell) {
    for (std::size_t a = 0; a < n_algo; ++a) {
      AggregateRow row;
      row.algo = std::string(to_string(entries[a].algo));
      row.sigma = entries[a].sigma;
      row.alpha = cfg.alpha[cell / n_gsnr];
      row.gsnr_db = cfg.gsnr_db[cell % n_gsnr];
      const auto begin = records.begin() + static_cast<std::ptrdiff_t>((cell * n_algo + a) * n_trials);
      aggregate(row, std::vector<TrialRecord>(begin, begin + static_cast<std::ptrdiff_t>(n_trials)));
      result.rows.push_back(std::move(row));
    }
  }
  result.trials = std::move(records);
  return result;
}

}  // namespace detail

// Rows are ordered alpha-major, then GSNR, then algorithm (MCCC expanded per
// sigma) in configured order.
inline SweepResult run_sweep(const SweepConfig& cfg, const RunOptions& options = {}) {
  cfg.validate();
  return detail::run_cells(cfg, cfg.expanded_algorithms(), options);
}

// BER surface of MCCC over a (sigma x GSNR) grid at a single alpha.
struct KernelSurface {
  std::vector<double> sigmas;
  std::vector<double> gsnr_db;
  double alpha = 0.0;
  std::vector<AggregateRow> rows;  // long form, sigma-major

  double ber_mean(std::size_t sigma_index, std::size_t gsnr_index) const {
    return rows.at(sigma_index * gsnr_db.size() + gsnr_index).ber_mean;
  }
};

inline KernelSurface kernel_surface(SweepConfig cfg, const std::vector<double>& sigmas,
                                    const std::vector<double>& gsnr_db, const RunOptions& options = {}) {
  if (sigmas.empty()) throw ConfigError("surface.sigma", "must be non-empty");
  if (gsnr_db.empty()) throw ConfigError("gsnr_db", "must be non-empty");
  if (cfg.alpha.size() != 1) throw ConfigError("alpha", "a kernel surface needs exactly one alpha");
  cfg.algorithms = {Algorithm::MCCC};
  cfg.mccc_sigmas = sigmas;
  cfg.gsnr_db = gsnr_db;
  cfg.validate();
  SweepResult sweep = detail::run_cells(cfg, cfg.expanded_algorithms(), options);

  KernelSurface surface{sigmas, gsnr_db, cfg.alpha.front(), {}};
  // Sweep rows are GSNR-major; reorder to sigma-major.
  for (std::size_t s = 0; s < sigmas.size(); ++s)
    for (std::size_t g = 0; g < gsnr_db.size(); ++g) surface.rows.push_back(sweep.rows[g * sigmas.size() + s]);
  return surface;
}

inline KernelSurface kernel_surface(const SweepConfig& cfg, const RunOptions& options = {}) {
  return kernel_surface(cfg, cfg.surface_sigmas.empty() ? cfg.mccc_sigmas : cfg.surface_sigmas, cfg.gsnr_db, options);
}

}  // namespace ccorr::harness
