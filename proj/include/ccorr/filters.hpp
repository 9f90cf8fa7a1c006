#pragma once

// Adaptive linear filters for the model y = w^H x over complex regressors:
// the maximum complex correntropy (MCCC) fixed-point solver and the CLMS,
// CRLS and LAD baselines.

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ccorr/correntropy.hpp"
#include "ccorr/errors.hpp"
#include "ccorr/linalg.hpp"

namespace ccorr {

enum class Algorithm { MCCC, CLMS, CRLS, LAD };

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::MCCC: return "mccc";
    case Algorithm::CLMS: return "clms";
    case Algorithm::CRLS: return "crls";
    case Algorithm::LAD: return "lad";
  }
  return "unknown";
}

struct Regressor {
  cvector x;  // input snapshot, length L
  complex d;  // desired output
};

// Weights with norm above this are treated as divergence.
inline constexpr double kDivergenceNorm = 1e12;

struct MCCCConfig {
  KernelSpec kernel{1.0};
  double tol = 1e-10;
  std::size_t max_iter = 100;
  // Relative ridge: the solve uses eps = ridge * trace(M) / L.
  double ridge = 1e-8;
  // 0 keeps every sample seen so far.
  std::size_t window_length = 0;
  std::size_t inner_iterations = 1;
};

struct MCCCAux {
  MCCCConfig config;
  std::vector<Regressor> window;
};

struct CRLSAux {
  CMatrix p;  // inverse correlation estimate, Hermitian
  double lambda;
};

struct GradientAux {
  double mu;
};

struct FilterState {
  Algorithm algo;
  cvector w;
  std::variant<MCCCAux, CRLSAux, GradientAux> aux;

  std::size_t taps() const noexcept { return w.size(); }

  static FilterState mccc(std::size_t taps, MCCCConfig config = {}) {
    return {Algorithm::MCCC, cvector(checked_taps(taps)), MCCCAux{config, {}}};
  }
  static FilterState clms(std::size_t taps, double mu = 0.01) {
    return {Algorithm::CLMS, cvector(checked_taps(taps)), GradientAux{mu}};
  }
  static FilterState lad(std::size_t taps, double mu = 0.01) {
    return {Algorithm::LAD, cvector(checked_taps(taps)), GradientAux{mu}};
  }
  // P starts at delta^-1 I.
  static FilterState crls(std::size_t taps, double lambda = 1.0, double delta = 1e-8) {
    if (!(lambda > 0.0 && lambda <= 1.0)) throw std::domain_error("crls forgetting factor must lie in (0, 1]");
    if (!(delta > 0.0)) throw std::domain_error("crls delta must be > 0");
    return {Algorithm::CRLS, cvector(checked_taps(taps)), CRLSAux{CMatrix::identity(taps, 1.0 / delta), lambda}};
  }

 private:
  static std::size_t checked_taps(std::size_t taps) {
    if (taps == 0) throw std::domain_error("filter needs at least one tap");
    return taps;
  }
};

struct SolverReport {
  std::size_t iterations = 0;
  double final_weight_delta = 0.0;  // ||w_{t+1} - w_t||_2
  bool converged = false;
};

inline void check_weights(const cvector& w) {
  if (!all_finite(w)) throw DivergenceError("filter weights became non-finite");
  if (norm2(w) > kDivergenceNorm) throw DivergenceError("filter weight norm exceeded divergence guard");
}

inline complex output(const cvector& w, const cvector& x) { return inner(w, x); }

// Sample objective: mean complex Gaussian kernel of the errors d - w^H x.
inline double mccc_objective(std::span<const Regressor> batch, const KernelSpec& spec, const cvector& w) {
  return spec.peak() * detail::pairwise_mean(batch.size(), [&](std::size_t n) {
           const double a = std::norm(batch[n].d - output(w, batch[n].x));
           return std::exp(-a / (2.0 * spec.sigma() * spec.sigma()));
         });
}

// One application of the fixed-point map
//
//   w' = [sum_n G(e_n) x_n x_n^H + eps I]^-1 [sum_n G(e_n) d_n^* x_n + eps w],
//   e_n = d_n - w^H x_n,  eps = ridge * trace / L.
//
// The eps * w term on the right keeps the solutions of the unregularized map
// as exact fixed points; from w = 0 the step is plain ridge-weighted LS.
// Kernel weights are rescaled so the largest is 1 (the common factor cancels),
// which keeps the system well scaled when every error is far in the tail.
inline cvector mccc_map(std::span<const Regressor> batch, const KernelSpec& spec, const cvector& w, double ridge) {
  const std::size_t taps = w.size();
  const double inv = 1.0 / (2.0 * spec.sigma() * spec.sigma());
  double min_exponent = INFINITY;
  for (const Regressor& r : batch) min_exponent = std::min(min_exponent, std::norm(r.d - output(w, r.x)) * inv);

  CMatrix m(taps);
  cvector v(taps);
  for (const Regressor& r : batch) {
    const double g = std::exp(-(std::norm(r.d - output(w, r.x)) * inv - min_exponent));
    const complex gd = g * std::conj(r.d);
    for (std::size_t i = 0; i < taps; ++i) {
      v[i] += gd * r.x[i];
      const complex gxi = g * r.x[i];
      for (std::size_t j = 0; j < taps; ++j) m(i, j) += gxi * std::conj(r.x[j]);
    }
  }
  const double trace = m.trace_real();
  if (ridge > 0.0) {
    if (trace == 0.0) return w;  // no excitation in the batch
    const double eps = ridge * trace / static_cast<double>(taps);
    for (std::size_t i = 0; i < taps; ++i) {
      m(i, i) += eps;
      v[i] += eps * w[i];
    }
  }
  return hermitian_solve(m, v);
}

// Batch fixed-point solve from init_w until ||delta w||_2 <= tol or max_iter.
inline std::pair<FilterState, SolverReport> mccc_fixed_point(std::span<const Regressor> batch, const KernelSpec& spec,
                                                             cvector init_w, double tol = 1e-10,
                                                             std::size_t max_iter = 100, double ridge = 1e-8) {
  const std::size_t taps = init_w.size();
  if (taps == 0) throw std::domain_error("mccc: empty weight vector");
  if (batch.size() < taps) throw std::domain_error("mccc: batch length must be >= number of taps");
  if (!(tol > 0.0)) throw std::domain_error("mccc: tolerance must be > 0");
  if (ridge < 0.0) throw std::domain_error("mccc: ridge must be >= 0");
  for (const Regressor& r : batch)
    if (r.x.size() != taps) throw std::domain_error("mccc: regressor length differs from weight length");

  SolverReport report;
  cvector w = std::move(init_w);
  while (report.iterations < max_iter) {
    cvector next = mccc_map(batch, spec, w, ridge);
    report.final_weight_delta = distance(next, w);
    w = std::move(next);
    ++report.iterations;
    check_weights(w);
    if (report.final_weight_delta <= tol) {
      report.converged = true;
      break;
    }
  }

  MCCCConfig config;
  config.kernel = spec;
  config.tol = tol;
  config.max_iter = max_iter;
  config.ridge = ridge;
  FilterState state{Algorithm::MCCC, std::move(w), MCCCAux{config, {batch.begin(), batch.end()}}};
  return {std::move(state), report};
}

namespace detail {

template <typename Aux>
Aux& aux_for(FilterState& state, Algorithm expected) {
  if (state.algo != expected) throw std::invalid_argument("filter step applied to the wrong algorithm state");
  return std::get<Aux>(state.aux);
}

inline void check_regressor(const FilterState& state, const Regressor& r) {
  if (r.x.size() != state.w.size()) throw std::invalid_argument("regressor length differs from filter length");
}

// Complex sign: sign(Re e) + j sign(Im e), sign(0) = 0.
inline complex csign(const complex& e) {
  auto sgn = [](double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); };
  return {sgn(e.real()), sgn(e.imag())};
}

inline void clms_update(FilterState& state, const Regressor& r) {
  const double mu = aux_for<GradientAux>(state, Algorithm::CLMS).mu;
  check_regressor(state, r);
  const complex e = r.d - output(state.w, r.x);
  for (std::size_t i = 0; i < state.w.size(); ++i) state.w[i] += mu * r.x[i] * std::conj(e);
  check_weights(state.w);
}

inline void lad_update(FilterState& state, const Regressor& r) {
  const double mu = aux_for<GradientAux>(state, Algorithm::LAD).mu;
  check_regressor(state, r);
  const complex s = csign(r.d - output(state.w, r.x));
  for (std::size_t i = 0; i < state.w.size(); ++i) state.w[i] += mu * r.x[i] * std::conj(s);
  check_weights(state.w);
}

inline void crls_update(FilterState& state, const Regressor& r) {
  CRLSAux& aux = aux_for<CRLSAux>(state, Algorithm::CRLS);
  check_regressor(state, r);
  const std::size_t taps = state.w.size();
  const cvector px = matvec(aux.p, r.x);
  const double denom = aux.lambda + inner(r.x, px).real();
  cvector gain(taps);
  for (std::size_t i = 0; i < taps; ++i) gain[i] = px[i] / denom;
  const complex e = r.d - output(state.w, r.x);
  for (std::size_t i = 0; i < taps; ++i) state.w[i] += gain[i] * std::conj(e);
  // P <- (P - k (P x)^H) / lambda, using x^H P = (P x)^H for Hermitian P.
  for (std::size_t i = 0; i < taps; ++i)
    for (std::size_t j = 0; j < taps; ++j) aux.p(i, j) = (aux.p(i, j) - gain[i] * std::conj(px[j])) / aux.lambda;
  aux.p.symmetrize();
  check_weights(state.w);
}

inline void mccc_update(FilterState& state, const Regressor& r) {
  MCCCAux& aux = aux_for<MCCCAux>(state, Algorithm::MCCC);
  check_regressor(state, r);
  aux.window.push_back(r);
  if (aux.config.window_length > 0 && aux.window.size() > aux.config.window_length)
    aux.window.erase(aux.window.begin());
  for (std::size_t it = 0; it < aux.config.inner_iterations; ++it) {
    cvector next = mccc_map(aux.window, aux.config.kernel, state.w, aux.config.ridge);
    const double delta = distance(next, state.w);
    state.w = std::move(next);
    check_weights(state.w);
    if (delta <= aux.config.tol) break;
  }
}

}  // namespace detail

inline FilterState clms_step(FilterState state, const Regressor& r) {
  detail::clms_update(state, r);
  return state;
}

inline FilterState lad_step(FilterState state, const Regressor& r) {
  detail::lad_update(state, r);
  return state;
}

inline FilterState crls_step(FilterState state, const Regressor& r) {
  detail::crls_update(state, r);
  return state;
}

// Appends r to the sliding window and runs the configured number of
// warm-started fixed-point iterations.
inline FilterState mccc_step(FilterState state, const Regressor& r) {
  detail::mccc_update(state, r);
  return state;
}

// In-place dispatch on the state's algorithm.
inline void update(FilterState& state, const Regressor& r) {
  switch (state.algo) {
    case Algorithm::MCCC: detail::mccc_update(state, r); break;
    case Algorithm::CLMS: detail::clms_update(state, r); break;
    case Algorithm::CRLS: detail::crls_update(state, r); break;
    case Algorithm::LAD: detail::lad_update(state, r); break;
  }
}

struct TrainingResult {
  FilterState final_state;
  std::vector<cvector> snapshots;  // weights after every sample
};

inline TrainingResult run_training(FilterState state, std::span<const Regressor> stream) {
  if (stream.empty()) throw std::domain_error("run_training: empty stream");
  std::vector<cvector> snapshots;
  snapshots.reserve(stream.size());
  for (const Regressor& r : stream) {
    update(state, r);
    snapshots.push_back(state.w);
  }
  return {std::move(state), std::move(snapshots)};
}

}  // namespace ccorr
