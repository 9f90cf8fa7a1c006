// Acceptance checks. Prints one [PASS]/[FAIL] line per criterion and exits
// nonzero if any fails.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "ccorr/ccorr.hpp"

using namespace ccorr;
using namespace ccorr::harness;

namespace {

struct Verdict {
  bool ok;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

cvector eigen_ls(const std::vector<Regressor>& batch, double ridge = 0.0) {
  const auto n = static_cast<Eigen::Index>(batch.size());
  const auto l = static_cast<Eigen::Index>(batch.front().x.size());
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n + l, l);
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n + l);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < l; ++j)
      a(i, j) = std::conj(batch[static_cast<std::size_t>(i)].x[static_cast<std::size_t>(j)]);
    b(i) = std::conj(batch[static_cast<std::size_t>(i)].d);
  }
  for (Eigen::Index j = 0; j < l; ++j) a(n + j, j) = std::sqrt(ridge);
  const Eigen::VectorXcd w = a.colPivHouseholderQr().solve(b);
  return cvector(w.data(), w.data() + w.size());
}

std::vector<complex> random_complex(Rng& rng, std::size_t n) {
  std::vector<complex> v(n);
  for (complex& c : v) c = {rng.normal(), rng.normal()};
  return v;
}

std::vector<Regressor> exact_linear(Rng& rng, const cvector& w, std::size_t n) {
  std::vector<Regressor> out;
  for (std::size_t i = 0; i < n; ++i) {
    Regressor r{random_complex(rng, w.size()), {}};
    r.d = output(w, r.x);
    out.push_back(std::move(r));
  }
  return out;
}

Verdict ac1() {
  const PropertySuiteOptions opt;
  std::string detail;
  bool ok = true;
  for (const PropertyCheck& c :
       {check_symmetry(opt), check_boundedness(opt), check_real_relation(opt), check_polar_form(opt)}) {
    ok = ok && c.passed;
    detail += (detail.empty() ? "" : "; ") + c.name + ": " + c.detail;
  }
  return {ok, detail};
}

Verdict ac2() {
  Rng rng(2002);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 1 + rng.uniform_index(32);
    const PlaneIntegral p = plane_integral_check(ComplexSeries(random_complex(rng, n), random_complex(rng, n)), 1.0);
    worst = std::max(worst, std::abs(p.lhs - p.rhs));
  }
  return {worst <= 1e-6, "max |lhs-rhs| " + fmt("%.3e", worst) + " over 20 datasets"};
}

Verdict ac3() {
  const PropertyCheck slope = check_large_sigma({});
  Rng rng(3003);
  const cvector w_true = random_complex(rng, 2);
  auto batch = exact_linear(rng, w_true, 40);
  for (Regressor& r : batch) r.d += complex(0.5 * rng.normal(), 0.5 * rng.normal());
  const double ridge = 1e-3;
  const cvector w = mccc_map(batch, KernelSpec(1e4), cvector(2), ridge);
  double trace = 0.0;
  for (const Regressor& r : batch) trace += std::norm(r.x[0]) + std::norm(r.x[1]);
  const cvector ls = eigen_ls(batch, ridge * trace / 2.0);
  const double rel = distance(w, ls) / norm2(ls);
  return {slope.passed && rel <= 1e-6, slope.detail + "; sigma=1e4 vs ridge-LS relative error " + fmt("%.3e", rel)};
}

Verdict ac4() {
  Rng rng(4004);
  std::vector<complex> a = random_complex(rng, 10);
  std::vector<complex> b = a;
  for (std::size_t i = 4; i < 10; ++i) b[i] += complex(0.0, 0.2 + rng.uniform());
  const std::vector<double> sigmas{1e-2, 1e-4, 1e-6};
  const double limit = small_sigma_limit(ComplexSeries(a, b), sigmas).back();
  const bool limit_ok = std::abs(limit - 0.4) <= 1e-12;
  const PropertyCheck consistency = check_consistency({});
  return {limit_ok && consistency.passed,
          "equal-pair fraction " + fmt("%.15g", limit) + " (expected 0.4); " + consistency.detail};
}

Verdict ac5() {
  const cvector w_true{complex(1.1, -1.1), complex(0.9, -0.2)};
  const Constellation qam = make_16qam();
  Rng rng(5005);
  std::vector<Regressor> batch;
  complex prev{};
  for (int k = 0; k < 500; ++k) {
    const complex a = qam.point(rng.uniform_index(qam.size()));
    Regressor r{{a, prev}, {}};
    r.d = output(w_true, r.x);
    batch.push_back(r);
    prev = a;
  }
  const double tol = 1e-10;
  const auto [state, report] = mccc_fixed_point(batch, KernelSpec(1.0), cvector(2), tol, 10);
  const double err = distance(state.w, w_true);

  // Self-consistency on noisy data, checked against an independent solve.
  Rng noise_rng(5006);
  auto noisy = batch;
  const cvector eta = sample_alpha_stable({1.5, 0.0, 0.3, {}}, noisy.size(), noise_rng);
  for (std::size_t i = 0; i < noisy.size(); ++i) noisy[i].d += eta[i];
  const KernelSpec spec(1.0);
  const auto [noisy_state, noisy_report] = mccc_fixed_point(noisy, spec, cvector(2), tol, 200);
  std::vector<Regressor> weighted;
  for (const Regressor& r : noisy) {
    const double g = std::sqrt(complex_gaussian_kernel(r.d - output(noisy_state.w, r.x), spec));
    Regressor s = r;
    for (complex& x : s.x) x *= g;
    s.d *= g;
    weighted.push_back(s);
  }
  const double residual = distance(eigen_ls(weighted), noisy_state.w);
  const double bound = tol * (1.0 + norm2(noisy_state.w));
  const bool ok = report.converged && report.iterations <= 10 && err <= 1e-10 && noisy_report.converged &&
                  residual <= bound;
  return {ok, "noiseless error " + fmt("%.3e", err) + " in " + std::to_string(report.iterations) +
                  " iterations; self-consistency residual " + fmt("%.3e", residual) + " <= " + fmt("%.3e", bound)};
}

Verdict ac6() {
  Rng rng(6006);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const cvector w_true = random_complex(rng, 3);
    const auto batch = exact_linear(rng, w_true, 12);
    FilterState s = FilterState::crls(3, 1.0);
    for (const Regressor& r : batch) s = crls_step(std::move(s), r);
    worst = std::max(worst, distance(s.w, eigen_ls(batch)));
  }
  const FilterState c = clms_step(FilterState::clms(1, 0.01), {{complex(1.0)}, complex(1.0)});
  const FilterState l = lad_step(FilterState::lad(1, 0.01), {{complex(1.0)}, complex(3.0, 4.0)});
  const bool hand = c.w[0] == complex(0.01, 0.0) && std::abs(l.w[0] - complex(0.01, -0.01)) <= 1e-17;
  return {worst <= 1e-8 && hand, "CRLS vs LS max error " + fmt("%.3e", worst) + "; CLMS/LAD hand steps " +
                                     (hand ? "exact" : "wrong")};
}

Verdict ac7() {
  const cvector g = sample_alpha_stable({2.0, 0.0, 1.0, {}}, 1000000, 7007);
  double var = 0.0;
  for (const complex& z : g) var += z.real() * z.real();
  var /= static_cast<double>(g.size());
  const double var_rel = std::abs(var / 2.0 - 1.0);

  const double gamma = 1.5;
  const cvector c = sample_alpha_stable({1.0, 0.0, gamma, {}}, 1000000, 7008);
  std::vector<double> mag;
  for (const complex& z : c) mag.push_back(std::abs(z.real()));
  std::sort(mag.begin(), mag.end());
  double q_rel = 0.0;
  for (double p : {0.25, 0.5, 0.75, 0.9}) {
    const double q = mag[static_cast<std::size_t>(p * static_cast<double>(mag.size()))];
    q_rel = std::max(q_rel, std::abs(q / (gamma * std::tan(std::numbers::pi * p / 2)) - 1.0));
  }

  double round_trip = 0.0;
  for (double db = -10.0; db <= 30.0; db += 0.5)
    round_trip = std::max(round_trip, std::abs(gsnr_from_power(10.0, calibrate_gamma(10.0, db)) - db));
  return {var_rel <= 0.05 && q_rel <= 0.02 && round_trip <= 1e-12,
          "alpha=2 variance rel err " + fmt("%.4f", var_rel) + "; Cauchy quantile rel err " + fmt("%.4f", q_rel) +
              "; GSNR round trip " + fmt("%.1e", round_trip) + " dB"};
}

const AggregateRow& find_row(const std::vector<AggregateRow>& rows, const std::string& algo, double gsnr,
                             std::optional<double> sigma = {}) {
  for (const AggregateRow& r : rows)
    if (r.algo == algo && r.gsnr_db == gsnr && r.sigma == sigma) return r;
  throw std::runtime_error("missing row " + algo);
}

Verdict ac8() {
  SweepConfig cfg;
  cfg.algorithms = {Algorithm::MCCC, Algorithm::CRLS, Algorithm::CLMS, Algorithm::LAD};
  cfg.mccc_sigmas = {1.0};
  cfg.alpha = {1.5};
  cfg.gsnr_db = {10.0};
  cfg.trials = 1000;
  const auto rows = run_sweep(cfg).rows;
  const AggregateRow& m = find_row(rows, "mccc", 10.0, 1.0);
  const AggregateRow& r = find_row(rows, "crls", 10.0);
  const AggregateRow& c = find_row(rows, "clms", 10.0);
  const AggregateRow& l = find_row(rows, "lad", 10.0);
  const bool mean_ok = m.ber_mean < std::min(r.ber_mean, c.ber_mean);
  const bool std_ok = m.ber_std < std::min({r.ber_std, c.ber_std, l.ber_std});
  std::string detail;
  for (const AggregateRow* row : {&m, &r, &c, &l})
    detail += row->algo + " " + fmt("%.5f", row->ber_mean) + "+-" + fmt("%.5f", row->ber_std) + " ";
  return {mean_ok && std_ok, detail + "(mean ±std, 1000 trials)"};
}

Verdict ac9() {
  SweepConfig cfg;
  cfg.algorithms = {Algorithm::MCCC, Algorithm::CRLS};
  cfg.mccc_sigmas = {100.0};
  cfg.alpha = {1.5};
  cfg.trials = 1000;
  const auto rows = run_sweep(cfg).rows;
  bool ok = true;
  double worst = 0.0;
  for (double gsnr : cfg.gsnr_db) {
    const AggregateRow& m = find_row(rows, "mccc", gsnr, 100.0);
    const AggregateRow& r = find_row(rows, "crls", gsnr);
    const double n = static_cast<double>(cfg.trials);
    const double se = std::sqrt(m.ber_std * m.ber_std / n + r.ber_std * r.ber_std / n);
    const double z = std::abs(m.ber_mean - r.ber_mean) / se;
    worst = std::max(worst, z);
    ok = ok && z <= 2.0;
  }
  return {ok, "max |mccc(100) - crls| / SE = " + fmt("%.3f", worst) + " over GSNR 10..20 dB"};
}

Verdict ac10() {
  SweepConfig cfg = parse_config("mccc.sigma = 1, 10\ngsnr_db = 10, 16\nalpha = 1.2, 1.8\ntrials = 8\n"
                                 "train_len = 200\ntest_len = 1000\nmaster_seed = 2024\n");
  const std::string serial = to_csv(run_sweep(cfg, {1}).rows);
  const std::string again = to_csv(run_sweep(cfg, {1}).rows);
  const std::string parallel = to_csv(run_sweep(cfg, {4}).rows);
  const bool ok = serial == again && serial == parallel;
  return {ok, std::to_string(serial.size()) + " CSV bytes, 1 vs 1 vs 4 threads " + (ok ? "identical" : "differ")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"AC1 property suite", ac1},        {"AC2 plane identity", ac2},
      {"AC3 large-sigma limit", ac3},     {"AC4 small-sigma and consistency", ac4},
      {"AC5 fixed-point correctness", ac5}, {"AC6 baseline oracles", ac6},
      {"AC7 noise generator", ac7},       {"AC8 ordering at alpha=1.5, 10 dB", ac8},
      {"AC9 sigma=100 tracks CRLS", ac9}, {"AC10 determinism", ac10},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v{false, ""};
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %s  (%.1f s)  %s\n", v.ok ? "PASS" : "FAIL", name.c_str(), secs, v.detail.c_str());
    std::fflush(stdout);
    failed += !v.ok;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
