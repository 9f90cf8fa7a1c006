#pragma once

// Command-line front end. Exit codes: 0 success, 1 validation failure
// (failed property check or invalid config), 2 usage or runtime error.

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccorr/harness/config.hpp"
#include "ccorr/harness/emit.hpp"
#include "ccorr/harness/properties.hpp"
#include "ccorr/harness/sweep.hpp"

namespace ccorr::harness {

namespace detail {

inline std::string format_complex(const complex& z) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "j";
  return os.str();
}

inline std::string head(std::span<const complex> v, std::size_t n = 4) {
  std::string out;
  for (std::size_t i = 0; i < std::min(n, v.size()); ++i) out += (i ? " " : "") + format_complex(v[i]);
  return out;
}

inline double mean_power(std::span<const complex> v) {
  return ccorr::detail::pairwise_mean(v.size(), [&](std::size_t i) { return std::norm(v[i]); });
}

struct DemoOptions {
  std::uint64_t seed = 42;
  double alpha = 1.8;
  double gsnr_db = 20.0;
  double sigma = 1.0;
  std::size_t train_len = 500;
  std::size_t test_len = 2000;
};

// Single MCCC run printing the signal at each stage of the chain.
inline void run_demo(const DemoOptions& o, std::ostream& out) {
  SweepConfig cfg;
  cfg.train_len = o.train_len;
  cfg.test_len = o.test_len;
  cfg.alpha = {o.alpha};
  cfg.gsnr_db = {o.gsnr_db};
  cfg.validate();
  const TrialSetup setup = cfg.setup(o.alpha, o.gsnr_db);
  const TrialData data = generate_trial(setup, o.seed);
  const EqualizationRun run = evaluate(cfg.initial_state({Algorithm::MCCC, o.sigma}), data, setup.constellation);

  const SequenceData& t = data.test;
  out << std::fixed << std::setprecision(4);
  out << "demo: 16-QAM, channel [" << format_complex(setup.channel.taps()[0]) << ", "
      << format_complex(setup.channel.taps()[1]) << "], alpha=" << o.alpha << ", GSNR=" << o.gsnr_db
      << " dB, MCCC sigma=" << o.sigma << ", seed=" << o.seed << "\n";
  out << "train " << data.train.source.size() << " symbols, test " << t.source.size() << " symbols\n";
  out << "A source     power " << mean_power(t.source) << "  " << head(t.source) << "\n";
  out << "B channel    power " << mean_power(t.channel) << "  " << head(t.channel) << "\n";
  out << "C received   power " << mean_power(t.received) << "  gamma " << setup.noise->gamma << "  "
      << head(t.received) << "\n";
  if (run.diverged) {
    out << "D equalized  diverged\n";
    return;
  }
  const cvector y = equalize(run.final_w, t.regressors);
  const Decisions dec = decide(y, setup.constellation);
  out << "D equalized  " << head(y) << "\n";
  out << "  decided    " << head(dec.symbols) << "\n";
  out << "  weights    " << head(run.final_w) << "\n";
  out << "  BER " << std::setprecision(6) << run.ber << "  SER " << run.ser << "\n";
}

inline int run_sweep_command(const std::string& config_path, bool full, const std::string& output,
                             const std::string& format, const std::string& trial_log, std::size_t threads,
                             std::ostream& out) {
  SweepConfig cfg = load_config(config_path);
  if (full) cfg.trials = 100000;
  if (!output.empty()) cfg.output_path = output;
  if (!format.empty()) cfg.output_format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  const SweepResult result = run_sweep(cfg, {threads});
  if (cfg.output_path.empty())
    out << render(result.rows, cfg.output_format);
  else
    emit_results(result.rows, cfg.output_format, cfg.output_path);
  if (!trial_log.empty()) write_file(trial_log, trial_log_csv(result.trials));
  return 0;
}

inline int run_surface_command(const std::string& config_path, const std::string& output, std::size_t threads,
                               std::ostream& out) {
  SweepConfig cfg = load_config(config_path);
  if (!output.empty()) cfg.output_path = output;
  const KernelSurface surface = kernel_surface(cfg, {threads});
  if (cfg.output_path.empty())
    out << render(surface.rows, cfg.output_format);
  else
    emit_results(surface.rows, cfg.output_format, cfg.output_path);
  return 0;
}

inline int run_validate_command(std::ostream& out) {
  bool all = true;
  for (const PropertyCheck& c : validate_properties()) {
    out << "Property " << c.id << "  " << std::left << std::setw(32) << c.name << std::right
        << (c.passed ? "PASS" : "FAIL") << "  " << c.detail << "\n";
    all = all && c.passed;
  }
  return all ? 0 : 1;
}

}  // namespace detail

inline int cli_main(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complex correntropy and MCCC channel-equalization benchmark"};
  app.require_subcommand(1);

  std::string config_path, output, format, trial_log;
  bool full = false;
  std::size_t threads = 0;
  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo BER sweep over algorithms, sigma, GSNR and alpha");
  sweep->add_option("--config", config_path, "Config file (key = value)")->required();
  sweep->add_flag("--full", full, "Run 100000 trials per cell");
  sweep->add_option("--output", output, "Output path (overrides output.path; stdout when empty)");
  sweep->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--trial-log", trial_log, "Write per-trial BER/SER records as CSV");
  sweep->add_option("--threads", threads, "Worker threads (default HARNESS_THREADS or all cores)");

  auto* surface = app.add_subcommand("surface", "MCCC BER surface over kernel size x GSNR");
  surface->add_option("--config", config_path, "Config file (key = value)")->required();
  surface->add_option("--output", output, "Output path (long-form CSV)");
  surface->add_option("--threads", threads, "Worker threads");

  auto* validate = app.add_subcommand("validate-properties", "Check the seven correntropy properties");

  detail::DemoOptions demo_opts;
  auto* demo = app.add_subcommand("demo", "Single equalization run with per-stage summaries");
  demo->add_option("--seed", demo_opts.seed, "Trial seed");
  demo->add_option("--alpha", demo_opts.alpha, "Noise stability index");
  demo->add_option("--gsnr", demo_opts.gsnr_db, "GSNR in dB");
  demo->add_option("--sigma", demo_opts.sigma, "MCCC kernel size");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (*sweep) return detail::run_sweep_command(config_path, full, output, format, trial_log, threads, out);
    if (*surface) return detail::run_surface_command(config_path, output, threads, out);
    if (*validate) return detail::run_validate_command(out);
    if (*demo) {
      detail::run_demo(demo_opts, out);
      return 0;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

inline int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  return cli_main(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace ccorr::harness
