#pragma once

// Sweep configuration: flat UTF-8 `key = value` text with dotted keys.
// Lists are comma separated; `#` starts a comment. See README for the key
// reference.

#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ccorr/equalization.hpp"
#include "ccorr/errors.hpp"

namespace ccorr::harness {

enum class OutputFormat { Csv, Json };

// What the GSNR's signal power refers to.
enum class PowerReference { Source, Received, Explicit };

// One row family of the sweep: an algorithm and, for MCCC, its kernel size.
struct AlgorithmEntry {
  Algorithm algo;
  std::optional<double> sigma;
};

struct SweepConfig {
  std::vector<Algorithm> algorithms{Algorithm::MCCC, Algorithm::CRLS, Algorithm::CLMS, Algorithm::LAD};
  std::vector<double> mccc_sigmas{1.0, 10.0, 100.0};
  std::vector<double> surface_sigmas;  // empty: use mccc_sigmas
  double mccc_tol = 1e-10;
  double mccc_ridge = 1e-8;
  std::size_t mccc_window = 0;
  std::size_t mccc_inner_iterations = 1;
  double clms_mu = 0.01;
  double lad_mu = 0.01;
  double crls_lambda = 1.0;
  double crls_delta = 1e-8;

  std::vector<double> gsnr_db{10.0, 12.0, 14.0, 16.0, 18.0, 20.0};
  std::vector<double> alpha{1.5};
  bool noise_enabled = true;
  PowerReference power_reference = PowerReference::Source;
  double signal_power = 0.0;  // used when power_reference == Explicit

  std::size_t trials = 1000;
  std::size_t train_len = 500;
  std::size_t test_len = 10000;
  std::size_t taps = 2;
  std::uint64_t master_seed = 1;

  cvector channel_taps{{1.1, -1.1}, {0.9, -0.2}};
  std::vector<double> constellation_levels{-3.0, -1.0, 1.0, 3.0};

  std::string output_path;
  OutputFormat output_format = OutputFormat::Csv;

  void validate() const {
    auto require = [](bool ok, const char* field, const char* msg) {
      if (!ok) throw ConfigError(field, msg);
    };
    require(!algorithms.empty(), "algorithms", "must list at least one algorithm");
    require(!gsnr_db.empty(), "gsnr_db", "must be non-empty");
    require(!alpha.empty(), "alpha", "must be non-empty");
    for (double g : gsnr_db) require(std::isfinite(g), "gsnr_db", "values must be finite");
    for (double a : alpha) require(a > 0.0 && a <= 2.0, "alpha", "values must lie in (0, 2]");
    for (Algorithm a : algorithms)
      if (a == Algorithm::MCCC) require(!mccc_sigmas.empty(), "mccc.sigma", "must be non-empty when mccc is enabled");
    for (double s : mccc_sigmas) require(s > 0.0 && std::isfinite(s), "mccc.sigma", "values must be > 0");
    for (double s : surface_sigmas) require(s > 0.0 && std::isfinite(s), "surface.sigma", "values must be > 0");
    require(mccc_tol > 0.0, "mccc.tol", "must be > 0");
    require(mccc_ridge >= 0.0, "mccc.ridge", "must be >= 0");
    require(mccc_inner_iterations >= 1, "mccc.inner_iterations", "must be >= 1");
    require(clms_mu > 0.0, "clms.mu", "must be > 0");
    require(lad_mu > 0.0, "lad.mu", "must be > 0");
    require(crls_lambda > 0.0 && crls_lambda <= 1.0, "crls.lambda", "must lie in (0, 1]");
    require(crls_delta > 0.0, "crls.delta", "must be > 0");
    require(trials >= 1, "trials", "must be >= 1");
    require(train_len >= 1, "train_len", "must be >= 1");
    require(test_len >= 1, "test_len", "must be >= 1");
    require(taps >= 1, "taps", "must be >= 1");
    require(power_reference != PowerReference::Explicit || signal_power > 0.0, "noise.signal_power",
            "must be > 0");
    try {
      ChannelModel{channel_taps};
    } catch (const std::domain_error& e) {
      throw ConfigError("channel.taps", e.what());
    }
    try {
      make_square_qam(constellation_levels);
    } catch (const std::domain_error& e) {
      throw ConfigError("constellation.levels", e.what());
    }
  }

  // MCCC expands into one entry per kernel size, in listed order.
  std::vector<AlgorithmEntry> expanded_algorithms(const std::vector<double>& sigmas) const {
    std::vector<AlgorithmEntry> out;
    for (Algorithm a : algorithms) {
      if (a == Algorithm::MCCC)
        for (double s : sigmas) out.push_back({a, s});
      else
        out.push_back({a, std::nullopt});
    }
    return out;
  }
  std::vector<AlgorithmEntry> expanded_algorithms() const { return expanded_algorithms(mccc_sigmas); }

  FilterState initial_state(const AlgorithmEntry& entry) const {
    switch (entry.algo) {
      case Algorithm::MCCC: {
        MCCCConfig c;
        c.kernel = KernelSpec(entry.sigma.value_or(1.0));
        c.tol = mccc_tol;
        c.ridge = mccc_ridge;
        c.window_length = mccc_window;
        c.inner_iterations = mccc_inner_iterations;
        return FilterState::mccc(taps, c);
      }
      case Algorithm::CLMS: return FilterState::clms(taps, clms_mu);
      case Algorithm::CRLS: return FilterState::crls(taps, crls_lambda, crls_delta);
      case Algorithm::LAD: return FilterState::lad(taps, lad_mu);
    }
    throw std::logic_error("unhandled algorithm");
  }

  TrialSetup setup(double alpha_value, double gsnr_value) const {
    TrialSetup s;
    s.constellation = make_square_qam(constellation_levels);
    s.channel = ChannelModel(channel_taps);
    s.taps = taps;
    s.train_len = train_len;
    s.test_len = test_len;
    if (noise_enabled) {
      double power = s.constellation.average_power();
      if (power_reference == PowerReference::Received) power = s.received_signal_power();
      if (power_reference == PowerReference::Explicit) power = signal_power;
      NoiseSpec n;
      n.alpha = alpha_value;
      n.gamma = calibrate_gamma(power, gsnr_value);
      n.target_gsnr_db = gsnr_value;
      s.noise = n;
    }
    return s;
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline double parse_double(const std::string& text, const std::string& field) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || text.empty()) throw ConfigError(field, "not a number: '" + text + "'");
  return v;
}

inline std::uint64_t parse_u64(const std::string& text, const std::string& field) {
  std::uint64_t v = 0;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), last, v);
  if (ec != std::errc{} || ptr != last || text.empty())
    throw ConfigError(field, "not a non-negative integer: '" + text + "'");
  return v;
}

inline std::vector<double> parse_double_list(const std::string& text, const std::string& field) {
  std::vector<double> out;
  for (const std::string& item : split_list(text)) out.push_back(parse_double(item, field));
  return out;
}

}  // namespace detail

// Parses `a`, `bj`, `a+bj`, `a-bj` (`i` also accepted for the imaginary unit).
inline complex parse_complex(std::string_view raw, const std::string& field = "complex") {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw ConfigError(field, "empty complex value");
  if (s.back() != 'j' && s.back() != 'i') return {detail::parse_double(s, field), 0.0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto coefficient = [&](std::string c) {
    if (c.empty() || c == "+") return 1.0;
    if (c == "-") return -1.0;
    if (c.front() == '+') c.erase(0, 1);
    return detail::parse_double(c, field);
  };
  if (split == std::string::npos) return {0.0, coefficient(s)};
  return {detail::parse_double(s.substr(0, split), field), coefficient(s.substr(split))};
}

inline Algorithm parse_algorithm(const std::string& name, const std::string& field = "algorithms") {
  for (Algorithm a : {Algorithm::MCCC, Algorithm::CLMS, Algorithm::CRLS, Algorithm::LAD})
    if (name == to_string(a)) return a;
  throw ConfigError(field, "unknown algorithm '" + name + "'");
}

inline SweepConfig parse_config(std::string_view text) {
  SweepConfig cfg;
  std::map<std::string, std::string> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = detail::trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    std::string key = detail::trim(std::string_view(body).substr(0, eq));
    std::string value = detail::trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no), "empty key");
    if (!entries.emplace(key, value).second) throw ConfigError(key, "duplicate key");
  }

  for (const auto& [key, value] : entries) {
    using detail::parse_double;
    using detail::parse_double_list;
    using detail::parse_u64;
    if (key == "algorithms") {
      cfg.algorithms.clear();
      for (const std::string& name : detail::split_list(value)) cfg.algorithms.push_back(parse_algorithm(name, key));
    } else if (key == "mccc.sigma") {
      cfg.mccc_sigmas = parse_double_list(value, key);
    } else if (key == "surface.sigma") {
      cfg.surface_sigmas = parse_double_list(value, key);
    } else if (key == "mccc.tol") {
      cfg.mccc_tol = parse_double(value, key);
    } else if (key == "mccc.ridge") {
      cfg.mccc_ridge = parse_double(value, key);
    } else if (key == "mccc.window") {
      cfg.mccc_window = parse_u64(value, key);
    } else if (key == "mccc.inner_iterations") {
      cfg.mccc_inner_iterations = parse_u64(value, key);
    } else if (key == "clms.mu") {
      cfg.clms_mu = parse_double(value, key);
    } else if (key == "lad.mu") {
      cfg.lad_mu = parse_double(value, key);
    } else if (key == "crls.lambda") {
      cfg.crls_lambda = parse_double(value, key);
    } else if (key == "crls.delta") {
      cfg.crls_delta = parse_double(value, key);
    } else if (key == "gsnr_db") {
      cfg.gsnr_db = parse_double_list(value, key);
    } else if (key == "alpha") {
      cfg.alpha = parse_double_list(value, key);
    } else if (key == "noise.enabled") {
      if (value != "true" && value != "false") throw ConfigError(key, "expected true or false");
      cfg.noise_enabled = value == "true";
    } else if (key == "noise.signal_power") {
      if (value == "source") {
        cfg.power_reference = PowerReference::Source;
      } else if (value == "received") {
        cfg.power_reference = PowerReference::Received;
      } else {
        cfg.power_reference = PowerReference::Explicit;
        cfg.signal_power = parse_double(value, key);
      }
    } else if (key == "trials") {
      cfg.trials = parse_u64(value, key);
    } else if (key == "train_len") {
      cfg.train_len = parse_u64(value, key);
    } else if (key == "test_len") {
      cfg.test_len = parse_u64(value, key);
    } else if (key == "taps") {
      cfg.taps = parse_u64(value, key);
    } else if (key == "master_seed") {
      cfg.master_seed = parse_u64(value, key);
    } else if (key == "channel.taps") {
      cfg.channel_taps.clear();
      for (const std::string& item : detail::split_list(value)) cfg.channel_taps.push_back(parse_complex(item, key));
    } else if (key == "constellation.levels") {
      cfg.constellation_levels = parse_double_list(value, key);
    } else if (key == "output.path") {
      cfg.output_path = value;
    } else if (key == "output.format") {
      if (value == "csv") {
        cfg.output_format = OutputFormat::Csv;
      } else if (value == "json") {
        cfg.output_format = OutputFormat::Json;
      } else {
        throw ConfigError(key, "expected csv or json");
      }
    } else {
      throw ConfigError(key, "unknown key");
    }
  }
  cfg.validate();
  return cfg;
}

inline SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace ccorr::harness
