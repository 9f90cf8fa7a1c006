#pragma once

// CSV / JSON serialization of aggregate rows.
//
// CSV header: algo,sigma,alpha,gsnr_db,ber_mean,ber_std,trials,divergent
// Floats use 17 significant digits (round-trip exact). sigma is empty for
// algorithms without a kernel. JSON is an array of objects with the same
// keys; sigma is null when absent.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ccorr/harness/sweep.hpp"

namespace ccorr::harness {

inline constexpr const char* kCsvHeader = "algo,sigma,alpha,gsnr_db,ber_mean,ber_std,trials,divergent";

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string to_csv(const std::vector<AggregateRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const AggregateRow& r : rows) {
    out += r.algo;
    out += ',';
    if (r.sigma) out += format_double(*r.sigma);
    out += ',' + format_double(r.alpha) + ',' + format_double(r.gsnr_db) + ',' + format_double(r.ber_mean) + ',' +
           format_double(r.ber_std) + ',' + std::to_string(r.trials) + ',' + std::to_string(r.divergent) + '\n';
  }
  return out;
}

inline std::vector<AggregateRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::runtime_error("csv: missing or unexpected header");
  std::vector<AggregateRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = ccorr::harness::detail::split_list(line);
    if (f.size() != 8) throw std::runtime_error("csv: expected 8 fields in '" + line + "'");
    AggregateRow r;
    r.algo = f[0];
    if (!f[1].empty()) r.sigma = ccorr::harness::detail::parse_double(f[1], "sigma");
    r.alpha = ccorr::harness::detail::parse_double(f[2], "alpha");
    r.gsnr_db = ccorr::harness::detail::parse_double(f[3], "gsnr_db");
    r.ber_mean = ccorr::harness::detail::parse_double(f[4], "ber_mean");
    r.ber_std = ccorr::harness::detail::parse_double(f[5], "ber_std");
    r.trials = ccorr::harness::detail::parse_u64(f[6], "trials");
    r.divergent = ccorr::harness::detail::parse_u64(f[7], "divergent");
    rows.push_back(std::move(r));
  }
  return rows;
}

inline nlohmann::json to_json(const std::vector<AggregateRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const AggregateRow& r : rows) {
    out.push_back({{"algo", r.algo},
                   {"sigma", r.sigma ? nlohmann::json(*r.sigma) : nlohmann::json(nullptr)},
                   {"alpha", r.alpha},
                   {"gsnr_db", r.gsnr_db},
                   {"ber_mean", r.ber_mean},
                   {"ber_std", r.ber_std},
                   {"trials", r.trials},
                   {"divergent", r.divergent}});
  }
  return out;
}

inline std::vector<AggregateRow> parse_json(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  std::vector<AggregateRow> rows;
  for (const auto& item : doc) {
    AggregateRow r;
    r.algo = item.at("algo").get<std::string>();
    if (!item.at("sigma").is_null()) r.sigma = item.at("sigma").get<double>();
    r.alpha = item.at("alpha").get<double>();
    r.gsnr_db = item.at("gsnr_db").get<double>();
    r.ber_mean = item.at("ber_mean").get<double>();
    r.ber_std = item.at("ber_std").get<double>();
    r.trials = item.at("trials").get<std::size_t>();
    r.divergent = item.at("divergent").get<std::size_t>();
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::string render(const std::vector<AggregateRow>& rows, OutputFormat format) {
  return format == OutputFormat::Csv ? to_csv(rows) : to_json(rows).dump(2) + "\n";
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open output file");
  out << content;
  out.flush();
  if (!out) throw IoError(path, "failed writing output file");
}

inline void emit_results(const std::vector<AggregateRow>& rows, OutputFormat format, const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("emit_results: no rows");
  write_file(path, render(rows, format));
}

// Per-trial log, one line per (row, trial).
inline std::string trial_log_csv(const std::vector<TrialRecord>& records) {
  std::string out = "algo,sigma,alpha,gsnr_db,trial,seed,ber,ser,diverged\n";
  for (const TrialRecord& r : records) {
    out += r.algo + ',' + (r.sigma ? format_double(*r.sigma) : std::string()) + ',' + format_double(r.alpha) + ',' +
           format_double(r.gsnr_db) + ',' + std::to_string(r.trial) + ',' + std::to_string(r.seed) + ',' +
           format_double(r.ber) + ',' + format_double(r.ser) + ',' + (r.diverged ? "1" : "0") + '\n';
  }
  return out;
}

}  // namespace ccorr::harness
