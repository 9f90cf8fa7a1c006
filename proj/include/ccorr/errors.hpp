#pragma once

#include <stdexcept>
#include <string>

namespace ccorr {

// Quadrature did not reach the requested tolerance within its refinement budget.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double estimated_error)
      : std::runtime_error(what), estimated_error_(estimated_error) {}
  double estimated_error() const noexcept { return estimated_error_; }

 private:
  double estimated_error_;
};

// Weighted normal matrix could not be factored.
class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(const std::string& what, double condition_estimate)
      : std::runtime_error(what), condition_estimate_(condition_estimate) {}
  double condition_estimate() const noexcept { return condition_estimate_; }

 private:
  double condition_estimate_;
};

// Filter weights left the finite region (or exceeded the divergence guard).
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sweep configuration problem; field() is the dotted key that failed.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public std::runtime_error {
 public:
  IoError(std::string path, const std::string& message)
      : std::runtime_error(message + ": " + path), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace ccorr
