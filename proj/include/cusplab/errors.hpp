#pragma once

#include <stdexcept>
#include <string>

namespace cusplab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept = 0;
  // validation errors map to exit status 1, numerical failures to 2
  virtual bool is_validation() const noexcept { return false; }
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& msg, std::string key = {})
      : Error(msg), key_(std::move(key)) {}
  const char* kind() const noexcept override { return "input"; }
  bool is_validation() const noexcept override { return true; }
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
  bool is_validation() const noexcept override { return true; }
};

class RangeError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "range"; }
};

class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& msg, double best_estimate)
      : Error(msg), best_(best_estimate) {}
  const char* kind() const noexcept override { return "accuracy"; }
  double best_estimate() const noexcept { return best_; }

 private:
  double best_;
};

class MeshError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "mesh"; }
};

struct SolverStats {
  int iterations = 0;
  double residual = 0.0;
  int unknowns = 0;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& msg, SolverStats stats)
      : Error(msg), stats_(stats) {}
  const char* kind() const noexcept override { return "convergence"; }
  const SolverStats& stats() const noexcept { return stats_; }

 private:
  SolverStats stats_;
};

class ReliabilityError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "reliability"; }
};

}  // namespace cusplab
