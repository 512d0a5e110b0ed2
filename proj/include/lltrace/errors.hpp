#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lltrace {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller broke a documented precondition (dimension mismatch, bad parameter).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class InvalidQuantumNumbers : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class NonPositiveEnergy : public Error {
 public:
  using Error::Error;
};

class WrongParticleNumber : public Error {
 public:
  using Error::Error;
};

/// Newton iteration failed, including the continuation retry. Carries the
/// residual norm after every iteration of the last attempt.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, std::vector<double> trace)
      : Error(what), trace_(std::move(trace)) {}
  const std::vector<double>& residual_trace() const noexcept { return trace_; }

 private:
  std::vector<double> trace_;
};

}  // namespace lltrace
