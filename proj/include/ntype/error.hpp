#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ntype {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A SystemParams or IntegratorConfig field violates its invariant.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A matrix is not a valid density matrix (trace, Hermiticity or positivity).
class InvalidState : public Error {
 public:
  using Error::Error;
};

/// Time integration failed at a definite time (step underflow, invariant loss).
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double time)
      : Error(what + " (t = " + std::to_string(time) + ")"), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// The evolution route did not reach a stationary state before its cap.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double time, double residual)
      : Error(what), time_(time), residual_(residual) {}
  double time() const noexcept { return time_; }
  double residual() const noexcept { return residual_; }

 private:
  double time_;
  double residual_;
};

/// The stationary subspace has dimension greater than one. Carries a basis of
/// Hermitian stationary matrices; those with nonzero trace are normalized to 1.
class DegenerateSteadyState : public Error {
 public:
  DegenerateSteadyState(const std::string& what, std::vector<Eigen::Matrix4cd> basis)
      : Error(what), basis_(std::move(basis)) {}
  const std::vector<Eigen::Matrix4cd>& basis() const noexcept { return basis_; }

 private:
  std::vector<Eigen::Matrix4cd> basis_;
};

/// The closed-form dressed states are undefined (vanishing Rabi frequency).
class DegenerateDressedBasis : public Error {
 public:
  using Error::Error;
};

}  // namespace ntype
