#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tspec {

/// Base for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input, configuration, or file contents. The CLI maps this to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed. The CLI maps this to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Symbol modulus too close to zero on a sampling grid.
class NearZeroError : public NumericalError {
 public:
  NearZeroError(const std::string& what, double p) : NumericalError(what), p_(p) {}
  double p() const noexcept { return p_; }

 private:
  double p_;
};

/// Phase unwrapping failed at a sample (zero sample or unresolved phase step).
class BranchError : public NumericalError {
 public:
  BranchError(const std::string& what, std::size_t index) : NumericalError(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// LU factorization hit a pivot that is zero to working precision.
class SingularMatrixError : public NumericalError {
 public:
  SingularMatrixError(const std::string& what, std::size_t pivot)
      : NumericalError(what), pivot_(pivot) {}
  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

/// Eigenvalue iteration ran out of its sweep budget.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, std::size_t index)
      : NumericalError(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Eigenvalue-to-grid assignment left some eigenvalues contested.
class MatchingError : public NumericalError {
 public:
  MatchingError(const std::string& what, std::vector<std::size_t> contested)
      : NumericalError(what), contested_(std::move(contested)) {}
  const std::vector<std::size_t>& contested() const noexcept { return contested_; }

 private:
  std::vector<std::size_t> contested_;
};

}  // namespace tspec
