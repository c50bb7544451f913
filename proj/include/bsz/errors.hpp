#pragma once

#include <stdexcept>
#include <string>

namespace bsz {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Result is not representable (infinite limit, divergent integral).
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// An iterative or accelerated evaluation did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double partial, double residual)
      : std::runtime_error(what), partial_(partial), residual_(residual) {}

  double partial_value() const noexcept { return partial_; }
  double residual() const noexcept { return residual_; }

 private:
  double partial_;
  double residual_;
};

/// The requested discretization cannot resolve the integrand.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// det(I + A) is exactly zero for the discrete matrix.
class SingularError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An integrand returned inf/nan at a quadrature node.
class NonFiniteError : public std::runtime_error {
 public:
  NonFiniteError(const std::string& what, double node)
      : std::runtime_error(what), node_(node) {}
  double node() const noexcept { return node_; }

 private:
  double node_;
};

}  // namespace bsz
