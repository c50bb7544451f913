#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace bsz {

using ScalarFn = std::function<double(double)>;

/// Gauss-Legendre rule on [-1, 1].
struct QuadRule {
  std::vector<double> nodes;    ///< strictly increasing, symmetric about 0
  std::vector<double> weights;  ///< positive, summing to 2

  std::size_t size() const noexcept { return nodes.size(); }
};

/// n-point Gauss-Legendre rule, 1 <= n <= 10000. Rules are built once and
/// cached; the returned reference stays valid for the program lifetime.
const QuadRule& gauss_legendre(int n);

/// Gauss-Jacobi rule on [-1, 1] for the weight (1 + u)^beta, beta > -1.
/// Weights include the weight function. Cached like gauss_legendre.
const QuadRule& gauss_jacobi(int n, double beta);

/// How an interval is cut into Gauss panels.
struct PanelScheme {
  /// Interior panel boundaries; points outside (a, b) are ignored.
  std::vector<double> breakpoints;
  int points_per_panel = 16;
  /// When > 0, panel widths are capped at pi / oscillation_frequency.
  double oscillation_frequency = 0.0;
  /// If set, the integrand behaves like (t - a)^p * smooth near the left
  /// end; the first panel then uses a Gauss-Jacobi rule for that power.
  std::optional<double> left_endpoint_power;
};

/// Nodes and weights of a composite rule.
struct NodeSet {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Composite rule for [a, b] under the scheme. Empty when a == b.
NodeSet panel_nodes(double a, double b, const PanelScheme& scheme);

/// Composite Gauss quadrature of f over [a, b]. Throws NonFiniteError naming
/// the first node where f is not finite.
double integrate(const ScalarFn& f, double a, double b, const PanelScheme& scheme);

/// Integral over [start, inf) of an integrand oscillating with the given
/// angular frequency, whose amplitude has an expansion in inverse powers of t
/// (a non-oscillating drift is allowed).
///
/// The integral is accumulated over whole periods. Partial sums up to X_j,
/// with the period count doubling between levels, are extrapolated
/// polynomially in 1/X_j.
/// Throws ConvergenceError carrying the last estimate when the extrapolated
/// values do not settle below tol.
double integrate_oscillatory_tail(const ScalarFn& f, double frequency, double start, double tol);

/// Integral over [start, inf), start > 0, of a non-oscillating integrand
/// decaying at least like 1/t^2, via the substitution t = start / s.
double integrate_decaying_tail(const ScalarFn& f, double start, int points = 48);

}  // namespace bsz
