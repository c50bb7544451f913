#pragma once

#include <string>
#include <vector>

#include "bsz/fredholm.hpp"
#include "bsz/specfun.hpp"
#include "bsz/symbols.hpp"

namespace bsz {

/// Log form of the asymptotic prediction G^tau E.
struct Prediction {
  double tau = 0.0;
  double linear_coeff = 0.0;  ///< b^(0)
  double order_term = 0.0;    ///< -(nu/2) b(0)
  double e_term = 0.0;        ///< (1/2) int_0^inf x b^(x)^2 dx
  std::vector<std::string> warnings;

  double log_value() const { return log_value(tau); }
  double log_value(double t) const { return t * linear_coeff + order_term + e_term; }
};

Prediction predict(const BesselOrder& order, const Symbol& b, double tau);

/// log E = (1/2) int_0^inf x b^(x)^2 dx. Throws RangeError when the weighted
/// tail diverges.
double e_constant(const Symbol& b);

/// log E as half the double integral of b^(x + y)^2 over the quarter plane.
double e_constant_via_hankel_trace(const Symbol& b);

/// (tau/pi) int_0^inf b - (nu/2) b(0).
double trace_asymptote(const BesselOrder& order, const Symbol& b, double tau);

struct DetOptions {
  double tol = 1e-8;
  int n0 = 16;
  int n_max = 1024;
  double resolution = 2.0;
};

/// Converged log det(I + B_tau(e^b - 1)).
DeterminantResult symbol_logdet(const BesselOrder& order, const Symbol& b, double tau,
                                const DetOptions& opts = {});

/// log det(I + B_tau(e^b - 1)) - trace B_tau(b). Throws ConvergenceError when
/// the determinant does not converge.
double ratio_diagnostic(const BesselOrder& order, const Symbol& b, double tau,
                        const DetOptions& opts = {});

}  // namespace bsz
