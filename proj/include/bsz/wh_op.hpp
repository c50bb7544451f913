#pragma once

#include "bsz/bessel_op.hpp"
#include "bsz/specfun.hpp"
#include "bsz/symbols.hpp"

namespace bsz {

/// Sign of the Hankel part: +1 pairs with nu = -1/2, -1 with nu = +1/2.
class WHSign {
 public:
  static WHSign plus() { return WHSign(1); }
  static WHSign minus() { return WHSign(-1); }
  /// Throws DomainError unless nu is exactly -1/2 or +1/2.
  static WHSign for_order(const BesselOrder& order);

  int value() const noexcept { return sign_; }
  /// The order whose Bessel operator this sign reproduces.
  BesselOrder order() const { return BesselOrder(sign_ > 0 ? -0.5 : 0.5); }

 private:
  explicit WHSign(int s) : sign_(s) {}
  int sign_;
};

/// a^(|x - y|) + s a^(x + y).
double wh_kernel(const Symbol& a, WHSign s, double x, double y);

/// Nystrom matrix of the truncated Wiener-Hopf plus/minus Hankel operator on
/// the same x-grid the Bessel path uses for the matching order.
DiscretizedOperator assemble_wh(const Symbol& a, WHSign s, double tau, int n,
                                double resolution = 2.0);

/// Correction kernel for x, y >= 1:
/// -sin(2 alpha) a(0) / (pi (x + y)) + (1/pi) int_0^inf cos((x + y) t - 2 alpha) a(t) dt.
double hankel_correction(const BesselOrder& order, const Symbol& a, double x, double y);

/// K_t(x, y) = int_t^inf (s sqrt(xy) J(xs) J(ys) - (2/pi) cos(xs - alpha) cos(ys - alpha)) ds.
double k_t_diagnostic(const BesselOrder& order, double t, double x, double y, double tol = 1e-10);

}  // namespace bsz
