#pragma once

#include <numbers>

namespace bsz {

/// Order of a Bessel function of the first kind, restricted to nu > -1.
///
/// The phase alpha = (pi/2) nu + pi/4 of the large-argument asymptotics is
/// always derived from nu, never stored.
class BesselOrder {
 public:
  explicit BesselOrder(double nu);

  double nu() const noexcept { return nu_; }
  double alpha() const noexcept {
    return std::numbers::pi / 2.0 * nu_ + std::numbers::pi / 4.0;
  }

 private:
  double nu_;
};

/// Gamma function for x > 0.
double gamma_real(double x);

/// J_nu(x) for x >= 0.
///
/// At x = 0 returns 1 for nu = 0 and 0 for nu > 0. For -1 < nu < 0 the limit
/// is infinite and a RangeError is thrown; quadrature nodes are interior so
/// the library never asks for it.
double bessel_j(const BesselOrder& order, double x);

struct BesselPair {
  double j;       ///< J_nu(x)
  double j_next;  ///< J_{nu+1}(x)
};

BesselPair bessel_pair(const BesselOrder& order, double x);

/// sqrt(z) J_nu(z) - sqrt(2/pi) cos(z - alpha), the deviation of sqrt(z) J_nu
/// from its leading oscillatory envelope. O(1/z) uniformly on (0, inf).
double envelope_deviation(const BesselOrder& order, double z);

/// Large-argument amplitudes: J_nu(z) = sqrt(2/(pi z)) (P cos chi - Q sin chi)
/// with chi = z - alpha.
struct HankelAmplitudes {
  double p;
  double q;
};

/// Smallest argument at which hankel_amplitudes() is accurate to roughly
/// machine precision for this order.
double hankel_threshold(const BesselOrder& order);

/// P and Q by the asymptotic series, summed until the terms stall. Only
/// meaningful for z >= hankel_threshold(order).
HankelAmplitudes hankel_amplitudes(const BesselOrder& order, double z);

}  // namespace bsz
