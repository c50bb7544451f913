#include "bsz/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bsz/errors.hpp"

namespace bsz {
namespace {

using Long = long double;

constexpr Long kPiL = 3.141592653589793238462643383279502884L;

// Below this argument the ascending series in extended precision keeps
// about 1e-11 relative to the envelope sqrt(2/(pi x)); above it the Hankel
// series reaches its optimal truncation below 1e-16.
constexpr double kSeriesLimit = 20.0;

double series_j(double nu, double x) {
  const Long h = static_cast<Long>(x) / 2;
  const Long h2 = h * h;
  Long term = std::exp(static_cast<Long>(nu) * std::log(h) -
                       std::lgamma(static_cast<Long>(nu) + 1));
  Long sum = term;
  Long largest = std::fabs(term);
  for (int k = 1; k < 1000; ++k) {
    term *= -h2 / (static_cast<Long>(k) * (static_cast<Long>(nu) + k));
    sum += term;
    const Long mag = std::fabs(term);
    if (mag > largest) largest = mag;
    if (k > h && mag <= 1e-21L * largest) break;
  }
  return static_cast<double>(sum);
}

struct LongAmplitudes {
  Long p;
  Long q;
};

LongAmplitudes asymptotic_pq(double nu, double z) {
  const Long mu = 4 * static_cast<Long>(nu) * nu;
  const Long z8 = 8 * static_cast<Long>(z);
  Long p = 1;
  Long q = 0;
  Long term = 1;
  Long previous = std::numeric_limits<Long>::infinity();
  for (int k = 1; k < 200; ++k) {
    const Long odd = 2 * k - 1;
    term *= (mu - odd * odd) / (k * z8);
    const Long mag = std::fabs(term);
    if (mag == 0) break;
    // asymptotic series: stop at the smallest term
    if (mag > previous) break;
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      default: p += term; break;
    }
    if (mag < 1e-19L) break;
    previous = mag;
  }
  return {p, q};
}

double asymptotic_j(double nu, double x) {
  const auto [p, q] = asymptotic_pq(nu, x);
  const Long chi = static_cast<Long>(x) - (kPiL / 2 * nu + kPiL / 4);
  const Long amp = std::sqrt(2 / (kPiL * x));
  return static_cast<double>(amp * (p * std::cos(chi) - q * std::sin(chi)));
}

double threshold_for(double nu) { return std::fmax(kSeriesLimit, 2.0 * nu * nu); }

// J_nu(x) for x > 0 and any nu > -1.
double j_positive(double nu, double x) {
  if (x <= kSeriesLimit) return series_j(nu, x);
  if (x >= threshold_for(nu)) return asymptotic_j(nu, x);
  if (nu < x) {
    // forward recurrence is stable while the order stays below x
    const double base = nu - std::floor(nu);
    Long prev = asymptotic_j(base, x);
    Long curr = asymptotic_j(base + 1.0, x);
    for (Long order = base + 1; order + 0.5 < nu; order += 1) {
      const Long next = 2 * order / x * curr - prev;
      prev = curr;
      curr = next;
    }
    return static_cast<double>(curr);
  }
  return series_j(nu, x);
}

void check_argument(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("bessel_j: argument must be finite and >= 0, got " + std::to_string(x));
  }
}

}  // namespace

BesselOrder::BesselOrder(double nu) : nu_(nu) {
  if (!std::isfinite(nu) || !(nu > -1.0)) {
    throw DomainError("Bessel order must satisfy nu > -1, got " + std::to_string(nu));
  }
}

double gamma_real(double x) {
  if (!(x > 0.0)) throw DomainError("gamma_real: argument must be > 0, got " + std::to_string(x));
  return std::tgamma(x);
}

double bessel_j(const BesselOrder& order, double x) {
  check_argument(x);
  const double nu = order.nu();
  if (x == 0.0) {
    if (nu == 0.0) return 1.0;
    if (nu > 0.0) return 0.0;
    throw RangeError("bessel_j: J_nu(0) is infinite for -1 < nu < 0");
  }
  return j_positive(nu, x);
}

BesselPair bessel_pair(const BesselOrder& order, double x) {
  check_argument(x);
  if (x == 0.0) return {bessel_j(order, 0.0), 0.0};
  return {j_positive(order.nu(), x), j_positive(order.nu() + 1.0, x)};
}

double envelope_deviation(const BesselOrder& order, double z) {
  if (!(z > 0.0)) throw DomainError("envelope_deviation: z must be > 0");
  const double nu = order.nu();
  if (z >= threshold_for(nu)) {
    const auto [p, q] = asymptotic_pq(nu, z);
    const Long chi = static_cast<Long>(z) - (kPiL / 2 * nu + kPiL / 4);
    return static_cast<double>(std::sqrt(2 / kPiL) * ((p - 1) * std::cos(chi) - q * std::sin(chi)));
  }
  const Long chi = static_cast<Long>(z) - (kPiL / 2 * nu + kPiL / 4);
  return static_cast<double>(std::sqrt(static_cast<Long>(z)) * j_positive(nu, z) -
                             std::sqrt(2 / kPiL) * std::cos(chi));
}

double hankel_threshold(const BesselOrder& order) { return threshold_for(order.nu()); }

HankelAmplitudes hankel_amplitudes(const BesselOrder& order, double z) {
  if (!(z > 0.0)) throw DomainError("hankel_amplitudes: z must be > 0");
  const auto [p, q] = asymptotic_pq(order.nu(), z);
  return {static_cast<double>(p), static_cast<double>(q)};
}

}  // namespace bsz
