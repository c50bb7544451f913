#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bsz/errors.hpp"
#include "bsz/specfun.hpp"

using namespace bsz;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("order domain and phase") {
  CHECK_THROWS_AS(BesselOrder(-1.0), DomainError);
  CHECK_THROWS_AS(BesselOrder(-1.5), DomainError);
  CHECK_THROWS_AS(BesselOrder(std::nan("")), DomainError);
  CHECK(BesselOrder(0.0).alpha() == doctest::Approx(std::numbers::pi / 4));
  CHECK(BesselOrder(0.5).alpha() == doctest::Approx(std::numbers::pi / 2));
  CHECK(BesselOrder(-0.5).alpha() == doctest::Approx(0.0));
}

TEST_CASE("gamma") {
  CHECK(gamma_real(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gamma_real(4.0) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(rel_err(gamma_real(0.5), 1.7724538509055160) < 1e-13);
  CHECK_THROWS_AS(gamma_real(0.0), DomainError);
  CHECK_THROWS_AS(gamma_real(-2.5), DomainError);
}

TEST_CASE("bessel_j special points") {
  CHECK(bessel_j(BesselOrder(0.0), 0.0) == 1.0);
  CHECK(bessel_j(BesselOrder(2.0), 0.0) == 0.0);
  CHECK_THROWS_AS(bessel_j(BesselOrder(-0.5), 0.0), RangeError);
  CHECK_THROWS_AS(bessel_j(BesselOrder(0.0), -1.0), DomainError);
  CHECK(std::abs(bessel_j(BesselOrder(0.5), std::numbers::pi)) < 1e-16);
  CHECK(rel_err(bessel_j(BesselOrder(0.0), 1.0), 0.7651976865579666) < 1e-14);
}

TEST_CASE("bessel_j against high-precision values") {
  struct Case {
    double nu, x, value;
  };
  // mpmath.besselj at 30 digits
  const Case cases[] = {
      {0.0, 1.0, 0.76519768655796655145},      {1.0, 1.0, 0.44005058574493351596},
      {-0.9, 0.37, 0.31823510581448565639},    {-0.9, 7.5, -0.089478761299500363716},
      {0.3, 15.0, 0.080045072038934181249},    {2.5, 33.0, -0.13833139623490157249},
      {1.0, 250.0, -0.043269038410330749511},  {0.0, 999.0, 0.017369296355194131847},
      {-0.5, 21.0, -0.095366612430202344346},  {3.5, 19.5, 0.10467583857032232059},
      {2.5, 0.01, 5.3191924109550807341e-7},   {7.25, 40.0, -0.12447995065244198614},
  };
  for (const Case& c : cases) {
    CAPTURE(c.nu);
    CAPTURE(c.x);
    CHECK(rel_err(bessel_j(BesselOrder(c.nu), c.x), c.value) < 1e-10);
  }
}

TEST_CASE("bessel_j agrees with the standard library") {
  double worst = 0.0;
  for (double nu : {0.0, 0.25, 0.5, 1.0, 2.5, 3.7, 6.0}) {
    for (int k = 0; k <= 400; ++k) {
      const double x = 0.01 * std::pow(1e5, k / 400.0);
      const double ref = std::cyl_bessel_j(nu, x);
      // relative to the local size, which near zeros is the envelope
      const double envelope = x > nu + 1.0 ? std::sqrt(2.0 / (std::numbers::pi * x)) : 0.0;
      const double size = std::max(std::abs(ref), envelope);
      worst = std::max(worst, std::abs(bessel_j(BesselOrder(nu), x) - ref) / size);
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("bessel_pair") {
  const BesselPair p = bessel_pair(BesselOrder(0.0), 1.0);
  CHECK(rel_err(p.j, 0.7651976866) < 1e-10);
  CHECK(rel_err(p.j_next, 0.4400505857) < 1e-9);
  const BesselPair h = bessel_pair(BesselOrder(0.5), std::numbers::pi / 2);
  CHECK(rel_err(h.j, 2.0 / std::numbers::pi) < 1e-14);
  // J_{3/2}(x) = sqrt(2 / (pi x)) (sin x / x - cos x)
  CHECK(rel_err(h.j_next, 4.0 / (std::numbers::pi * std::numbers::pi)) < 1e-14);
  for (double x : {0.3, 7.0, 25.0, 400.0}) {
    const BesselPair q = bessel_pair(BesselOrder(1.5), x);
    CHECK(q.j == bessel_j(BesselOrder(1.5), x));
    CHECK(q.j_next == bessel_j(BesselOrder(2.5), x));
  }
}

TEST_CASE("recurrence residual") {
  // J_nu + J_{nu+2} = 2 (nu + 1) / x J_{nu+1}; keeps every order above -1
  double worst = 0.0;
  for (double nu : {-0.9, -0.5, 0.0, 0.5, 1.0, 2.5}) {
    for (int k = 0; k <= 300; ++k) {
      const double x = 0.01 * std::pow(5e4, k / 300.0);
      const double a = bessel_j(BesselOrder(nu), x);
      const double b = bessel_j(BesselOrder(nu + 2.0), x);
      const double c = 2.0 * (nu + 1.0) / x * bessel_j(BesselOrder(nu + 1.0), x);
      const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
      worst = std::max(worst, std::abs(a + b - c) / scale);
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("envelope deviation") {
  for (double z : {0.1, 1.0, 13.0, 77.0, 512.0}) {
    CHECK(std::abs(envelope_deviation(BesselOrder(-0.5), z)) < 1e-13);
    CHECK(std::abs(envelope_deviation(BesselOrder(0.5), z)) < 1e-13);
  }
  for (double nu : {-0.9, 0.0, 1.0, 2.5}) {
    double bound = 0.0;
    double tail = 0.0;
    for (int k = 0; k <= 400; ++k) {
      const double z = std::pow(1e3, k / 400.0);
      const double v = std::abs(envelope_deviation(BesselOrder(nu), z)) * z;
      bound = std::max(bound, v);
      if (z > 100.0) tail = std::max(tail, v);
    }
    CAPTURE(nu);
    CHECK(std::isfinite(bound));
    // z times the deviation approaches |4 nu^2 - 1| / 8 sqrt(2/pi)
    CHECK(tail <= std::abs(4 * nu * nu - 1) / 8 * std::sqrt(2 / std::numbers::pi) * 1.05 + 1e-12);
  }
  CHECK_THROWS_AS(envelope_deviation(BesselOrder(0.0), 0.0), DomainError);
}

TEST_CASE("large-argument amplitudes") {
  const HankelAmplitudes h = hankel_amplitudes(BesselOrder(0.5), 30.0);
  CHECK(h.p == 1.0);
  CHECK(h.q == 0.0);
  const BesselOrder o(2.5);
  const double z = hankel_threshold(o) + 3.0;
  const HankelAmplitudes a = hankel_amplitudes(o, z);
  const double chi = z - o.alpha();
  const double j = std::sqrt(2 / (std::numbers::pi * z)) * (a.p * std::cos(chi) - a.q * std::sin(chi));
  CHECK(rel_err(j, std::cyl_bessel_j(2.5, z)) < 1e-12);
}
