#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "bsz/errors.hpp"
#include "bsz/quadrature.hpp"
#include "bsz/specfun.hpp"

using namespace bsz;

TEST_CASE("small Gauss-Legendre rules") {
  const QuadRule& one = gauss_legendre(1);
  REQUIRE(one.size() == 1);
  CHECK(one.nodes[0] == 0.0);
  CHECK(one.weights[0] == doctest::Approx(2.0).epsilon(1e-15));
  const QuadRule& two = gauss_legendre(2);
  CHECK(two.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(two.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(two.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(two.weights[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(gauss_legendre(0), DomainError);
  CHECK_THROWS_AS(gauss_legendre(10001), DomainError);
}

TEST_CASE("rule invariants") {
  for (int n : {3, 8, 17, 64, 300, 1000}) {
    CAPTURE(n);
    const QuadRule& r = gauss_legendre(n);
    const double sum = std::accumulate(r.weights.begin(), r.weights.end(), 0.0);
    CHECK(std::abs(sum - 2.0) < 1e-14 * std::max(1.0, n / 100.0));
    for (int i = 0; i < n; ++i) {
      CHECK(r.weights[i] > 0.0);
      CHECK(r.nodes[i] == -r.nodes[n - 1 - i]);
      if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
    }
  }
  // monomial exactness up to degree 2n - 1
  for (int n : {4, 10, 20}) {
    const QuadRule& r = gauss_legendre(n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      CHECK(std::abs(s - exact) <= 1e-13 * std::max(1.0, exact));
    }
  }
}

TEST_CASE("Gauss-Jacobi rule") {
  for (double beta : {-0.8, -0.5, 0.3, 1.6}) {
    for (int n : {1, 5, 16}) {
      const QuadRule& r = gauss_jacobi(n, beta);
      for (int k = 0; k <= 2 * n - 1; ++k) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(1.0 + r.nodes[i], k);
        const double exact = std::pow(2.0, beta + k + 1) / (beta + k + 1);
        CAPTURE(beta);
        CAPTURE(k);
        CHECK(std::abs(s - exact) <= 1e-12 * exact);
      }
    }
  }
  CHECK_THROWS_AS(gauss_jacobi(4, -1.0), DomainError);
}

TEST_CASE("composite integration") {
  PanelScheme s;
  CHECK(integrate([](double t) { return t; }, 0.0, 1.0, s) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(integrate([](double t) { return std::sin(t); }, 0.0, std::numbers::pi, s) ==
        doctest::Approx(2.0).epsilon(1e-14));
  s.points_per_panel = 5;
  CHECK(integrate([](double t) { return std::pow(t, 9); }, 0.0, 1.0, s) ==
        doctest::Approx(0.1).epsilon(1e-14));

  // kink at 0.3 is exact once it is a breakpoint
  PanelScheme kinked;
  kinked.points_per_panel = 4;
  kinked.breakpoints = {0.3};
  CHECK(integrate([](double t) { return std::abs(t - 0.3); }, 0.0, 1.0, kinked) ==
        doctest::Approx(0.045 + 0.245).epsilon(1e-14));

  // algebraic endpoint behavior through the Jacobi panel
  PanelScheme singular;
  singular.left_endpoint_power = -0.8;
  CHECK(integrate([](double t) { return std::pow(t, -0.8) * (1.0 + t); }, 0.0, 1.0, singular) ==
        doctest::Approx(5.0 + 1.0 / 1.2).epsilon(1e-13));

  PanelScheme wave;
  wave.oscillation_frequency = 40.0;
  const double got = integrate([](double t) { return std::cos(40.0 * t); }, 0.0, 3.0, wave);
  CHECK(std::abs(got - std::sin(120.0) / 40.0) < 1e-14);
}

TEST_CASE("non-finite integrand names the node") {
  PanelScheme s;
  try {
    integrate([](double t) { return t > 0.5 ? std::nan("") : 1.0; }, 0.0, 1.0, s);
    FAIL("expected NonFiniteError");
  } catch (const NonFiniteError& e) {
    CHECK(e.node() > 0.5);
  }
}

TEST_CASE("doubling panel points is stable") {
  const auto f = [](double t) { return std::exp(-t) * std::cos(3.0 * t) / (1.0 + t * t); };
  for (int n = 20; n <= 40; n += 4) {
    PanelScheme a;
    a.points_per_panel = n;
    a.breakpoints = {1.0, 2.0, 4.0};
    PanelScheme b = a;
    b.points_per_panel = 2 * n;
    const double va = integrate(f, 0.0, 8.0, a);
    const double vb = integrate(f, 0.0, 8.0, b);
    CHECK(std::abs(va - vb) <= 1e-10 * std::abs(vb));
  }
}

TEST_CASE("oscillatory tails") {
  const double dirichlet = integrate_oscillatory_tail(
      [](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }, 1.0, 0.0, 1e-12);
  CHECK(std::abs(dirichlet - 1.5707963267948966192) < 1e-10);

  const double residue =
      integrate_oscillatory_tail([](double t) { return std::cos(t) / (1.0 + t * t); }, 1.0, 0.0, 1e-12);
  CHECK(std::abs(residue - 0.57786367489546085896) < 1e-10);

  for (double nu : {0.0, 0.5, 1.0}) {
    const BesselOrder o(nu);
    const BesselOrder o1(nu + 1.0);
    const double v = integrate_oscillatory_tail(
        [&](double t) { return bessel_j(o1, t) * bessel_j(o, t); }, 2.0, 0.0, 1e-10);
    CAPTURE(nu);
    CHECK(std::abs(v - 0.5) < 1e-8);
  }
}

TEST_CASE("oscillatory tail is additive in start") {
  const auto f = [](double t) { return std::sin(2.0 * t) / (1.0 + t); };
  const double tol = 1e-11;
  const double whole = integrate_oscillatory_tail(f, 2.0, 0.0, tol);
  for (double s : {1.3, 7.0, 40.0}) {
    PanelScheme p;
    p.oscillation_frequency = 2.0;
    const double parts = integrate(f, 0.0, s, p) + integrate_oscillatory_tail(f, 2.0, s, tol);
    CHECK(std::abs(parts - whole) <= 2.0 * tol + 1e-14);
  }
}

TEST_CASE("oscillatory failure carries the partial value") {
  try {
    integrate_oscillatory_tail([](double t) { return t * std::sin(t); }, 1.0, 0.0, 1e-10);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(std::isfinite(e.partial_value()));
    CHECK(e.residual() > 1e-10);
  }
  CHECK_THROWS_AS(integrate_oscillatory_tail([](double) { return 0.0; }, 0.0, 0.0, 1e-10), DomainError);
}

TEST_CASE("decaying tail") {
  CHECK(integrate_decaying_tail([](double t) { return 1.0 / (t * t); }, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(integrate_decaying_tail([](double t) { return 1.0 / (1.0 + t * t); }, 2.0) ==
        doctest::Approx(std::numbers::pi / 2 - std::atan(2.0)).epsilon(1e-12));
}
