#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bsz/bessel_op.hpp"
#include "bsz/errors.hpp"
#include "bsz/fredholm.hpp"
#include "bsz/wh_op.hpp"

using namespace bsz;

namespace {

constexpr double kPi = std::numbers::pi;

Symbol make(const char* family, double beta) { return build_symbol({family, beta, ""}); }

}  // namespace

TEST_CASE("sign mapping") {
  CHECK(WHSign::for_order(BesselOrder(-0.5)).value() == 1);
  CHECK(WHSign::for_order(BesselOrder(0.5)).value() == -1);
  CHECK(WHSign::plus().order().nu() == -0.5);
  CHECK(WHSign::minus().order().nu() == 0.5);
  CHECK_THROWS_AS(WHSign::for_order(BesselOrder(0.0)), DomainError);
  CHECK_THROWS_AS(WHSign::for_order(BesselOrder(0.5000001)), DomainError);
}

TEST_CASE("kernel identities") {
  CHECK(wh_kernel(make("gaussian", 0.0), WHSign::plus(), 1.0, 2.0) == 0.0);
  const Symbol a = exp_symbol(make("gaussian", 0.5));
  const double x = 1.7;
  CHECK(wh_kernel(a, WHSign::plus(), x, x) ==
        doctest::Approx(cosine_transform(a, 0.0) + cosine_transform(a, 2 * x)).epsilon(1e-15));
  for (double y : {0.2, 1.0, 3.5}) {
    CHECK(wh_kernel(a, WHSign::minus(), x, y) == wh_kernel(a, WHSign::minus(), y, x));
    for (WHSign s : {WHSign::plus(), WHSign::minus()}) {
      const double b = kernel_eval(s.order(), a, x, y);
      CHECK(std::abs(wh_kernel(a, s, x, y) - b) <= 1e-8);
    }
  }
}

TEST_CASE("assembled cosine operator") {
  const Symbol zero = make("hat", 0.0);
  CHECK(assemble_wh(zero, WHSign::plus(), 4.0, 32).matrix.cwiseAbs().maxCoeff() == 0.0);

  const Symbol a = exp_symbol(make("gaussian", 0.5));
  const DiscretizedOperator op = assemble_wh(a, WHSign::minus(), 5.0, 64);
  CHECK((op.matrix - op.matrix.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  const DiscretizedOperator bessel = assemble(BesselOrder(0.5), a, 5.0, 64);
  CHECK(op.x_nodes == bessel.x_nodes);
  CHECK((op.matrix - bessel.matrix).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK_THROWS_AS(assemble_wh(make("lorentzian", 1.0), WHSign::plus(), 5.0, 32), ResolutionError);
}

TEST_CASE("determinants agree with the Bessel path") {
  const Symbol a = exp_symbol(make("gaussian", 0.5));
  // independent scipy Nystrom values at tau = 5
  const struct {
    WHSign s;
    double value;
  } cases[] = {{WHSign::minus(), 0.590184197091638}, {WHSign::plus(), 0.840184129664239}};
  for (const auto& c : cases) {
    const DeterminantResult wh =
        converged_logdet([&](int n) { return assemble_wh(a, c.s, 5.0, n); }, 1e-8);
    const DeterminantResult b =
        converged_logdet([&](int n) { return assemble(c.s.order(), a, 5.0, n); }, 1e-8);
    REQUIRE(wh.converged);
    REQUIRE(b.converged);
    CHECK(std::abs(wh.logdet - b.logdet) <= 1e-6);
    CHECK(std::abs(wh.logdet - c.value) <= 1e-8);
  }
}

TEST_CASE("correction kernel") {
  const Symbol g = make("gaussian", 0.8);
  for (double x : {1.0, 2.0, 5.5}) {
    for (double y : {1.0, 3.0}) {
      CHECK(std::abs(hankel_correction(BesselOrder(0.5), g, x, y) + cosine_transform(g, x + y)) < 1e-13);
    }
  }
  CHECK(hankel_correction(BesselOrder(0.0), make("gaussian", 0.0), 1.0, 1.0) == 0.0);

  // |H(x, y)| (x + y)^2 stays bounded
  for (double nu : {0.0, 1.0}) {
    double worst = 0.0;
    double far = 0.0;
    for (int i = 0; i <= 14; ++i) {
      for (int j = 0; j <= 14; ++j) {
        const double x = 1.0 + 3.5 * i;
        const double y = 1.0 + 3.5 * j;
        const double v = std::abs(hankel_correction(BesselOrder(nu), g, x, y)) * (x + y) * (x + y);
        worst = std::max(worst, v);
        if (x + y > 60.0) far = std::max(far, v);
      }
    }
    CAPTURE(nu);
    CHECK(std::isfinite(worst));
    CHECK(far <= worst);
    // cos 2 alpha = 0 here, so the (x + y)^-2 term drops out
    CHECK(far < 0.1);
  }
}

TEST_CASE("K_0 closed form") {
  const double pts[][2] = {{1.0, 1.0}, {1.5, 2.5}, {3.0, 3.0}};
  for (double nu : {0.0, 1.0, 2.5}) {
    const BesselOrder o(nu);
    for (const auto& p : pts) {
      const double exact = -std::sin(2 * o.alpha()) / (kPi * (p[0] + p[1]));
      CAPTURE(nu);
      CAPTURE(p[0]);
      CHECK(std::abs(k_t_diagnostic(o, 0.0, p[0], p[1]) - exact) < 1e-8);
    }
  }
  CHECK(std::abs(k_t_diagnostic(BesselOrder(0.0), 0.0, 1.0, 1.0) + 1.0 / (2 * kPi)) < 1e-8);
  for (const auto& p : pts) {
    CHECK(std::abs(k_t_diagnostic(BesselOrder(0.5), 0.0, p[0], p[1])) < 1e-10);
  }
}

TEST_CASE("K_t against high-precision values") {
  // mpmath quadosc, 30 digits
  const struct {
    double nu, t, x, y, value;
  } cases[] = {
      {0.0, 1.0, 1.0, 1.0, -0.0050442964917381662251},
      {0.0, 2.0, 1.5, 2.5, 0.0073550374247034445841},
      {1.0, 0.5, 3.0, 3.0, 0.0344451146942542665},
      {2.5, 4.0, 1.0, 2.0, 0.029844902539816302743},
      {0.3, 1.5, 1.2, 1.7, -0.004202026748679462184},
  };
  for (const auto& c : cases) {
    CAPTURE(c.nu);
    CAPTURE(c.t);
    CHECK(std::abs(k_t_diagnostic(BesselOrder(c.nu), c.t, c.x, c.y) - c.value) < 1e-9);
  }
}

TEST_CASE("K_t decays like 1 / t") {
  // |K_t| x y t stays below a constant set by the leading deviation (4 nu^2 - 1) / (8 z)
  const double x = 1.3;
  const double y = 2.1;
  for (double nu : {0.0, 1.0, 2.5}) {
    const BesselOrder o(nu);
    const double bound = 1.0 + std::abs(4 * nu * nu - 1) / 8;
    for (double t : {1.0, 2.0, 4.0, 8.0}) {
      CAPTURE(nu);
      CAPTURE(t);
      CHECK(std::abs(k_t_diagnostic(o, t, x, y)) * x * y * t <= bound);
    }
  }
  CHECK_THROWS_AS(k_t_diagnostic(BesselOrder(0.0), -1.0, 1.0, 1.0), DomainError);
}
