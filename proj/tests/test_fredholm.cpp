#include <doctest.h>

#include <cmath>

#include "bsz/asympt.hpp"
#include "bsz/bessel_op.hpp"
#include "bsz/errors.hpp"
#include "bsz/fredholm.hpp"

using namespace bsz;

namespace {

Symbol make(const char* family, double beta) { return build_symbol({family, beta, ""}); }

}  // namespace

TEST_CASE("small matrices") {
  const LogDet zero = logdet(Eigen::MatrixXd::Zero(5, 5));
  CHECK(zero.value == 0.0);
  CHECK(zero.sign == 1);

  Eigen::VectorXd u(4);
  u << 0.3, -1.2, 0.5, 2.0;
  const double c = 0.7;
  const LogDet r1 = logdet(Eigen::MatrixXd(c * u * u.transpose()));
  CHECK(r1.value == doctest::Approx(std::log(1.0 + c * u.squaredNorm())).epsilon(1e-14));
  CHECK(r1.sign == 1);

  Eigen::VectorXd lam(4);
  lam << 0.5, -0.25, 3.0, 1e-3;
  double want = 0.0;
  for (int i = 0; i < 4; ++i) want += std::log1p(lam(i));
  CHECK(logdet(Eigen::MatrixXd(lam.asDiagonal())).value == doctest::Approx(want).epsilon(1e-14));

  // one factor 1 + lambda below zero
  lam(1) = -3.0;
  const LogDet neg = logdet(Eigen::MatrixXd(lam.asDiagonal()));
  CHECK(neg.sign == -1);
  CHECK(neg.value == doctest::Approx(std::log(1.5 * 2.0 * 4.0 * 1.001)).epsilon(1e-14));

  Eigen::MatrixXd sing = Eigen::MatrixXd::Zero(3, 3);
  sing(1, 1) = -1.0;
  CHECK_THROWS_AS(logdet(sing), SingularError);
}

TEST_CASE("pivoted factorization handles a permuted matrix") {
  // I + A is the swap matrix: determinant -1
  Eigen::MatrixXd a(2, 2);
  a << -1.0, 1.0, 1.0, -1.0;
  const LogDet d = logdet(a);
  CHECK(std::abs(d.value) < 1e-15);
  CHECK(d.sign == -1);
}

TEST_CASE("doubling loop") {
  const BesselOrder o(0.0);
  const Symbol zero = exp_symbol(make("gaussian", 0.0));
  const DeterminantResult z = converged_logdet([&](int n) { return assemble(o, zero, 5.0, n); }, 1e-10);
  CHECK(z.converged);
  CHECK(z.logdet == 0.0);
  CHECK(z.n_final == 32);
  CHECK(z.history.size() == 2);

  const Symbol a = exp_symbol(make("gaussian", 0.5));
  const DeterminantResult g =
      converged_logdet([&](int n) { return assemble(o, a, 5.0, n); }, 1e-10, 16, 256);
  REQUIRE(g.converged);
  // independent scipy Nystrom value
  CHECK(std::abs(g.logdet - 0.708230603278583) < 1e-10);
  CHECK(g.est_error <= 1e-10);
  CHECK(g.sign == 1);
  for (std::size_t k = 1; k < g.history.size(); ++k) {
    CHECK(g.history[k].first == 2 * g.history[k - 1].first);
  }
  CHECK(g.history.back().first == g.n_final);
  CHECK(g.history.back().second == g.logdet);
}

TEST_CASE("non-convergence is reported") {
  const BesselOrder o(0.0);
  const Symbol a = exp_symbol(make("gaussian", 1.0));
  const DeterminantResult r =
      converged_logdet([&](int n) { return assemble(o, a, 40.0, n); }, 1e-14, 8, 16);
  CHECK_FALSE(r.converged);
  CHECK(r.n_final == 16);
  CHECK(r.est_error > 1e-14);
  CHECK_THROWS_AS(converged_logdet([&](int n) { return assemble(o, a, 5.0, n); }, 1e-8, 4, 64),
                  DomainError);
  CHECK_THROWS_AS(converged_logdet([&](int n) { return assemble(o, a, 5.0, n); }, 1e-8, 16, 16),
                  DomainError);
  CHECK_THROWS_AS(converged_logdet([&](int n) { return assemble(o, a, 5.0, n); }, 0.0), DomainError);
}

TEST_CASE("small symbols are perturbative") {
  // log det(I + A) = tr A + O(A^2), with A built from e^b - 1 ~ b
  const BesselOrder o(1.0);
  const double beta = 0.01;
  const Symbol b = make("gaussian", beta);
  const DeterminantResult d = symbol_logdet(o, b, 6.0);
  REQUIRE(d.converged);
  CHECK(std::abs(d.logdet - trace_truncated(o, b, 6.0)) <= 1e-3 * beta);
}

TEST_CASE("increments shrink") {
  const Symbol a = exp_symbol(make("gaussian", 1.0));
  const DeterminantResult r =
      converged_logdet([&](int n) { return assemble(BesselOrder(0.5), a, 30.0, n); }, 1e-12);
  REQUIRE(r.converged);
  REQUIRE(r.history.size() >= 3);
  const auto inc = [&](std::size_t k) { return std::abs(r.history[k].second - r.history[k - 1].second); };
  CHECK(inc(r.history.size() - 1) < inc(1));
}
