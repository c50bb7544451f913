#include "bsz/asympt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bsz/bessel_op.hpp"
#include "bsz/errors.hpp"
#include "bsz/quadrature.hpp"

namespace bsz {
namespace {

constexpr double kPi = std::numbers::pi;

PanelScheme unit_panels(int points = 20) {
  PanelScheme s;
  s.points_per_panel = points;
  s.oscillation_frequency = kPi;
  return s;
}

// int_from^inf x b^(x)^2 dx for the decay of b.
double weighted_tail(const Symbol& b, double from) {
  const TransformDecay& d = b.transform_decay();
  const auto w = [&](double x) {
    const double v = cosine_transform(b, x);
    return x * v * v;
  };
  if (d.kind == TransformDecay::Kind::rapid) {
    return from >= d.cutoff ? 0.0 : integrate(w, from, d.cutoff, unit_panels());
  }
  if (d.kind == TransformDecay::Kind::algebraic && d.period > 0.0) {
    const double start = std::max(from, d.cutoff);
    double head = start > from ? integrate(w, from, start, unit_panels()) : 0.0;
    const double p = d.period;
    // doubling blocks: an integrable x^-q tail shrinks them by 2^(2-q)
    const double l = start + 64.0 * p;
    const double b1 = integrate(w, l, 2.0 * l, unit_panels());
    const double b2 = integrate(w, 2.0 * l, 4.0 * l, unit_panels());
    if (b2 >= 0.9 * b1) {
      throw RangeError("x b^(x)^2 is not integrable for symbol " + b.name());
    }
    try {
      return head + integrate_oscillatory_tail(w, 2.0 * kPi / p, start, 1e-13);
    } catch (const ConvergenceError& e) {
      throw RangeError(std::string("weighted tail did not settle: ") + e.what());
    }
  }
  // no decay model: doubling blocks with geometric extrapolation
  const double width = std::min(1.0, kPi / std::max(1.0, b.support_cutoff()));
  PanelScheme scheme = unit_panels(16);
  scheme.oscillation_frequency = kPi / width;
  double lo = std::max(from, 16.0);
  double sum = from < lo ? integrate(w, from, lo, scheme) : 0.0;
  double previous = 0.0;
  double estimate = 0.0;
  for (int k = 0; k < 12; ++k) {
    const double block = integrate(w, lo, 2.0 * lo, scheme);
    sum += block;
    lo *= 2.0;
    if (std::abs(block) < 1e-15) return sum;
    if (k >= 2) {
      const double r = block / previous;
      if (r > 0.9) throw RangeError("x b^(x)^2 is not integrable for symbol " + b.name());
      // a power-law tail makes the doubling blocks geometric
      const double next = r > 0.0 ? sum + block * r / (1.0 - r) : sum;
      if (k >= 3 && std::abs(next - estimate) < 1e-12) return next;
      estimate = next;
    }
    previous = block;
  }
  throw ConvergenceError("weighted transform tail did not converge for " + b.name(), sum,
                         std::abs(previous));
}

}  // namespace

double e_constant(const Symbol& b) {
  if (b.is_zero()) return 0.0;
  return 0.5 * weighted_tail(b, 0.0);
}

double e_constant_via_hankel_trace(const Symbol& b) {
  if (b.is_zero()) return 0.0;
  const TransformDecay& d = b.transform_decay();
  double edge = 64.0;
  if (d.kind == TransformDecay::Kind::rapid) edge = d.cutoff;
  if (d.kind == TransformDecay::Kind::algebraic) edge = 2e4;

  // outer nodes on [0, edge]; G(x) = int_x^edge b^(u)^2 du accumulated from the right
  const NodeSet outer = panel_nodes(0.0, edge, unit_panels(16));
  const QuadRule& inner = gauss_legendre(8);
  const auto sq = [&](double u) {
    const double v = cosine_transform(b, u);
    return v * v;
  };
  const auto piece = [&](double lo, double hi) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double s = 0.0;
    for (std::size_t j = 0; j < inner.size(); ++j) s += inner.weights[j] * sq(mid + half * inner.nodes[j]);
    return half * s;
  };
  double g = piece(outer.nodes.back(), edge);
  double square = outer.weights.back() * g;
  for (std::size_t k = outer.size() - 1; k-- > 0;) {
    g += piece(outer.nodes[k], outer.nodes[k + 1]);
    square += outer.weights[k] * g;
  }
  // the part of the quarter plane with x + y > edge
  const double remainder =
      d.kind == TransformDecay::Kind::rapid ? 0.0 : weighted_tail(b, edge);
  return 0.5 * (square + remainder);
}

Prediction predict(const BesselOrder& order, const Symbol& b, double tau) {
  Prediction p;
  p.tau = tau;
  const HypothesisReport report = validate_hypotheses(b);
  if (!report.overall()) {
    p.warnings.push_back("symbol " + b.name() + " does not pass the hypothesis check");
  }
  p.linear_coeff = cosine_transform(b, 0.0);
  p.order_term = -0.5 * order.nu() * b(0.0);
  p.e_term = e_constant(b);
  return p;
}

double trace_asymptote(const BesselOrder& order, const Symbol& b, double tau) {
  return tau / kPi * symbol_integral(b) - 0.5 * order.nu() * b(0.0);
}

DeterminantResult symbol_logdet(const BesselOrder& order, const Symbol& b, double tau,
                                const DetOptions& opts) {
  const Symbol a = exp_symbol(b);
  return converged_logdet(
      [&](int n) { return assemble(order, a, tau, n, opts.resolution); }, opts.tol, opts.n0,
      opts.n_max);
}

double ratio_diagnostic(const BesselOrder& order, const Symbol& b, double tau,
                        const DetOptions& opts) {
  const DeterminantResult det = symbol_logdet(order, b, tau, opts);
  const double trace = trace_truncated(order, b, tau);
  if (!det.converged) {
    throw ConvergenceError("determinant did not converge at tau = " + std::to_string(tau),
                           det.logdet - trace, det.est_error);
  }
  return det.logdet - trace;
}

}  // namespace bsz
