#include "bsz/wh_op.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bsz/errors.hpp"
#include "bsz/quadrature.hpp"

namespace bsz {
namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

WHSign WHSign::for_order(const BesselOrder& order) {
  if (order.nu() == -0.5) return plus();
  if (order.nu() == 0.5) return minus();
  throw DomainError("the Wiener-Hopf reduction needs nu = -1/2 or nu = 1/2");
}

double wh_kernel(const Symbol& a, WHSign s, double x, double y) {
  if (a.is_zero()) return 0.0;
  return cosine_transform(a, std::abs(x - y)) + s.value() * cosine_transform(a, x + y);
}

DiscretizedOperator assemble_wh(const Symbol& a, WHSign s, double tau, int n, double resolution) {
  if (!(resolution >= 1.0)) throw ResolutionError("resolution factor must be >= 1");
  const BesselOrder order = s.order();
  DiscretizedOperator op;
  op.tau = tau;
  op.n = n;
  NystromGrid grid = nystrom_grid(order, tau, n);
  op.x_nodes = std::move(grid.nodes);
  op.x_weights = std::move(grid.weights);
  op.matrix = Eigen::MatrixXd::Zero(n, n);
  if (a.is_zero()) return op;

  // a^(u) for u in [0, 2 tau] on one t-grid; the symbol is compact or rapid
  if (a.tail() == TailKind::algebraic) {
    throw ResolutionError("Wiener-Hopf assembly needs a compact or rapidly decaying symbol");
  }
  PanelScheme scheme;
  scheme.breakpoints = a.breakpoints();
  scheme.points_per_panel = 16;
  scheme.oscillation_frequency = std::max(tau * resolution, kPi);
  const NodeSet rule = panel_nodes(0.0, a.support_cutoff(), scheme);
  std::vector<double> wa(rule.size());
  for (std::size_t q = 0; q < rule.size(); ++q) wa[q] = rule.weights[q] * a(rule.nodes[q]) / kPi;
  const auto transform = [&](double u) {
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) sum += wa[q] * std::cos(u * rule.nodes[q]);
    return sum;
  };

  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double x = op.x_nodes[i];
      const double y = op.x_nodes[j];
      const double k = transform(std::abs(x - y)) + s.value() * transform(x + y);
      const double v = std::sqrt(op.x_weights[i] * op.x_weights[j]) * k;
      op.matrix(i, j) = v;
      op.matrix(j, i) = v;
    }
  }
  return op;
}

double hankel_correction(const BesselOrder& order, const Symbol& a, double x, double y) {
  if (!(x >= 1.0) || !(y >= 1.0)) throw DomainError("hankel_correction needs x, y >= 1");
  if (a.is_zero()) return 0.0;
  const double u = x + y;
  const double s2 = std::sin(2.0 * order.alpha());
  const double c2 = std::cos(2.0 * order.alpha());
  double value = c2 * cosine_transform(a, u);
  if (s2 != 0.0) value += s2 * (sine_transform(a, u) - a(0.0) / (kPi * u));
  return value;
}

double k_t_diagnostic(const BesselOrder& order, double t, double x, double y, double tol) {
  if (!(x >= 1.0) || !(y >= 1.0)) throw DomainError("k_t_diagnostic needs x, y >= 1");
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("k_t_diagnostic needs t >= 0");
  const double split = std::max(t, hankel_threshold(order) / std::min(x, y));
  const double alpha = order.alpha();
  const double sigma = x + y;
  const double delta = x - y;

  double head = 0.0;
  if (split > t) {
    const double root = std::sqrt(x * y);
    PanelScheme scheme;
    scheme.points_per_panel = 20;
    scheme.oscillation_frequency = std::max(sigma, kPi);
    if (t == 0.0) scheme.left_endpoint_power = 2.0 * order.nu() + 1.0;
    head = integrate(
        [&](double s) { return s * root * bessel_j(order, x * s) * bessel_j(order, y * s); }, t,
        split, scheme);
    // (2/pi) cos(xs - alpha) cos(ys - alpha) integrated in closed form
    const auto envelope = [&](double s) {
      const double slow = delta == 0.0 ? s : std::sin(delta * s) / delta;
      return (slow + std::sin(sigma * s - 2.0 * alpha) / sigma) / kPi;
    };
    head -= envelope(split) - envelope(t);
  }
  return head + bessel_product_tail(order, x, y, split, RealFn{}, 1.0, tol);
}

}  // namespace bsz
