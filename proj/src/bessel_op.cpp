#include "bsz/bessel_op.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bsz/errors.hpp"
#include "bsz/quadrature.hpp"

namespace bsz {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxTNodes = 400000;
constexpr int kPanelPoints = 16;

// Where |a(t)| (1 + t) drops below 1e-14 of the scale.
double truncation_point(const Symbol& a) {
  if (a.tail() != TailKind::algebraic) return a.support_cutoff();
  const double floor = 1e-14 * a.scale();
  double t = a.support_cutoff();
  while (std::abs(a(t)) * (1.0 + t) > floor) {
    t *= 2.0;
    if (t > 1e300) break;
  }
  return t;
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be finite and > 0");
  }
}

}  // namespace

TGrid make_tgrid(const BesselOrder& order, const Symbol& a, double x_max, double resolution) {
  check_positive(x_max, "x_max");
  if (!(resolution >= 1.0)) {
    throw ResolutionError("t-grid resolution factor must be >= 1, got " + std::to_string(resolution));
  }
  TGrid grid;
  grid.cutoff = truncation_point(a);
  if (a.is_zero()) return grid;

  const double frequency = std::max(0.5 * x_max * resolution, kPi);
  const double estimate = grid.cutoff * frequency / kPi * kPanelPoints;
  if (!(estimate < static_cast<double>(kMaxTNodes))) {
    throw ResolutionError("t-grid for symbol " + a.name() + " would need about " +
                          std::to_string(estimate) + " nodes up to t = " +
                          std::to_string(grid.cutoff) + "; the cap is " +
                          std::to_string(kMaxTNodes));
  }
  PanelScheme scheme;
  scheme.breakpoints = a.breakpoints();
  scheme.points_per_panel = kPanelPoints;
  scheme.oscillation_frequency = frequency;
  scheme.left_endpoint_power = 2.0 * order.nu() + 1.0;
  NodeSet rule = panel_nodes(0.0, grid.cutoff, scheme);
  grid.nodes = std::move(rule.nodes);
  grid.coeffs.resize(grid.nodes.size());
  for (std::size_t q = 0; q < grid.nodes.size(); ++q) {
    const double t = grid.nodes[q];
    grid.coeffs[q] = rule.weights[q] * t * a(t);
  }
  return grid;
}

NystromGrid nystrom_grid(const BesselOrder& order, double tau, int n) {
  check_positive(tau, "tau");
  if (n < 4) throw DomainError("node count must be >= 4, got " + std::to_string(n));
  const double power = 2.0 * order.nu() + 1.0;
  const bool singular = !(power >= 0.0 && std::abs(power - std::round(power)) < 1e-12);

  const int panels = n <= 32 ? 1 : n / kPanelPoints;
  const int extra = n - panels * kPanelPoints;
  NystromGrid grid;
  const double h = tau / panels;
  for (int p = 0; p < panels; ++p) {
    int count = panels == 1 ? n : kPanelPoints + extra / panels + (p < extra % panels ? 1 : 0);
    const double lo = h * p;
    const double hi = p + 1 == panels ? tau : lo + h;
    const double half = 0.5 * (hi - lo);
    if (p == 0 && singular) {
      const QuadRule& rule = gauss_jacobi(count, power);
      for (std::size_t j = 0; j < rule.size(); ++j) {
        const double u1 = 1.0 + rule.nodes[j];
        grid.nodes.push_back(lo + half * u1);
        grid.weights.push_back(half * rule.weights[j] / std::pow(u1, power));
      }
    } else {
      const QuadRule& rule = gauss_legendre(count);
      for (std::size_t j = 0; j < rule.size(); ++j) {
        grid.nodes.push_back(lo + half * (1.0 + rule.nodes[j]));
        grid.weights.push_back(half * rule.weights[j]);
      }
    }
  }
  return grid;
}

double kernel_from_grid(const BesselOrder& order, const TGrid& grid, double x, double y) {
  double sum = 0.0;
  for (std::size_t q = 0; q < grid.size(); ++q) {
    const double t = grid.nodes[q];
    sum += grid.coeffs[q] * bessel_j(order, x * t) * bessel_j(order, y * t);
  }
  return std::sqrt(x * y) * sum;
}

double bessel_product_tail(const BesselOrder& order, double x, double y, double start,
                           const RealFn& weight, double envelope, double tol) {
  check_positive(x, "x");
  check_positive(y, "y");
  if (start * std::min(x, y) < hankel_threshold(order) * (1.0 - 1e-12)) {
    throw DomainError("bessel_product_tail: start below the large-argument threshold");
  }
  const double sigma = x + y;
  const double delta = x - y;
  const double two_alpha = 2.0 * order.alpha();
  const auto w = [&](double s) { return weight ? weight(s) : 1.0; };

  const auto sum_part = [&](double s) {
    const HankelAmplitudes ax = hankel_amplitudes(order, x * s);
    const HankelAmplitudes ay = hankel_amplitudes(order, y * s);
    const double phase = sigma * s - two_alpha;
    return w(s) / kPi *
           (std::cos(phase) * (ax.p * ay.p - ax.q * ay.q - envelope) -
            std::sin(phase) * (ax.p * ay.q + ax.q * ay.p));
  };
  const auto diff_part = [&](double s) {
    const HankelAmplitudes ax = hankel_amplitudes(order, x * s);
    const HankelAmplitudes ay = hankel_amplitudes(order, y * s);
    const double phase = delta * s;
    return w(s) / kPi *
           (std::cos(phase) * (ax.p * ay.p + ax.q * ay.q - envelope) +
            std::sin(phase) * (ax.p * ay.q - ax.q * ay.p));
  };

  double total = integrate_oscillatory_tail(sum_part, sigma, start, tol);
  if (delta == 0.0) {
    total += integrate_decaying_tail(diff_part, start);
  } else {
    total += integrate_oscillatory_tail(diff_part, std::abs(delta), start, tol);
  }
  return total;
}

double kernel_eval(const BesselOrder& order, const Symbol& a, double x, double y) {
  check_positive(x, "x");
  check_positive(y, "y");
  if (a.is_zero()) return 0.0;
  const double root = std::sqrt(x * y);
  const auto integrand = [&](double t) {
    return t * root * bessel_j(order, x * t) * bessel_j(order, y * t) * a(t);
  };
  double head_end = a.support_cutoff();
  if (a.tail() == TailKind::algebraic) {
    head_end = std::max(head_end, hankel_threshold(order) / std::min(x, y));
  }
  PanelScheme scheme;
  scheme.breakpoints = a.breakpoints();
  scheme.points_per_panel = 20;
  scheme.oscillation_frequency = std::max(x + y, kPi);
  scheme.left_endpoint_power = 2.0 * order.nu() + 1.0;
  double sum = integrate(integrand, 0.0, head_end, scheme);
  if (a.tail() == TailKind::algebraic) {
    sum += bessel_product_tail(order, x, y, head_end, [&](double s) { return a(s); }, 0.0,
                               1e-13 * a.scale());
  }
  return sum;
}

double indicator_kernel_closed_form(const BesselOrder& order, double beta, double x, double y) {
  check_positive(x, "x");
  check_positive(y, "y");
  const double nu = order.nu();
  if (std::abs(x - y) <= 1e-6 * (x + y)) {
    // diagonal limit at the midpoint; the error is second order in x - y
    const double m = 0.5 * (x + y);
    const BesselPair jm = bessel_pair(order, m);
    return beta * m * 0.5 * (jm.j * jm.j + jm.j_next * jm.j_next - 2.0 * nu / m * jm.j * jm.j_next);
  }
  const BesselPair jx = bessel_pair(order, x);
  const BesselPair jy = bessel_pair(order, y);
  return beta * std::sqrt(x * y) * (x * jx.j_next * jy.j - y * jx.j * jy.j_next) /
         ((x - y) * (x + y));
}

DiscretizedOperator assemble(const BesselOrder& order, const Symbol& a, double tau, int n,
                             double resolution) {
  DiscretizedOperator op;
  op.tau = tau;
  op.n = n;
  NystromGrid grid = nystrom_grid(order, tau, n);
  op.x_nodes = std::move(grid.nodes);
  op.x_weights = std::move(grid.weights);
  op.tgrid = make_tgrid(order, a, tau, resolution);
  const std::size_t m = op.tgrid.size();
  if (m == 0) {
    op.matrix = Eigen::MatrixXd::Zero(n, n);
    return op;
  }
  Eigen::MatrixXd phi(n, static_cast<Eigen::Index>(m));
  for (int i = 0; i < n; ++i) {
    const double x = op.x_nodes[i];
    const double scale = std::sqrt(op.x_weights[i] * x);
    for (std::size_t q = 0; q < m; ++q) {
      phi(i, static_cast<Eigen::Index>(q)) = scale * bessel_j(order, x * op.tgrid.nodes[q]);
    }
  }
  const Eigen::Map<const Eigen::VectorXd> c(op.tgrid.coeffs.data(), static_cast<Eigen::Index>(m));
  const Eigen::MatrixXd scaled = phi * c.asDiagonal();
  Eigen::MatrixXd product = scaled * phi.transpose();
  op.matrix = 0.5 * (product + product.transpose());
  return op;
}

double trace_truncated(const BesselOrder& order, const Symbol& b, double tau) {
  check_positive(tau, "tau");
  if (b.is_zero()) return 0.0;
  const double nu = order.nu();
  const auto integrand = [&](double t) {
    const double z = tau * t;
    const BesselPair j = bessel_pair(order, z);
    const double bracket = j.j * j.j + j.j_next * j.j_next - 2.0 * nu / z * j.j * j.j_next;
    return b(t) * 0.5 * tau * z * bracket;
  };
  PanelScheme scheme;
  scheme.breakpoints = b.breakpoints();
  scheme.points_per_panel = 20;
  scheme.oscillation_frequency = std::max(2.0 * tau, kPi);
  scheme.left_endpoint_power = 2.0 * nu + 1.0;
  const double T = b.support_cutoff();
  double sum = integrate(integrand, 0.0, T, scheme);
  if (b.tail() == TailKind::algebraic) {
    sum += integrate_oscillatory_tail(integrand, 2.0 * tau, T, 1e-12 * std::max(1.0, b.scale()));
  }
  return sum;
}

}  // namespace bsz
