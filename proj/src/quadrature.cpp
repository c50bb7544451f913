#include "bsz/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "bsz/errors.hpp"

namespace bsz {
namespace {

QuadRule build_legendre(int n) {
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  using Long = long double;
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    Long x = std::cos(std::numbers::pi_v<Long> * (i + 0.75L) / (n + 0.5L));
    Long dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      Long p0 = 1;
      Long p1 = x;
      for (int k = 2; k <= n; ++k) {
        const Long p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = n * (x * p1 - p0) / (x * x - 1);
      const Long dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-19L) break;
    }
    if (n == 1) {
      x = 0;
      dp = 1;
    }
    const Long w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = static_cast<double>(x);
    rule.nodes[i] = static_cast<double>(-x);
    rule.weights[i] = rule.weights[n - 1 - i] = static_cast<double>(w);
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

// Golub-Welsch for the Jacobi weight (1 + u)^beta.
QuadRule build_jacobi(int n, double beta) {
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  const double b = beta;
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + b;
    diag(k) = (k == 0) ? b / (b + 2.0) : (b * b) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + b;
    sub(k - 1) = std::sqrt(4.0 * k * k * (k + b) * (k + b) / (s * s * (s + 1.0) * (s - 1.0)));
  }
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mu0 = std::pow(2.0, b + 1.0) / (b + 1.0);
  if (n == 1) {
    rule.nodes[0] = diag(0);
    rule.weights[0] = mu0;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
  for (int j = 0; j < n; ++j) {
    rule.nodes[j] = solver.eigenvalues()(j);
    const double v = solver.eigenvectors()(0, j);
    rule.weights[j] = mu0 * v * v;
  }
  return rule;
}

bool is_smooth_power(double p) {
  return p >= 0.0 && std::abs(p - std::round(p)) < 1e-12;
}

void append_legendre(NodeSet& out, double lo, double hi, int n) {
  const QuadRule& rule = gauss_legendre(n);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  for (std::size_t j = 0; j < rule.size(); ++j) {
    out.nodes.push_back(mid + half * rule.nodes[j]);
    out.weights.push_back(half * rule.weights[j]);
  }
}

void append_jacobi(NodeSet& out, double lo, double hi, int n, double power) {
  const QuadRule& rule = gauss_jacobi(n, power);
  const double half = 0.5 * (hi - lo);
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double u1 = 1.0 + rule.nodes[j];
    out.nodes.push_back(lo + half * u1);
    // the rule integrates g against (1+u)^p; the caller supplies f = (t-a)^p g
    out.weights.push_back(half * rule.weights[j] / std::pow(u1, power));
  }
}

}  // namespace

const QuadRule& gauss_legendre(int n) {
  if (n < 1 || n > 10000) {
    throw DomainError("gauss_legendre: n must be in [1, 10000], got " + std::to_string(n));
  }
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const QuadRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<const QuadRule>(build_legendre(n));
  return *slot;
}

const QuadRule& gauss_jacobi(int n, double beta) {
  if (n < 1 || n > 2000) {
    throw DomainError("gauss_jacobi: n must be in [1, 2000], got " + std::to_string(n));
  }
  if (!(beta > -1.0)) throw DomainError("gauss_jacobi: beta must be > -1");
  static std::mutex mutex;
  static std::map<std::pair<int, double>, std::unique_ptr<const QuadRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n, beta}];
  if (!slot) slot = std::make_unique<const QuadRule>(build_jacobi(n, beta));
  return *slot;
}

NodeSet panel_nodes(double a, double b, const PanelScheme& scheme) {
  if (!(a <= b)) throw DomainError("panel_nodes: need a <= b");
  if (scheme.points_per_panel < 1) throw DomainError("panel_nodes: points_per_panel must be >= 1");
  NodeSet out;
  if (a == b) return out;

  std::vector<double> cuts{a};
  for (double bp : scheme.breakpoints) {
    if (bp > a && bp < b) cuts.push_back(bp);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const double cap = scheme.oscillation_frequency > 0.0
                         ? std::numbers::pi / scheme.oscillation_frequency
                         : std::numeric_limits<double>::infinity();
  const bool singular_start =
      scheme.left_endpoint_power && !is_smooth_power(*scheme.left_endpoint_power);

  bool first = true;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double width = cuts[i + 1] - lo;
    const auto pieces = static_cast<long>(std::max(1.0, std::ceil(width / cap)));
    const double h = width / static_cast<double>(pieces);
    for (long k = 0; k < pieces; ++k) {
      const double p_lo = lo + h * static_cast<double>(k);
      const double p_hi = (k + 1 == pieces) ? cuts[i + 1] : p_lo + h;
      if (first && singular_start) {
        append_jacobi(out, p_lo, p_hi, scheme.points_per_panel, *scheme.left_endpoint_power);
      } else {
        append_legendre(out, p_lo, p_hi, scheme.points_per_panel);
      }
      first = false;
    }
  }
  return out;
}

double integrate(const ScalarFn& f, double a, double b, const PanelScheme& scheme) {
  const NodeSet rule = panel_nodes(a, b, scheme);
  double sum = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double v = f(rule.nodes[j]);
    if (!std::isfinite(v)) {
      throw NonFiniteError("integrand is not finite at t = " + std::to_string(rule.nodes[j]),
                           rule.nodes[j]);
    }
    sum += rule.weights[j] * v;
  }
  return sum;
}

double integrate_oscillatory_tail(const ScalarFn& f, double frequency, double start, double tol) {
  if (!(frequency > 0.0) || !std::isfinite(frequency)) {
    throw DomainError("integrate_oscillatory_tail: frequency must be > 0");
  }
  if (!(start >= 0.0)) throw DomainError("integrate_oscillatory_tail: start must be >= 0");

  const double period = 2.0 * std::numbers::pi / frequency;
  const QuadRule& rule = gauss_legendre(20);

  auto segment = [&](long k) {
    const double s0 = start + period * static_cast<double>(k);
    const double s1 = s0 + period;
    // geometric sub-panels keep a slowly decaying amplitude resolved
    int pieces = 1;
    if (s0 > 0.0) {
      pieces = static_cast<int>(std::ceil(std::log(s1 / s0) / std::log(1.5)));
      pieces = std::clamp(pieces, 1, 96);
    }
    // from the origin: halving panels down to period / 16
    if (s0 == 0.0) pieces = 5;
    const double ratio = s0 > 0.0 ? std::pow(s1 / s0, 1.0 / pieces) : 1.0;
    double sum = 0.0;
    double lo = s0;
    for (int p = 0; p < pieces; ++p) {
      const double hi = (p + 1 == pieces) ? s1 : (s0 > 0.0 ? lo * ratio : period / (1 << (pieces - 1 - p)));
      const double half = 0.5 * (hi - lo);
      const double mid = 0.5 * (hi + lo);
      for (std::size_t j = 0; j < rule.size(); ++j) {
        const double t = mid + half * rule.nodes[j];
        const double v = f(t);
        if (!std::isfinite(v)) {
          throw NonFiniteError("oscillatory integrand is not finite at t = " + std::to_string(t), t);
        }
        sum += half * rule.weights[j] * v;
      }
      lo = hi;
    }
    return sum;
  };

  // Partial sums to X_j = start + K_j periods are extrapolated to 1/X -> 0
  // (Neville); the tail of an amplitude expanded in 1/t does the same.
  constexpr int kMaxLevels = 13;
  constexpr int kMaxOrder = 7;
  const long first = std::max(4L, static_cast<long>(std::ceil(start / period)));
  std::vector<std::vector<double>> table;
  std::vector<double> ends;
  double partial = 0.0;
  long done = 0;
  long target = first;
  double last_estimate = 0.0;
  double last_change = std::numeric_limits<double>::infinity();
  for (int level = 0; level < kMaxLevels; ++level, target *= 2) {
    for (; done < target; ++done) partial += segment(done);
    ends.push_back(start + period * static_cast<double>(done));
    std::vector<double> row{partial};
    for (int m = 1; m <= std::min(level, kMaxOrder); ++m) {
      const double factor = ends[level] / ends[level - m] - 1.0;
      row.push_back(row[m - 1] + (row[m - 1] - table[level - 1][m - 1]) / factor);
    }
    const double estimate = row.back();
    if (level >= 2) {
      last_change = std::abs(estimate - last_estimate);
      if (last_change < tol) return estimate;
    }
    last_estimate = estimate;
    table.push_back(std::move(row));
  }
  throw ConvergenceError("integrate_oscillatory_tail: no convergence after " +
                             std::to_string(done) + " periods",
                         last_estimate, last_change);
}

double integrate_decaying_tail(const ScalarFn& f, double start, int points) {
  if (!(start > 0.0)) throw DomainError("integrate_decaying_tail: start must be > 0");
  PanelScheme scheme;
  scheme.points_per_panel = points;
  scheme.breakpoints = {0.25, 0.5};
  return integrate([&](double s) { return f(start / s) * start / (s * s); }, 0.0, 1.0, scheme);
}

}  // namespace bsz
