#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bsz/specfun.hpp"
#include "bsz/symbols.hpp"

namespace bsz {

/// Quadrature of the t-integral in the kernel, with the symbol folded in.
struct TGrid {
  std::vector<double> nodes;
  std::vector<double> coeffs;  ///< w_q * t_q * a(t_q)
  double cutoff = 0.0;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// t-grid resolving products J(x t) J(y t) for x, y <= x_max.
///
/// Panels are at most 2 pi / (x_max * resolution) wide (16 points per period
/// of the fastest product at resolution 2). Throws ResolutionError when
/// resolution < 1 or the symbol needs more than the node cap, as happens for
/// algebraically decaying symbols whose truncation point runs off.
TGrid make_tgrid(const BesselOrder& order, const Symbol& a, double x_max, double resolution);

/// Nystrom nodes and weights on [0, tau]: 16-point panels, the first one a
/// Gauss-Jacobi panel for the x^(2 nu + 1) behavior at the origin.
struct NystromGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
};

NystromGrid nystrom_grid(const BesselOrder& order, double tau, int n);

struct DiscretizedOperator {
  double tau = 0.0;
  int n = 0;
  std::vector<double> x_nodes;
  std::vector<double> x_weights;
  Eigen::MatrixXd matrix;  ///< sqrt(w_i) K(x_i, x_j) sqrt(w_j)
  TGrid tgrid;
};

/// K(x, y) = int_0^inf t sqrt(xy) J(x t) J(y t) a(t) dt by panel quadrature.
double kernel_eval(const BesselOrder& order, const Symbol& a, double x, double y);

/// The same integral on a fixed t-grid.
double kernel_from_grid(const BesselOrder& order, const TGrid& grid, double x, double y);

/// Kernel of beta times the indicator of [0, 1], in closed form.
double indicator_kernel_closed_form(const BesselOrder& order, double beta, double x, double y);

/// Nystrom matrix of the truncated operator with n nodes on [0, tau].
DiscretizedOperator assemble(const BesselOrder& order, const Symbol& a, double tau, int n,
                             double resolution = 2.0);

/// Trace of the truncated operator with symbol b.
double trace_truncated(const BesselOrder& order, const Symbol& b, double tau);

/// int_start^inf w(s) (s sqrt(xy) J(x s) J(y s) - envelope (2/pi) cos(xs - alpha) cos(ys - alpha)) ds
///
/// Uses the large-argument amplitudes, so start * min(x, y) must reach
/// hankel_threshold(order). Each frequency (x + y and x - y) is integrated
/// separately. An empty weight means w = 1.
double bessel_product_tail(const BesselOrder& order, double x, double y, double start,
                           const RealFn& weight, double envelope, double tol);

}  // namespace bsz
