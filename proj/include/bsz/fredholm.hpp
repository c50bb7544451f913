#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>
#include <vector>

#include "bsz/bessel_op.hpp"

namespace bsz {

struct LogDet {
  double value = 0.0;  ///< log |det(I + A)|
  int sign = 1;
};

/// log |det(I + A)| by partial-pivoting LU. Throws SingularError when a pivot
/// is exactly zero.
LogDet logdet(const Eigen::MatrixXd& a);
LogDet logdet(const DiscretizedOperator& op);

struct DeterminantResult {
  double logdet = 0.0;
  int sign = 1;
  int n_final = 0;
  std::vector<std::pair<int, double>> history;
  bool converged = false;
  double est_error = 0.0;  ///< |last increment|
};

using OperatorFactory = std::function<DiscretizedOperator(int)>;

/// Doubles n from n0 until consecutive log-determinants differ by less than
/// tol, or n would exceed n_max. Non-convergence is reported in the result.
DeterminantResult converged_logdet(const OperatorFactory& make_op, double tol, int n0 = 16,
                                   int n_max = 1024);

}  // namespace bsz
