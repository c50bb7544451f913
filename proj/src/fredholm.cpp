#include "bsz/fredholm.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bsz/errors.hpp"

namespace bsz {

LogDet logdet(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw DomainError("logdet needs a square matrix");
  if (!a.allFinite()) throw DomainError("logdet: matrix has non-finite entries");
  const Eigen::Index n = a.rows();
  LogDet out;
  if (n == 0) return out;
  const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) + a;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  const Eigen::MatrixXd& packed = lu.matrixLU();
  int sign = static_cast<int>(lu.permutationP().determinant());
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double pivot = packed(i, i);
    if (pivot == 0.0) throw SingularError("det(I + A) is zero (pivot " + std::to_string(i) + ")");
    if (pivot < 0.0) sign = -sign;
    sum += std::log(std::abs(pivot));
  }
  out.value = sum;
  out.sign = sign;
  return out;
}

LogDet logdet(const DiscretizedOperator& op) { return logdet(op.matrix); }

DeterminantResult converged_logdet(const OperatorFactory& make_op, double tol, int n0, int n_max) {
  if (n0 < 8) throw DomainError("converged_logdet: n0 must be >= 8");
  if (n_max < 2 * n0) throw DomainError("converged_logdet: n_max must be >= 2 n0");
  if (!(tol > 0.0)) throw DomainError("converged_logdet: tol must be > 0");

  DeterminantResult result;
  result.est_error = std::numeric_limits<double>::infinity();
  for (int n = n0; n <= n_max; n *= 2) {
    const LogDet d = logdet(make_op(n));
    if (!result.history.empty()) result.est_error = std::abs(d.value - result.history.back().second);
    result.history.emplace_back(n, d.value);
    result.logdet = d.value;
    result.sign = d.sign;
    result.n_final = n;
    if (result.est_error < tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace bsz
