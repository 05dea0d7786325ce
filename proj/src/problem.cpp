#include "approx/problem.hpp"

#include <stdexcept>

namespace approx {

Problem make_problem(SpMat A, BlockPartition part, Loss loss, Regularizer reg) {
  if (part.dim() != A.cols())
    throw std::invalid_argument("make_problem: partition covers " + std::to_string(part.dim()) +
                                " coordinates but the matrix has " + std::to_string(A.cols()) +
                                " columns");
  if (loss.kind != LossKind::Logistic && loss.b.size() != A.rows())
    throw std::invalid_argument("make_problem: loss data length != row count");
  if (!A.isCompressed()) A.makeCompressed();
  return Problem{std::move(A), std::move(part), std::move(loss), std::move(reg)};
}

double smooth_value(const Problem& p, const Eigen::Ref<const Vector>& x) {
  return f_value(p.loss, p.A * x);
}

double objective(const Problem& p, const Eigen::Ref<const Vector>& x) {
  return smooth_value(p, x) + psi_value(p.reg, x);
}

}  // namespace approx
