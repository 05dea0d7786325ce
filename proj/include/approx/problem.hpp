#ifndef APPROX_PROBLEM_HPP_
#define APPROX_PROBLEM_HPP_

#include "approx/blocks.hpp"
#include "approx/losses.hpp"
#include "approx/prox.hpp"
#include "approx/types.hpp"

namespace approx {

// F(x) = f(x) + psi(x) with f(x) = sum_j phi_j(e_j^T A x)
struct Problem {
  SpMat A;
  BlockPartition part;
  Loss loss;
  Regularizer reg;

  Index rows() const { return A.rows(); }
  Index dim() const { return A.cols(); }
};

// validates that matrix, partition and loss data agree
Problem make_problem(SpMat A, BlockPartition part, Loss loss, Regularizer reg);

double smooth_value(const Problem& p, const Eigen::Ref<const Vector>& x);
double objective(const Problem& p, const Eigen::Ref<const Vector>& x);

}  // namespace approx

#endif  // APPROX_PROBLEM_HPP_
