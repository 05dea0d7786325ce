#ifndef APPROX_LOSSES_HPP_
#define APPROX_LOSSES_HPP_

#include "approx/blocks.hpp"
#include "approx/types.hpp"

namespace approx {

enum class LossKind { Square, Logistic, SmoothedAbs };

const char* name(LossKind k);

// Scalar loss family phi_j applied to the rows of A:
//   f(x) = sum_j phi_j(e_j^T A x)
//
//   Square       phi_j(s) = (s - b_j)^2 / 2
//   Logistic     phi_j(s) = log(1 + e^s); labels are folded into the matrix
//                rows beforehand, so b is unused
//   SmoothedAbs  phi_j(s) = smoothed |s - b_j| with parameter mu > 0:
//                t^2/(2 mu) for t <= mu, t - mu/2 beyond
struct Loss {
  LossKind kind = LossKind::Square;
  Vector b;
  double mu = 0.0;
};

Loss make_square_loss(Vector b);
Loss make_logistic_loss(Index m);
Loss make_smoothed_abs_loss(Vector b, double mu);

double phi(const Loss& loss, Index j, double s);
double phi_prime(const Loss& loss, Index j, double s);

// Lipschitz constant of phi_j': 1, 1/4 or 1/mu
double derivative_lipschitz(const Loss& loss);

// f computed from the residual r = A x
double f_value(const Loss& loss, const Eigen::Ref<const Vector>& r);

// dense-route gradient A^T phi'(A x)
Vector full_gradient(const Loss& loss, const SpMat& A, const Eigen::Ref<const Vector>& x);

// multiply row j of A by -labels[j] (labels must be +-1); after folding,
// the logistic loss depends on the row product alone
void fold_labels_into_rows(SpMat& A, const Eigen::Ref<const Vector>& labels);

// Maintained products r_u = A u and r_z = A z for the full-vector-free
// iteration: gradients at y = theta^2 u + z come from these alone.
struct ResidualPair {
  Vector r_u;
  Vector r_z;
};

// gradient of block i of f at theta_sq*u + z, touching only the rows met by
// the block's columns
Vector block_gradient(const Loss& loss, const SpMat& A, const BlockPartition& p,
                      Index i, double theta_sq, const ResidualPair& rp);

// after step t on block i: r_z += A_{:,i} t and r_u += coeff_u * A_{:,i} t
void residual_update(ResidualPair& rp, const SpMat& A, const BlockPartition& p,
                     Index i, const Eigen::Ref<const Vector>& t, double coeff_u);

}  // namespace approx

#endif  // APPROX_LOSSES_HPP_
