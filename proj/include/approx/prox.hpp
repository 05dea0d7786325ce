#ifndef APPROX_PROX_HPP_
#define APPROX_PROX_HPP_

#include "approx/types.hpp"

namespace approx {

enum class RegKind { Zero, L1, BoxLinear };

const char* name(RegKind k);

// Block-separable regularizer psi(x) = sum_i psi_i(x_i), one of
//   Zero       0
//   L1         lambda |x_i|
//   BoxLinear  c x_i + indicator[lo <= x_i <= hi]
// BoxLinear with lo=0, hi=1, c=-1/N is the separable part of the dual SVM.
struct Regularizer {
  RegKind kind = RegKind::Zero;
  double lambda = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double c = 0.0;
};

Regularizer zero_reg();
Regularizer l1_reg(double lambda);
Regularizer box_linear_reg(double lo, double hi, double c);

double soft_threshold(double x, double t);

// psi(x); +infinity outside the box
double psi_value(const Regularizer& reg, const Eigen::Ref<const Vector>& x);

// argmin_z  <g, z> + (a/2) ||z - z0||^2 + psi_i(z), closed form per kind.
// The coordinate formulas are exact for any block size because every psi here
// is coordinate-separable.
double prox_step(const Regularizer& reg, double z0, double g, double a);
Vector prox_step(const Regularizer& reg, const Eigen::Ref<const Vector>& z0,
                 const Eigen::Ref<const Vector>& g, double a);

}  // namespace approx

#endif  // APPROX_PROX_HPP_
