#include "approx/prox.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace approx {

const char* name(RegKind k) {
  switch (k) {
    case RegKind::Zero: return "none";
    case RegKind::L1: return "l1";
    case RegKind::BoxLinear: return "box-linear";
  }
  return "?";
}

Regularizer zero_reg() { return Regularizer{}; }

Regularizer l1_reg(double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("l1_reg: lambda must be nonnegative");
  return Regularizer{RegKind::L1, lambda, 0.0, 0.0, 0.0};
}

Regularizer box_linear_reg(double lo, double hi, double c) {
  if (lo > hi) throw std::invalid_argument("box_linear_reg: lo > hi");
  return Regularizer{RegKind::BoxLinear, 0.0, lo, hi, c};
}

double soft_threshold(double x, double t) {
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

double psi_value(const Regularizer& reg, const Eigen::Ref<const Vector>& x) {
  switch (reg.kind) {
    case RegKind::Zero:
      return 0.0;
    case RegKind::L1:
      return reg.lambda * x.cwiseAbs().sum();
    case RegKind::BoxLinear: {
      double acc = 0.0;
      for (Index i = 0; i < x.size(); ++i) {
        if (x[i] < reg.lo || x[i] > reg.hi) return std::numeric_limits<double>::infinity();
        acc += reg.c * x[i];
      }
      return acc;
    }
  }
  return 0.0;
}

double prox_step(const Regularizer& reg, double z0, double g, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("prox_step: stiffness must be positive");
  switch (reg.kind) {
    case RegKind::Zero:
      return z0 - g / a;
    case RegKind::L1:
      return soft_threshold(z0 - g / a, reg.lambda / a);
    case RegKind::BoxLinear: {
      const double u = z0 - (g + reg.c) / a;
      return u < reg.lo ? reg.lo : (u > reg.hi ? reg.hi : u);
    }
  }
  return z0;
}

Vector prox_step(const Regularizer& reg, const Eigen::Ref<const Vector>& z0,
                 const Eigen::Ref<const Vector>& g, double a) {
  if (z0.size() != g.size()) throw std::invalid_argument("prox_step: block size mismatch");
  Vector out(z0.size());
  for (Index i = 0; i < z0.size(); ++i) out[i] = prox_step(reg, z0[i], g[i], a);
  return out;
}

}  // namespace approx
