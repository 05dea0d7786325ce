#include "approx/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace approx {

const char* name(LossKind k) {
  switch (k) {
    case LossKind::Square: return "square";
    case LossKind::Logistic: return "logistic";
    case LossKind::SmoothedAbs: return "smoothed-abs";
  }
  return "?";
}

Loss make_square_loss(Vector b) { return Loss{LossKind::Square, std::move(b), 0.0}; }

Loss make_logistic_loss(Index m) {
  if (m < 0) throw std::invalid_argument("make_logistic_loss: negative row count");
  return Loss{LossKind::Logistic, Vector(), 0.0};
}

Loss make_smoothed_abs_loss(Vector b, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("make_smoothed_abs_loss: mu must be positive");
  return Loss{LossKind::SmoothedAbs, std::move(b), mu};
}

double phi(const Loss& loss, Index j, double s) {
  switch (loss.kind) {
    case LossKind::Square: {
      const double d = s - loss.b[j];
      return 0.5 * d * d;
    }
    case LossKind::Logistic:
      // log(1+e^s) without overflow for large |s|
      return std::max(s, 0.0) + std::log1p(std::exp(-std::abs(s)));
    case LossKind::SmoothedAbs: {
      const double t = std::abs(s - loss.b[j]);
      const double mu = loss.mu;
      return t <= mu ? t * t / (2.0 * mu) : t - 0.5 * mu;
    }
  }
  return 0.0;
}

double phi_prime(const Loss& loss, Index j, double s) {
  switch (loss.kind) {
    case LossKind::Square:
      return s - loss.b[j];
    case LossKind::Logistic: {
      if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
      const double e = std::exp(s);
      return e / (1.0 + e);
    }
    case LossKind::SmoothedAbs: {
      const double r = (s - loss.b[j]) / loss.mu;
      return r > 1.0 ? 1.0 : (r < -1.0 ? -1.0 : r);
    }
  }
  return 0.0;
}

double derivative_lipschitz(const Loss& loss) {
  switch (loss.kind) {
    case LossKind::Square: return 1.0;
    case LossKind::Logistic: return 0.25;
    case LossKind::SmoothedAbs: return 1.0 / loss.mu;
  }
  return 0.0;
}

double f_value(const Loss& loss, const Eigen::Ref<const Vector>& r) {
  double acc = 0.0;
  for (Index j = 0; j < r.size(); ++j) acc += phi(loss, j, r[j]);
  return acc;
}

Vector full_gradient(const Loss& loss, const SpMat& A, const Eigen::Ref<const Vector>& x) {
  if (x.size() != A.cols()) throw std::invalid_argument("full_gradient: dimension mismatch");
  Vector r = A * x;
  for (Index j = 0; j < r.size(); ++j) r[j] = phi_prime(loss, j, r[j]);
  return A.transpose() * r;
}

void fold_labels_into_rows(SpMat& A, const Eigen::Ref<const Vector>& labels) {
  if (labels.size() != A.rows()) throw std::invalid_argument("fold_labels_into_rows: label count != rows");
  for (Index j = 0; j < labels.size(); ++j)
    if (labels[j] != 1.0 && labels[j] != -1.0)
      throw std::invalid_argument("fold_labels_into_rows: labels must be +1 or -1");
  for (Index c = 0; c < A.outerSize(); ++c)
    for (SpMat::InnerIterator it(A, c); it; ++it) it.valueRef() *= -labels[it.row()];
}

Vector block_gradient(const Loss& loss, const SpMat& A, const BlockPartition& p,
                      Index i, double theta_sq, const ResidualPair& rp) {
  const Index off = p.offset(i);
  const Index sz = p.size(i);
  const auto* outer = A.outerIndexPtr();
  const auto* inner = A.innerIndexPtr();
  const double* vals = A.valuePtr();
  Vector g(sz);
  for (Index c = 0; c < sz; ++c) {
    double acc = 0.0;
    for (auto k = outer[off + c]; k < outer[off + c + 1]; ++k) {
      const Index j = inner[k];
      const double s = theta_sq * rp.r_u[j] + rp.r_z[j];
      acc += vals[k] * phi_prime(loss, j, s);
    }
    g[c] = acc;
  }
  return g;
}

void residual_update(ResidualPair& rp, const SpMat& A, const BlockPartition& p,
                     Index i, const Eigen::Ref<const Vector>& t, double coeff_u) {
  if (t.size() != p.size(i)) throw std::invalid_argument("residual_update: step size != block size");
  const Index off = p.offset(i);
  const auto* outer = A.outerIndexPtr();
  const auto* inner = A.innerIndexPtr();
  const double* vals = A.valuePtr();
  for (Index c = 0; c < t.size(); ++c) {
    const double tc = t[c];
    if (tc == 0.0) continue;
    for (auto k = outer[off + c]; k < outer[off + c + 1]; ++k) {
      const double d = vals[k] * tc;
      rp.r_z[inner[k]] += d;
      rp.r_u[inner[k]] += coeff_u * d;
    }
  }
}

}  // namespace approx
