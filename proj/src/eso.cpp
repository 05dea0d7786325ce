#include "approx/eso.hpp"

#include <stdexcept>
#include <string>

#include "approx/io.hpp"
#include "approx/sampling.hpp"

namespace approx {

LipschitzTable lipschitz_table(const SpMat& A, const BlockPartition& p,
                               const Eigen::Ref<const Vector>& loss_lipschitz) {
  if (p.dim() != A.cols()) throw std::invalid_argument("lipschitz_table: partition dim != columns");
  if (loss_lipschitz.size() != A.rows())
    throw std::invalid_argument("lipschitz_table: need one derivative constant per row");

  const Index m = A.rows();
  const Index n = p.blocks();
  const auto* outer = A.outerIndexPtr();
  const auto* inner = A.innerIndexPtr();
  const double* vals = A.valuePtr();

  LipschitzTable t;
  t.n_blocks = n;
  t.omega.assign(static_cast<std::size_t>(m), 0);
  t.row_ptr.assign(static_cast<std::size_t>(m) + 1, 0);

  // pass 1: count distinct touching blocks per row (stamp avoids a set)
  std::vector<Index> stamp(static_cast<std::size_t>(m), -1);
  for (Index i = 0; i < n; ++i) {
    for (Index c = p.offset(i); c < p.offset(i) + p.size(i); ++c) {
      for (auto k = outer[c]; k < outer[c + 1]; ++k) {
        if (vals[k] == 0.0) continue;
        const auto j = static_cast<std::size_t>(inner[k]);
        if (stamp[j] != i) {
          stamp[j] = i;
          ++t.omega[j];
        }
      }
    }
  }
  for (Index j = 0; j < m; ++j) {
    t.row_ptr[static_cast<std::size_t>(j) + 1] =
        t.row_ptr[static_cast<std::size_t>(j)] + t.omega[static_cast<std::size_t>(j)];
    t.omega_max = std::max(t.omega_max, t.omega[static_cast<std::size_t>(j)]);
  }

  // pass 2: accumulate ||A_ji||^2 per (row, block) into row-grouped storage;
  // blocks are visited ascending, so entries end up sorted within each row
  const Index nnz_rb = t.row_ptr.back();
  t.block.assign(static_cast<std::size_t>(nnz_rb), 0);
  t.value.assign(static_cast<std::size_t>(nnz_rb), 0.0);
  std::vector<Index> cursor(t.row_ptr.begin(), t.row_ptr.end() - 1);
  std::fill(stamp.begin(), stamp.end(), Index{-1});
  std::vector<Index> slot(static_cast<std::size_t>(m), 0);
  for (Index i = 0; i < n; ++i) {
    for (Index c = p.offset(i); c < p.offset(i) + p.size(i); ++c) {
      for (auto k = outer[c]; k < outer[c + 1]; ++k) {
        if (vals[k] == 0.0) continue;
        const auto j = static_cast<std::size_t>(inner[k]);
        if (stamp[j] != i) {
          stamp[j] = i;
          slot[j] = cursor[j]++;
          t.block[static_cast<std::size_t>(slot[j])] = i;
        }
        t.value[static_cast<std::size_t>(slot[j])] += vals[k] * vals[k];
      }
    }
  }
  for (Index j = 0; j < m; ++j) {
    const double lphi = loss_lipschitz[j];
    if (lphi < 0.0) throw std::invalid_argument("lipschitz_table: negative derivative constant");
    for (auto k = t.row_ptr[static_cast<std::size_t>(j)]; k < t.row_ptr[static_cast<std::size_t>(j) + 1]; ++k)
      t.value[static_cast<std::size_t>(k)] *= lphi;
  }
  return t;
}

double beta(Index omega_j, Index tau, Index n) {
  if (tau < 1 || tau > n) throw std::invalid_argument("beta: need 1 <= tau <= n");
  return 1.0 + static_cast<double>((omega_j - 1) * (tau - 1)) /
                   static_cast<double>(std::max<Index>(1, n - 1));
}

const char* name(StepsizeRule r) {
  switch (r) {
    case StepsizeRule::Fr: return "fr";
    case StepsizeRule::Rt: return "rt";
    case StepsizeRule::Nc: return "nc";
  }
  return "?";
}

StepsizeRule parse_stepsize_rule(const std::string& s) {
  if (s == "fr") return StepsizeRule::Fr;
  if (s == "rt") return StepsizeRule::Rt;
  if (s == "nc") return StepsizeRule::Nc;
  throw std::invalid_argument("unknown stepsize rule '" + s + "'");
}

StepsizeVector stepsizes(StepsizeRule rule, const LipschitzTable& L, const SpMat& A,
                         const BlockPartition& p, Index tau, LossKind loss) {
  const Index n = L.n_blocks;
  if (tau < 1 || tau > n) throw std::invalid_argument("stepsizes: need 1 <= tau <= n");

  StepsizeVector sv;
  sv.rule = rule;
  sv.tau = tau;
  sv.v = Vector::Zero(n);

  switch (rule) {
    case StepsizeRule::Fr:
      for (Index j = 0; j < L.rows(); ++j) {
        const double bj = beta(L.omega[static_cast<std::size_t>(j)], tau, n);
        for (auto k = L.row_ptr[static_cast<std::size_t>(j)];
             k < L.row_ptr[static_cast<std::size_t>(j) + 1]; ++k)
          sv.v[L.block[static_cast<std::size_t>(k)]] += bj * L.value[static_cast<std::size_t>(k)];
      }
      break;
    case StepsizeRule::Rt:
      for (Index j = 0; j < L.rows(); ++j) {
        const double bj = beta(L.omega_max, tau, n);
        for (auto k = L.row_ptr[static_cast<std::size_t>(j)];
             k < L.row_ptr[static_cast<std::size_t>(j) + 1]; ++k)
          sv.v[L.block[static_cast<std::size_t>(k)]] += bj * L.value[static_cast<std::size_t>(k)];
      }
      break;
    case StepsizeRule::Nc: {
      if (loss != LossKind::Square)
        throw std::invalid_argument("stepsizes: nc rule is defined for the square loss only");
      if (!p.all_unit())
        throw std::invalid_argument("stepsizes: nc rule is defined for unit blocks only");
      const Vector rsq = row_squared_norms(A);
      for (Index j = 0; j < L.rows(); ++j)
        for (auto k = L.row_ptr[static_cast<std::size_t>(j)];
             k < L.row_ptr[static_cast<std::size_t>(j) + 1]; ++k)
          sv.v[L.block[static_cast<std::size_t>(k)]] += rsq[j];
      break;
    }
  }
  return sv;
}

SeparabilityAverages separability_averages(const LipschitzTable& L) {
  double total = 0.0;
  for (double v : L.value) total += v;
  if (!(total > 0.0)) throw std::invalid_argument("separability_averages: table sums to zero");

  const Index n = L.n_blocks;
  SeparabilityAverages out;
  out.w = Vector::Zero(n);
  double weighted_total = 0.0;  // sum_j omega_j sum_i L_ji
  for (Index j = 0; j < L.rows(); ++j) {
    const auto wj = static_cast<double>(L.omega[static_cast<std::size_t>(j)]);
    double row_sum = 0.0;
    for (auto k = L.row_ptr[static_cast<std::size_t>(j)];
         k < L.row_ptr[static_cast<std::size_t>(j) + 1]; ++k) {
      const double lv = L.value[static_cast<std::size_t>(k)];
      row_sum += lv;
      out.w[L.block[static_cast<std::size_t>(k)]] += wj * lv;
    }
    weighted_total += wj * row_sum;
  }
  out.omega_bar = weighted_total / total;
  out.L_bar = total / static_cast<double>(n);
  out.w *= static_cast<double>(n) / weighted_total;
  return out;
}

double eso_slack(const Problem& prob, Index tau, const Eigen::Ref<const Vector>& v,
                 const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& h,
                 std::size_t cap) {
  const Index n = prob.part.blocks();
  const auto subsets = enumerate_tau_nice(n, tau, cap);

  const Vector rx = prob.A * x;
  const double fx = f_value(prob.loss, rx);

  // per-block residual contributions A_{:,i} h^(i)
  std::vector<Vector> dr(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    dr[static_cast<std::size_t>(i)] =
        prob.A.middleCols(prob.part.offset(i), prob.part.size(i)) *
        h.segment(prob.part.offset(i), prob.part.size(i));

  double lhs = 0.0;
  Vector rs(rx.size());
  for (const auto& S : subsets) {
    rs = rx;
    for (Index i : S) rs += dr[static_cast<std::size_t>(i)];
    lhs += f_value(prob.loss, rs);
  }
  lhs /= static_cast<double>(subsets.size());

  const Vector grad = full_gradient(prob.loss, prob.A, x);
  const double frac = static_cast<double>(tau) / static_cast<double>(n);
  const double rhs = fx + frac * (grad.dot(h) + 0.5 * weighted_norm_sq(h, v, prob.part));
  return rhs - lhs;
}

}  // namespace approx
