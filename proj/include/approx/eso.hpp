#ifndef APPROX_ESO_HPP_
#define APPROX_ESO_HPP_

#include <vector>

#include "approx/blocks.hpp"
#include "approx/losses.hpp"
#include "approx/problem.hpp"
#include "approx/types.hpp"

namespace approx {

// Per-(row, block) curvature constants L_ji = L_phi_j * ||A_ji||^2, stored
// row-compressed over the row/block incidence pattern. Entries exist exactly
// where a block meets the structural support of a row, so omega_j is the
// number of entries in row j.
struct LipschitzTable {
  std::vector<Index> row_ptr;  // length m+1
  std::vector<Index> block;    // block index per entry, ascending within a row
  std::vector<double> value;   // L_ji > 0
  std::vector<Index> omega;    // per-row block counts
  Index omega_max = 0;
  Index n_blocks = 0;

  Index rows() const { return static_cast<Index>(omega.size()); }
};

LipschitzTable lipschitz_table(const SpMat& A, const BlockPartition& p,
                               const Eigen::Ref<const Vector>& loss_lipschitz);

// 1 + (omega_j - 1)(tau - 1) / max(1, n - 1)
double beta(Index omega_j, Index tau, Index n);

enum class StepsizeRule { Fr, Rt, Nc };

const char* name(StepsizeRule r);
StepsizeRule parse_stepsize_rule(const std::string& s);

struct StepsizeVector {
  Vector v;
  StepsizeRule rule = StepsizeRule::Fr;
  Index tau = 1;
};

// ESO stepsizes for a tau-nice sampling:
//   Fr  v_i = sum_j beta(omega_j) L_ji          (per-row separability degrees)
//   Rt  v_i = sum_j beta(omega)   L_ji          (worst-case degree)
//   Nc  v_i = sum_{j: i in C_j} ||A_j:||^2      (square loss, unit blocks only)
StepsizeVector stepsizes(StepsizeRule rule, const LipschitzTable& L, const SpMat& A,
                         const BlockPartition& p, Index tau, LossKind loss);

// Data-weighted separability average, mean curvature and weight profile:
//   omega_bar = sum_j omega_j (sum_i L_ji) / (sum_{k,i} L_ki)
//   L_bar     = (sum_{j,i} L_ji) / n
//   w_i       = n (sum_j omega_j L_ji) / (sum_{j,i} omega_j L_ji)
// Note omega_bar * L_bar * w equals the Fr stepsizes at tau = n.
struct SeparabilityAverages {
  double omega_bar = 0.0;
  double L_bar = 0.0;
  Vector w;
};

SeparabilityAverages separability_averages(const LipschitzTable& L);

// Certifies the overapproximation at one (x, h): returns RHS - LHS of
//   E[f(x + h_[S])] <= f(x) + (tau/n)(<grad f(x), h> + ||h||_v^2 / 2)
// with the expectation taken exactly over all tau-nice subsets. Enumeration
// scale only; throws when C(n,tau) exceeds cap.
double eso_slack(const Problem& prob, Index tau, const Eigen::Ref<const Vector>& v,
                 const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& h,
                 std::size_t cap = 1000000);

}  // namespace approx

#endif  // APPROX_ESO_HPP_
