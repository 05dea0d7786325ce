#ifndef APPROX_SOLVER_HPP_
#define APPROX_SOLVER_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "approx/eso.hpp"
#include "approx/losses.hpp"
#include "approx/problem.hpp"
#include "approx/runlog.hpp"
#include "approx/sampling.hpp"
#include "approx/types.hpp"

namespace approx {

// next member of the accelerated schedule, (sqrt(theta^4+4 theta^2)-theta^2)/2;
// satisfies (1-theta')/theta'^2 = 1/theta^2
double theta_next(double theta);

// theta_0 = tau/n plus the running history, for the analysis-side identities
class ThetaSchedule {
 public:
  ThetaSchedule(Index n, Index tau);
  double current() const { return hist_.back(); }
  long k() const { return static_cast<long>(hist_.size()) - 1; }
  void advance() { hist_.push_back(theta_next(hist_.back())); }
  const std::vector<double>& history() const { return hist_; }

 private:
  std::vector<double> hist_;
};

// Coefficients gamma_k^0..gamma_k^k writing x_k as a convex combination of
// z_0..z_k. theta_history must hold at least theta_0..theta_{k-1}.
std::vector<double> gamma_coeffs(const std::vector<double>& theta_history, Index tau,
                                 Index n, long k);

// expected-suboptimality bound after k iterations: 4 n^2 C / ((k-1) tau + 2n)^2
double complexity_bound(long k, Index tau, Index n, double C);

// iteration count sufficient for an eps-accurate expected objective (0 < eps <= C)
long iterations_for_accuracy(double C, double eps, Index tau, Index n);

struct ReferenceState {
  Vector x, y, z;
  double theta = 1.0;
  long k = 0;
};

// The accelerated iteration over (x, y, z) with the full-dimensional
// combination y = (1-theta) x + theta z formed explicitly each step.
// Analysis-facing; the production path is EfficientSolver.
class ReferenceSolver {
 public:
  ReferenceSolver(const Problem& p, Vector v, Index tau);
  void init(const Eigen::Ref<const Vector>& x0);
  void step(const std::vector<Index>& S);
  const ReferenceState& state() const { return st_; }
  const Vector& x() const { return st_.x; }
  double objective() const;

 private:
  const Problem* prob_;
  Vector v_;
  Index tau_;
  double n_over_tau_;
  ReferenceState st_;
  Vector r_;     // A y
  Vector tbuf_;  // per-block z-steps of the current iteration
};

enum class SolveMode { Approx, Pcdm };
const char* name(SolveMode m);

struct EfficientState {
  Vector z;  // the z~ sequence
  Vector u;
  ResidualPair rp;  // r_u = A u, r_z = A z~
  double theta = 1.0;
  double theta_prev = 1.0;
  long k = 0;
};

// x_k: z~ at k = 0, theta_{k-1}^2 u + z~ afterwards
Vector recover_x(const EfficientState& st);

// Full-vector-free iteration over (u, z~) with maintained residuals;
// gradients at y = theta^2 u + z~ are read off the residuals row by row. In
// Pcdm mode theta stays at tau/n and u is never touched, which is exactly the
// non-accelerated parallel coordinate descent method.
class EfficientSolver {
 public:
  EfficientSolver(const Problem& p, Vector v, Index tau, SolveMode mode, int threads = 1);
  void init(const Eigen::Ref<const Vector>& x0);
  void step(const std::vector<Index>& S);
  const EfficientState& state() const { return st_; }
  Vector x() const { return recover_x(st_); }

  // F(x_k) with the smooth part evaluated from the residuals (no matvec)
  double objective() const;

  // exact recompute of both residuals, resetting accumulated drift
  void refresh_residuals();

 private:
  void apply_block_updates(const std::vector<Index>& S, std::size_t lo, std::size_t hi,
                           double theta_sq, double stiff_scale);
  const Problem* prob_;
  Vector v_;
  Index tau_;
  SolveMode mode_;
  int threads_;
  double n_over_tau_;
  EfficientState st_;
  Vector tbuf_;
  std::vector<Vector> worker_delta_;
};

enum class EngineKind { Efficient, Reference };

struct RunConfig {
  Index tau = 1;
  SolveMode mode = SolveMode::Approx;
  StepsizeRule rule = StepsizeRule::Fr;
  SamplingKind sampling = SamplingKind::TauNice;
  EngineKind engine = EngineKind::Efficient;
  long max_iters = 1000;
  std::uint64_t seed = 0;
  long log_period = 100;
  int threads = 1;
  double rel_tol = 0.0;       // window stop disabled when zero
  long tol_window = 50;       // iterations between stop checks
  long refresh_period = 0;    // exact residual recompute cadence (0 = never)
  Vector x0;                  // empty = origin
  Vector x_ref;               // when set, records ||x_k - x_ref|| per log entry
};

struct RunResult {
  RunLog log;
  Vector x;
};

// Drives one engine to the stopping rule (iteration budget, optionally a
// relative objective-decrease tolerance over a trailing window), logging
// F(x_k) every log_period iterations.
RunResult run(const Problem& p, const RunConfig& cfg);

}  // namespace approx

#endif  // APPROX_SOLVER_HPP_
