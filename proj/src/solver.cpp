#include "approx/solver.hpp"

#include <cassert>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <thread>

namespace {

// schedule self-check: the update must satisfy (1-t')/t'^2 = 1/t^2
inline void check_theta_identity(double theta, double next) {
  (void)theta;
  (void)next;
  assert(std::abs((1.0 - next) / (next * next) - 1.0 / (theta * theta)) <=
         1e-9 / (theta * theta));
}

}  // namespace

namespace approx {

double theta_next(double theta) {
  if (!(theta > 0.0) || theta > 1.0)
    throw std::invalid_argument("theta_next: theta must lie in (0, 1]");
  // theta * (sqrt(theta^2+4) - theta) / 2, the positive root of
  // t^2 + theta^2 t - theta^2 = 0
  return 0.5 * theta * (std::sqrt(theta * theta + 4.0) - theta);
}

ThetaSchedule::ThetaSchedule(Index n, Index tau) {
  if (n < 1 || tau < 1 || tau > n) throw std::invalid_argument("ThetaSchedule: need 1 <= tau <= n");
  hist_.push_back(static_cast<double>(tau) / static_cast<double>(n));
}

std::vector<double> gamma_coeffs(const std::vector<double>& theta_history, Index tau,
                                 Index n, long k) {
  if (k < 0) throw std::invalid_argument("gamma_coeffs: k must be nonnegative");
  if (k == 0) return {1.0};
  if (static_cast<long>(theta_history.size()) < k)
    throw std::invalid_argument("gamma_coeffs: theta history shorter than k");

  const double n_over_tau = static_cast<double>(n) / static_cast<double>(tau);
  std::vector<double> g = {0.0, 1.0};
  for (long kk = 1; kk < k; ++kk) {
    const double t_k = theta_history[static_cast<std::size_t>(kk)];
    const double t_prev = theta_history[static_cast<std::size_t>(kk - 1)];
    std::vector<double> next(static_cast<std::size_t>(kk) + 2);
    for (long l = 0; l < kk; ++l)
      next[static_cast<std::size_t>(l)] = (1.0 - t_k) * g[static_cast<std::size_t>(l)];
    next[static_cast<std::size_t>(kk)] =
        t_k * (1.0 - n_over_tau * t_prev) + n_over_tau * (t_prev - t_k);
    next[static_cast<std::size_t>(kk) + 1] = n_over_tau * t_k;
    g = std::move(next);
  }
  return g;
}

double complexity_bound(long k, Index tau, Index n, double C) {
  if (k < 1) throw std::invalid_argument("complexity_bound: k must be at least 1");
  const double nd = static_cast<double>(n);
  const double denom = static_cast<double>(k - 1) * static_cast<double>(tau) + 2.0 * nd;
  return 4.0 * nd * nd / (denom * denom) * C;
}

long iterations_for_accuracy(double C, double eps, Index tau, Index n) {
  if (!(eps > 0.0) || eps > C)
    throw std::invalid_argument("iterations_for_accuracy: need 0 < eps <= C");
  const double nd = static_cast<double>(n);
  const double td = static_cast<double>(tau);
  return static_cast<long>(std::ceil(2.0 * nd / td * (std::sqrt(C / eps) - 1.0) + 1.0));
}

// ---------------------------------------------------------------------------
// reference iteration

ReferenceSolver::ReferenceSolver(const Problem& p, Vector v, Index tau)
    : prob_(&p), v_(std::move(v)), tau_(tau) {
  const Index n = p.part.blocks();
  if (tau < 1 || tau > n) throw std::invalid_argument("ReferenceSolver: need 1 <= tau <= n");
  if (v_.size() != n) throw std::invalid_argument("ReferenceSolver: stepsize length != block count");
  n_over_tau_ = static_cast<double>(n) / static_cast<double>(tau);
  init(Vector::Zero(p.dim()));
}

void ReferenceSolver::init(const Eigen::Ref<const Vector>& x0) {
  if (x0.size() != prob_->dim()) throw std::invalid_argument("ReferenceSolver::init: bad x0 length");
  st_.x = x0;
  st_.y = x0;
  st_.z = x0;
  st_.theta = static_cast<double>(tau_) / static_cast<double>(prob_->part.blocks());
  st_.k = 0;
  r_.resize(prob_->rows());
  tbuf_ = Vector::Zero(prob_->dim());
}

void ReferenceSolver::step(const std::vector<Index>& S) {
  const BlockPartition& part = prob_->part;
  const Loss& loss = prob_->loss;
  const double theta = st_.theta;

  st_.y = (1.0 - theta) * st_.x + theta * st_.z;
  r_.noalias() = prob_->A * st_.y;

  const double stiff_scale = n_over_tau_ * theta;
  const auto* outer = prob_->A.outerIndexPtr();
  const auto* inner = prob_->A.innerIndexPtr();
  const double* vals = prob_->A.valuePtr();

  // all block proximal problems read (y, z_k); updates are applied after
  for (Index i : S) {
    const Index off = part.offset(i);
    const Index sz = part.size(i);
    if (v_[i] == 0.0) {
      // block touched by no row: gradient is identically zero, leave it
      tbuf_.segment(off, sz).setZero();
      continue;
    }
    const double stiff = stiff_scale * v_[i];
    if (sz == 1) {
      double g = 0.0;
      for (auto idx = outer[off]; idx < outer[off + 1]; ++idx)
        g += vals[idx] * phi_prime(loss, inner[idx], r_[inner[idx]]);
      tbuf_[off] = prox_step(prob_->reg, st_.z[off], g, stiff) - st_.z[off];
    } else {
      Vector g(sz);
      for (Index c = 0; c < sz; ++c) {
        double acc = 0.0;
        for (auto idx = outer[off + c]; idx < outer[off + c + 1]; ++idx)
          acc += vals[idx] * phi_prime(loss, inner[idx], r_[inner[idx]]);
        g[c] = acc;
      }
      tbuf_.segment(off, sz) =
          prox_step(prob_->reg, st_.z.segment(off, sz), g, stiff) - st_.z.segment(off, sz);
    }
  }

  // x_{k+1} = y_k + (n/tau) theta (z_{k+1} - z_k), supported on S
  st_.x = st_.y;
  const double spread = n_over_tau_ * theta;
  for (Index i : S) {
    const Index off = part.offset(i);
    const Index sz = part.size(i);
    st_.x.segment(off, sz) += spread * tbuf_.segment(off, sz);
    st_.z.segment(off, sz) += tbuf_.segment(off, sz);
  }

  st_.theta = theta_next(theta);
  check_theta_identity(theta, st_.theta);
  ++st_.k;
}

double ReferenceSolver::objective() const { return approx::objective(*prob_, st_.x); }

// ---------------------------------------------------------------------------
// efficient iteration

const char* name(SolveMode m) { return m == SolveMode::Approx ? "approx" : "pcdm"; }

Vector recover_x(const EfficientState& st) {
  if (st.k == 0) return st.z;
  return st.theta_prev * st.theta_prev * st.u + st.z;
}

EfficientSolver::EfficientSolver(const Problem& p, Vector v, Index tau, SolveMode mode,
                                 int threads)
    : prob_(&p), v_(std::move(v)), tau_(tau), mode_(mode), threads_(threads) {
  const Index n = p.part.blocks();
  if (tau < 1 || tau > n) throw std::invalid_argument("EfficientSolver: need 1 <= tau <= n");
  if (v_.size() != n) throw std::invalid_argument("EfficientSolver: stepsize length != block count");
  if (threads < 1) throw std::invalid_argument("EfficientSolver: need at least one thread");
  n_over_tau_ = static_cast<double>(n) / static_cast<double>(tau);
  init(Vector::Zero(p.dim()));
}

void EfficientSolver::init(const Eigen::Ref<const Vector>& x0) {
  if (x0.size() != prob_->dim()) throw std::invalid_argument("EfficientSolver::init: bad x0 length");
  st_.z = x0;
  st_.u = Vector::Zero(prob_->dim());
  st_.rp.r_z = prob_->A * st_.z;
  st_.rp.r_u = Vector::Zero(prob_->rows());
  st_.theta = static_cast<double>(tau_) / static_cast<double>(prob_->part.blocks());
  st_.theta_prev = st_.theta;
  st_.k = 0;
  tbuf_ = Vector::Zero(prob_->dim());
}

void EfficientSolver::apply_block_updates(const std::vector<Index>& S, std::size_t lo,
                                          std::size_t hi, double theta_sq,
                                          double stiff_scale) {
  const BlockPartition& part = prob_->part;
  const Loss& loss = prob_->loss;
  const auto* outer = prob_->A.outerIndexPtr();
  const auto* inner = prob_->A.innerIndexPtr();
  const double* vals = prob_->A.valuePtr();
  const double* ru = st_.rp.r_u.data();
  const double* rz = st_.rp.r_z.data();

  for (std::size_t s = lo; s < hi; ++s) {
    const Index i = S[s];
    const Index off = part.offset(i);
    const Index sz = part.size(i);
    if (v_[i] == 0.0) {
      // block touched by no row: gradient is identically zero, leave it
      tbuf_.segment(off, sz).setZero();
      continue;
    }
    const double stiff = stiff_scale * v_[i];
    if (sz == 1) {
      double g = 0.0;
      for (auto idx = outer[off]; idx < outer[off + 1]; ++idx) {
        const Index j = inner[idx];
        g += vals[idx] * phi_prime(loss, j, theta_sq * ru[j] + rz[j]);
      }
      tbuf_[off] = prox_step(prob_->reg, st_.z[off], g, stiff) - st_.z[off];
    } else {
      const Vector g = block_gradient(loss, prob_->A, part, i, theta_sq, st_.rp);
      tbuf_.segment(off, sz) =
          prox_step(prob_->reg, st_.z.segment(off, sz), g, stiff) - st_.z.segment(off, sz);
    }
  }
}

void EfficientSolver::step(const std::vector<Index>& S) {
  const BlockPartition& part = prob_->part;
  const double theta = st_.theta;
  const double theta_sq = theta * theta;
  const double stiff_scale = n_over_tau_ * theta;
  // u coefficient of this iteration; exactly zero at k = 0 (theta = tau/n)
  // and throughout Pcdm mode
  const double coeff_u = (mode_ == SolveMode::Pcdm || st_.k == 0)
                             ? 0.0
                             : -(1.0 - n_over_tau_ * theta) / theta_sq;

  const auto* outer = prob_->A.outerIndexPtr();
  const auto* inner = prob_->A.innerIndexPtr();
  const double* vals = prob_->A.valuePtr();

  int workers = 1;
  if (threads_ > 1 && S.size() >= 2) {
    // fan out only when the iteration touches enough entries to amortize
    // the thread spawns
    std::size_t touched = 0;
    for (Index i : S) {
      const Index off = part.offset(i);
      touched += static_cast<std::size_t>(outer[off + part.size(i)] - outer[off]);
      if (touched >= 8192) break;
    }
    if (touched >= 8192)
      workers = static_cast<int>(std::min<std::size_t>(S.size(), static_cast<std::size_t>(threads_)));
  }

  if (workers == 1) {
    apply_block_updates(S, 0, S.size(), theta_sq, stiff_scale);
    for (Index i : S) {
      const Index off = part.offset(i);
      const Index sz = part.size(i);
      st_.z.segment(off, sz) += tbuf_.segment(off, sz);
      if (coeff_u != 0.0) st_.u.segment(off, sz) += coeff_u * tbuf_.segment(off, sz);
      for (Index c = off; c < off + sz; ++c) {
        const double tc = tbuf_[c];
        if (tc == 0.0) continue;
        for (auto idx = outer[c]; idx < outer[c + 1]; ++idx) {
          const double d = vals[idx] * tc;
          st_.rp.r_z[inner[idx]] += d;
          if (coeff_u != 0.0) st_.rp.r_u[inner[idx]] += coeff_u * d;
        }
      }
    }
  } else {
    const std::size_t ns = S.size();
    auto chunk = [&](int w) {
      return std::pair<std::size_t, std::size_t>{ns * static_cast<std::size_t>(w) / workers,
                                                 ns * (static_cast<std::size_t>(w) + 1) / workers};
    };
    {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
          auto [lo, hi] = chunk(w);
          apply_block_updates(S, lo, hi, theta_sq, stiff_scale);
        });
      for (auto& th : pool) th.join();
    }
    if (worker_delta_.size() < static_cast<std::size_t>(workers))
      worker_delta_.resize(static_cast<std::size_t>(workers));
    {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
          Vector& delta = worker_delta_[static_cast<std::size_t>(w)];
          delta = Vector::Zero(prob_->rows());
          auto [lo, hi] = chunk(w);
          for (std::size_t s = lo; s < hi; ++s) {
            const Index i = S[s];
            const Index off = part.offset(i);
            const Index sz = part.size(i);
            st_.z.segment(off, sz) += tbuf_.segment(off, sz);
            if (coeff_u != 0.0) st_.u.segment(off, sz) += coeff_u * tbuf_.segment(off, sz);
            for (Index c = off; c < off + sz; ++c) {
              const double tc = tbuf_[c];
              if (tc == 0.0) continue;
              for (auto idx = outer[c]; idx < outer[c + 1]; ++idx)
                delta[inner[idx]] += vals[idx] * tc;
            }
          }
        });
      for (auto& th : pool) th.join();
    }
    // residual rows may collide across blocks: reduce the per-worker deltas
    // in a fixed order
    for (int w = 0; w < workers; ++w) {
      st_.rp.r_z += worker_delta_[static_cast<std::size_t>(w)];
      if (coeff_u != 0.0) st_.rp.r_u += coeff_u * worker_delta_[static_cast<std::size_t>(w)];
    }
  }

  st_.theta_prev = theta;
  if (mode_ == SolveMode::Approx) {
    st_.theta = theta_next(theta);
    check_theta_identity(theta, st_.theta);
  }
  ++st_.k;
}

double EfficientSolver::objective() const {
  double f;
  if (st_.k == 0) {
    f = f_value(prob_->loss, st_.rp.r_z);
  } else {
    const double tp2 = st_.theta_prev * st_.theta_prev;
    f = f_value(prob_->loss, tp2 * st_.rp.r_u + st_.rp.r_z);
  }
  return f + psi_value(prob_->reg, x());
}

void EfficientSolver::refresh_residuals() {
  st_.rp.r_z.noalias() = prob_->A * st_.z;
  st_.rp.r_u.noalias() = prob_->A * st_.u;
}

// ---------------------------------------------------------------------------
// run loop

RunResult run(const Problem& p, const RunConfig& cfg) {
  const Index n = p.part.blocks();
  if (cfg.tau < 1 || cfg.tau > n)
    throw std::invalid_argument("run: tau must lie in [1, " + std::to_string(n) + "]");
  if (cfg.max_iters < 0) throw std::invalid_argument("run: negative iteration budget");
  if (cfg.log_period < 1) throw std::invalid_argument("run: log period must be positive");
  if (cfg.rel_tol > 0.0 && cfg.tol_window < 1)
    throw std::invalid_argument("run: stop window must be positive");
  if (cfg.threads < 1) throw std::invalid_argument("run: need at least one thread");
  if (cfg.mode == SolveMode::Pcdm && cfg.engine == EngineKind::Reference)
    throw std::invalid_argument("run: pcdm mode requires the efficient engine");
  if (cfg.x_ref.size() != 0 && cfg.x_ref.size() != p.dim())
    throw std::invalid_argument("run: x_ref length mismatch");

  const Vector lphi = Vector::Constant(p.rows(), derivative_lipschitz(p.loss));
  const LipschitzTable L = lipschitz_table(p.A, p.part, lphi);
  // validates rule/loss/block-shape combinations before any iteration
  const StepsizeVector sv = stepsizes(cfg.rule, L, p.A, p.part, cfg.tau, p.loss.kind);

  const Vector x0 = cfg.x0.size() ? cfg.x0 : Vector::Zero(p.dim());
  if (x0.size() != p.dim()) throw std::invalid_argument("run: x0 length mismatch");

  const bool efficient = cfg.engine == EngineKind::Efficient;
  std::optional<ReferenceSolver> ref_engine;
  std::optional<EfficientSolver> eff_engine;
  std::function<void(const std::vector<Index>&)> do_step;
  std::function<double()> do_objective;
  std::function<Vector()> do_x;
  if (efficient) {
    eff_engine.emplace(p, sv.v, cfg.tau, cfg.mode, cfg.threads);
    eff_engine->init(x0);
    do_step = [&](const std::vector<Index>& S) { eff_engine->step(S); };
    do_objective = [&] { return eff_engine->objective(); };
    do_x = [&] { return eff_engine->x(); };
  } else {
    ref_engine.emplace(p, sv.v, cfg.tau);
    ref_engine->init(x0);
    do_step = [&](const std::vector<Index>& S) { ref_engine->step(S); };
    do_objective = [&] { return ref_engine->objective(); };
    do_x = [&] { return ref_engine->x(); };
  }

  RunLog log;
  log.seed = cfg.seed;
  log.tau = cfg.tau;
  log.stepsizes = name(cfg.rule);
  log.loss = name(p.loss.kind);
  log.reg = name(p.reg.kind);
  log.mode = name(cfg.mode);

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  auto record = [&](long k) {
    RunRecord rec;
    rec.k = k;
    rec.elapsed_s = elapsed();
    rec.objective = do_objective();
    if (cfg.x_ref.size()) rec.dist_to_ref = (do_x() - cfg.x_ref).norm();
    log.records.push_back(rec);
  };

  Rng rng(cfg.seed);
  BlockSampler sampler({cfg.sampling, cfg.tau}, n);

  record(0);
  double window_f = log.records.front().objective;
  long last_done = 0;
  long last_logged = 0;
  for (long k = 1; k <= cfg.max_iters; ++k) {
    do_step(sampler.draw(rng));
    last_done = k;
    if (efficient && cfg.refresh_period > 0 && k % cfg.refresh_period == 0)
      eff_engine->refresh_residuals();
    if (k % cfg.log_period == 0) {
      record(k);
      last_logged = k;
    }
    if (cfg.rel_tol > 0.0 && k % cfg.tol_window == 0) {
      const double f = (last_logged == k) ? log.records.back().objective : do_objective();
      if (std::abs(window_f - f) <= cfg.rel_tol * (1.0 + std::abs(f))) break;
      window_f = f;
    }
  }
  if (last_logged != last_done) record(last_done);

  return RunResult{std::move(log), do_x()};
}

}  // namespace approx
