// Command-line front end: synthetic instance generation, stepsize
// comparisons and the accelerated/plain coordinate descent solver.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "approx/eso.hpp"
#include "approx/io.hpp"
#include "approx/problem.hpp"
#include "approx/solver.hpp"

namespace {

using namespace approx;

int cmd_gen(const std::string& regime, Index m, Index n, std::uint64_t seed,
            const std::string& out) {
  SpMat A = gen_synthetic(parse_regime(regime), m, n, seed);
  // targets drawn from a substream of the same master seed
  Rng rng = Rng(seed).stream(1);
  Vector b(m);
  for (Index j = 0; j < m; ++j) b[j] = rng.normal();
  write_libsvm(out, A, b);
  std::cout << "wrote " << out << ": m=" << A.rows() << " n=" << A.cols()
            << " nnz=" << A.nonZeros() << "\n";
  return 0;
}

int cmd_compare_stepsizes(const std::string& input, const std::vector<Index>& taus,
                          const std::string& out_path) {
  Dataset ds = read_libsvm(input);
  const Index n = ds.A.cols();
  const BlockPartition part = BlockPartition::unit(n);
  const Vector lphi = Vector::Ones(ds.A.rows());  // square-loss setting
  const LipschitzTable L = lipschitz_table(ds.A, part, lphi);
  const SeparabilityAverages avg = separability_averages(L);

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw std::runtime_error("cannot open '" + out_path + "'");
    os = &file;
  }
  *os << std::setprecision(17);
  *os << "tau,l1_fr,l1_rt,l1_nc,omega,omega_bar\n";
  for (Index tau : taus) {
    const StepsizeVector fr = stepsizes(StepsizeRule::Fr, L, ds.A, part, tau, LossKind::Square);
    const StepsizeVector rt = stepsizes(StepsizeRule::Rt, L, ds.A, part, tau, LossKind::Square);
    const StepsizeVector nc = stepsizes(StepsizeRule::Nc, L, ds.A, part, tau, LossKind::Square);
    *os << tau << ',' << fr.v.sum() << ',' << rt.v.sum() << ',' << nc.v.sum() << ','
        << L.omega_max << ',' << avg.omega_bar << '\n';
  }
  return 0;
}

int cmd_solve(const std::string& input, const std::string& loss_name, double mu,
              const std::string& reg_name, double lambda, Index tau,
              const std::string& mode_name, const std::string& rule_name, long max_iters,
              std::uint64_t seed, const std::string& log_path, long log_period, int threads,
              const std::string& sampling_name, double tol) {
  Dataset ds = read_libsvm(input);
  const Index n = ds.A.cols();

  Loss loss;
  if (loss_name == "square") {
    loss = make_square_loss(ds.b);
  } else if (loss_name == "logistic") {
    fold_labels_into_rows(ds.A, ds.b);
    loss = make_logistic_loss(ds.A.rows());
  } else if (loss_name == "smoothed-abs") {
    loss = make_smoothed_abs_loss(ds.b, mu);
  } else {
    throw CLI::ValidationError("--loss", "unknown loss '" + loss_name + "'");
  }

  Regularizer reg;
  if (reg_name == "none") {
    reg = zero_reg();
  } else if (reg_name == "l1") {
    reg = l1_reg(lambda);
  } else if (reg_name == "box-linear") {
    reg = box_linear_reg(0.0, 1.0, -1.0 / static_cast<double>(n));
  } else {
    throw CLI::ValidationError("--reg", "unknown regularizer '" + reg_name + "'");
  }

  Problem prob = make_problem(std::move(ds.A), BlockPartition::unit(n), std::move(loss), reg);

  RunConfig cfg;
  cfg.tau = tau;
  cfg.mode = mode_name == "pcdm" ? SolveMode::Pcdm : SolveMode::Approx;
  if (mode_name != "pcdm" && mode_name != "approx")
    throw CLI::ValidationError("--mode", "unknown mode '" + mode_name + "'");
  cfg.rule = parse_stepsize_rule(rule_name);
  cfg.sampling = sampling_name == "tau-independent" ? SamplingKind::TauIndependent
                                                    : SamplingKind::TauNice;
  if (sampling_name != "tau-nice" && sampling_name != "tau-independent")
    throw CLI::ValidationError("--sampling", "unknown sampling '" + sampling_name + "'");
  cfg.max_iters = max_iters;
  cfg.seed = seed;
  cfg.log_period = log_period;
  cfg.threads = threads;
  cfg.rel_tol = tol;

  RunResult res = run(prob, cfg);
  if (!log_path.empty()) write_runlog(res.log, log_path);

  const RunRecord& last = res.log.records.back();
  std::cout << std::setprecision(12) << "iterations: " << last.k
            << "\nobjective:  " << last.objective << "\nelapsed_s:  " << last.elapsed_s
            << "\n";
  if (!log_path.empty()) std::cout << "log:        " << log_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"accelerated parallel proximal coordinate descent"};
  app.require_subcommand(1);

  // gen
  std::string g_regime = "uniform", g_out;
  approx::Index g_m = 1000, g_n = 1000;
  std::uint64_t g_seed = 0;
  auto* gen = app.add_subcommand("gen", "generate a synthetic sparse instance (LibSVM format)");
  gen->add_option("--regime", g_regime, "uniform|intermediate|extreme")->required();
  gen->add_option("--m", g_m, "rows")->required();
  gen->add_option("--n", g_n, "columns")->required();
  gen->add_option("--seed", g_seed, "random seed");
  gen->add_option("--out", g_out, "output path")->required();

  // compare-stepsizes
  std::string c_input, c_out;
  std::vector<approx::Index> c_taus;
  auto* cmp = app.add_subcommand("compare-stepsizes",
                                 "stepsize l1 norms for a range of tau (square loss)");
  cmp->add_option("--input", c_input, "LibSVM input file")->required();
  cmp->add_option("--tau", c_taus, "comma-separated tau values")->required()->delimiter(',');
  cmp->add_option("--out", c_out, "write CSV here instead of stdout");

  // solve
  std::string s_input, s_loss = "square", s_reg = "none", s_mode = "approx", s_rule = "fr";
  std::string s_log, s_sampling = "tau-nice";
  double s_mu = 1.0, s_lambda = 1.0, s_tol = 0.0;
  approx::Index s_tau = 1;
  long s_max_iters = 10000, s_log_period = 100;
  std::uint64_t s_seed = 0;
  int s_threads = 1;
  auto* solve = app.add_subcommand("solve", "run the solver on a LibSVM instance");
  solve->add_option("--input", s_input, "LibSVM input file")->required();
  solve->add_option("--loss", s_loss, "square|logistic|smoothed-abs");
  solve->add_option("--mu", s_mu, "smoothing parameter for smoothed-abs");
  solve->add_option("--reg", s_reg, "none|l1|box-linear");
  solve->add_option("--lambda", s_lambda, "l1 weight");
  solve->add_option("--tau", s_tau, "blocks updated per iteration")->required();
  solve->add_option("--mode", s_mode, "approx|pcdm");
  solve->add_option("--stepsizes", s_rule, "fr|rt|nc");
  solve->add_option("--max-iters", s_max_iters, "iteration budget");
  solve->add_option("--seed", s_seed, "random seed");
  solve->add_option("--log", s_log, "objective log CSV path");
  solve->add_option("--log-period", s_log_period, "iterations between log records");
  solve->add_option("--threads", s_threads, "parallel workers per iteration");
  solve->add_option("--sampling", s_sampling, "tau-nice|tau-independent");
  solve->add_option("--tol", s_tol, "relative objective-decrease stop tolerance (0 = off)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(g_regime, g_m, g_n, g_seed, g_out);
    if (*cmp) return cmd_compare_stepsizes(c_input, c_taus, c_out);
    if (*solve)
      return cmd_solve(s_input, s_loss, s_mu, s_reg, s_lambda, s_tau, s_mode, s_rule,
                       s_max_iters, s_seed, s_log, s_log_period, s_threads, s_sampling, s_tol);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
