#include <gtest/gtest.h>

#include <cmath>

#include "sharpe_rmt/montecarlo.hpp"
#include "sharpe_rmt/sharpe.hpp"

using namespace sharpe_rmt;

namespace {

DesignSpec small_spec(QKind qk = QKind::q0_scaled) {
  DesignSpec s;
  s.p = 20;
  s.q_kind = qk;
  s.q_grid = {0.2, 1.0, 3.0};
  s.mu0_grid = {0.5, 1.5};
  s.seed = 17;
  return s;
}

}  // namespace

TEST(MonteCarlo, SingleTrialEqualsDirectEvaluation) {
  const DesignSpec spec = small_spec();
  const Design d = build_design(spec);
  MonteCarloOptions opt;
  opt.trial_streams = {4};
  const MonteCarloReport rep = run_monte_carlo(d, 60, 1, MonteCarloTask::sharpe_known, opt);
  Rng rng(spec.seed, "trial", 4);
  const ReturnsPanel panel = GaussianSampler(d.mu, d.sigma).sample(60, rng);
  const SampleMoments m = compute_sample_moments(panel, d.mu);
  ASSERT_EQ(rep.cells.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    const Regularizer reg = d.q_family.at(spec.q_grid[i]);
    EXPECT_NEAR(rep.cells[i].mean_true, sr_oracle(d.mu, m, reg, d.sigma).value, 1e-12);
    EXPECT_NEAR(rep.cells[i].mean_hat, sr_hat_known_mu(d.mu, m, reg).value, 1e-12);
    EXPECT_EQ(rep.cells[i].trials, 1);
    EXPECT_EQ(rep.cells[i].sd_true, 0.0);
  }
  EXPECT_NEAR(rep.summary.c, 20.0 / 60.0, 1e-15);
  EXPECT_NEAR(rep.summary.sr_max, sr_max(d.mu, d.sigma), 1e-12);
}

TEST(MonteCarlo, AggregatesAreOrderIndependent) {
  const DesignSpec spec = small_spec();
  MonteCarloOptions a;
  a.trial_streams = {0, 1, 2, 3, 4, 5, 6};
  MonteCarloOptions b;
  b.trial_streams = {6, 2, 4, 0, 5, 3, 1};
  for (MonteCarloTask task : {MonteCarloTask::sharpe_known, MonteCarloTask::sharpe_unknown, MonteCarloTask::frontier}) {
    const MonteCarloReport ra = run_monte_carlo(spec, 50, 7, task, a);
    const MonteCarloReport rb = run_monte_carlo(spec, 50, 7, task, b);
    ASSERT_EQ(ra.cells.size(), rb.cells.size());
    for (std::size_t i = 0; i < ra.cells.size(); ++i) {
      EXPECT_NEAR(ra.cells[i].mean_true, rb.cells[i].mean_true, 1e-12);
      EXPECT_NEAR(ra.cells[i].mean_hat, rb.cells[i].mean_hat, 1e-12);
      EXPECT_NEAR(ra.cells[i].mse_diff, rb.cells[i].mse_diff, 1e-12);
      EXPECT_NEAR(ra.cells[i].mse_ratio, rb.cells[i].mse_ratio, 1e-12);
    }
  }
}

TEST(MonteCarlo, RidgePathAgreesWithGenericSolve) {
  const Design d = build_design(small_spec(QKind::q1));
  const ReturnsPanel panel = sample_returns(d.mu, d.sigma, 45, 3);
  for (MonteCarloTask task : {MonteCarloTask::sharpe_known, MonteCarloTask::sharpe_unknown, MonteCarloTask::frontier}) {
    const TrialValues fast = evaluate_trial(d, panel, task, true);
    const TrialValues slow = evaluate_trial(d, panel, task, false);
    ASSERT_EQ(fast.truth.size(), slow.truth.size());
    for (std::size_t i = 0; i < fast.truth.size(); ++i) {
      EXPECT_NEAR(fast.truth[i], slow.truth[i], 1e-9 * std::abs(slow.truth[i]));
      EXPECT_NEAR(fast.hat[i], slow.hat[i], 1e-9 * std::abs(slow.hat[i]));
    }
  }
}

TEST(MonteCarlo, FrontierCellsAreQMajor) {
  const MonteCarloReport rep = run_monte_carlo(small_spec(), 50, 2, MonteCarloTask::frontier);
  ASSERT_EQ(rep.cells.size(), 6u);
  EXPECT_EQ(rep.cells[1].q, 0.2);
  EXPECT_EQ(rep.cells[1].mu0, 1.5);
  EXPECT_EQ(rep.cells[2].q, 1.0);
}

TEST(MonteCarlo, ThreadCountDoesNotChangeOutput) {
  MonteCarloOptions one;
  MonteCarloOptions four;
  four.threads = 4;
  const MonteCarloReport a = run_monte_carlo(small_spec(), 50, 6, MonteCarloTask::sharpe_unknown, one);
  const MonteCarloReport b = run_monte_carlo(small_spec(), 50, 6, MonteCarloTask::sharpe_unknown, four);
  EXPECT_EQ(to_csv(a), to_csv(b));
  EXPECT_EQ(to_json(a), to_json(b));
}

TEST(MonteCarlo, RejectsBadArguments) {
  EXPECT_THROW(run_monte_carlo(small_spec(), 50, 0, MonteCarloTask::sharpe_known), std::invalid_argument);
  DesignSpec no_grid = small_spec();
  no_grid.mu0_grid.clear();
  EXPECT_THROW(run_monte_carlo(no_grid, 50, 1, MonteCarloTask::frontier), std::invalid_argument);
  EXPECT_THROW(parse_task("sharpe"), std::invalid_argument);
}
