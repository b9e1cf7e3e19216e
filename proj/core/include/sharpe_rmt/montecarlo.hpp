#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sharpe_rmt/simgen.hpp"

namespace sharpe_rmt {

enum class MonteCarloTask { sharpe_known, sharpe_unknown, frontier };

const char* to_string(MonteCarloTask t);
MonteCarloTask parse_task(const std::string& s);

struct MonteCarloOptions {
  int threads = 1;
  // Stream index per trial; empty means 0..trials-1.
  std::vector<std::uint64_t> trial_streams;
  bool keep_trials = false;
  // Evaluate the q grid through RidgePath when the family base is positive definite.
  bool use_ridge_path = true;
};

// Sharpe tasks: true = SR(Q), hat = SR_hat(Q). Frontier task: true = sigma_0, hat = sigma_hat.
struct MonteCarloCell {
  double q = 0.0;
  double mu0 = 0.0;  // frontier only
  double mean_true = 0.0;
  double mean_hat = 0.0;
  double sd_true = 0.0;
  double sd_hat = 0.0;
  double mse_diff = 0.0;          // mean (hat - true)^2
  double mse_ratio = 0.0;         // sharpe: mean (hat/true - 1)^2; frontier: mean (hat^2/true^2 - 1)^2
  double mean_abs_diff = 0.0;     // mean |hat - true|
  double mean_abs_rel_err = 0.0;  // mean |hat/true - 1|
  double mse_sr_diff = 0.0;       // frontier: mean (mu0/hat - mu0/true)^2
  int trials = 0;
};

struct MonteCarloSummary {
  double c = 0.0;
  double sr_max = 0.0;
  double sr_limit = 0.0;  // sharpe_unknown only
  // sharpe tasks: argmax over the q grid of the mean curves
  int argmax_true = -1;
  int argmax_hat = -1;
  int argmax_gap_steps = -1;
  double mean_trial_argmax_gap = 0.0;
};

struct MonteCarloReport {
  MonteCarloTask task = MonteCarloTask::sharpe_known;
  DesignSpec spec;
  Eigen::Index n = 0;
  int trials = 0;
  std::vector<MonteCarloCell> cells;
  MonteCarloSummary summary;
  // keep_trials: [trial][cell]
  std::vector<std::vector<double>> trial_true;
  std::vector<std::vector<double>> trial_hat;
};

// Per-trial values for one panel; cells ordered q-major (then mu0 for the frontier task).
struct TrialValues {
  std::vector<double> truth;
  std::vector<double> hat;
};

TrialValues evaluate_trial(const Design& design, const ReturnsPanel& panel, MonteCarloTask task,
                           bool use_ridge_path = true);

MonteCarloReport run_monte_carlo(const Design& design, Eigen::Index n, int trials, MonteCarloTask task,
                                 const MonteCarloOptions& options = {});
MonteCarloReport run_monte_carlo(const DesignSpec& spec, Eigen::Index n, int trials, MonteCarloTask task,
                                 const MonteCarloOptions& options = {});

// One row per (cell, statistic): task,q,mu0,statistic,value
std::string to_csv(const MonteCarloReport& report);
std::string to_json(const MonteCarloReport& report);

}  // namespace sharpe_rmt
