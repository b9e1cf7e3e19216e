#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "sharpe_rmt/errors.hpp"

using namespace sharpe_rmt::cli;

namespace {

int threads_from_env() {
  const char* env = std::getenv("SHARPE_RMT_THREADS");
  if (!env || !*env) return 0;
  try {
    std::size_t used = 0;
    const int v = std::stoi(env, &used);
    if (used == std::string(env).size()) return v;
  } catch (const std::exception&) {
  }
  std::cerr << "warning: ignoring SHARPE_RMT_THREADS='" << env << "'\n";
  return 0;
}

void add_common(CLI::App* sub, CommonOptions& opt, std::string& config, std::string& out, std::uint64_t& seed,
                int& threads) {
  sub->add_option("--config", config, "JSON config file");
  sub->add_option("--out", out, "Output directory");
  sub->add_option("--seed", seed, "Seed override");
  sub->add_option("--threads", threads, "Worker threads (0 = all cores)");
  (void)opt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ridge-regularized Markowitz portfolios with out-of-sample Sharpe and volatility estimates"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sharpe_rmt 0.1.0");

  CommonOptions opt;
  std::string config, out;
  std::uint64_t seed = 0;
  int threads = -1;
  EstimateFlags ef;
  std::string panel, mu, mode;
  double q = -1.0;

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo on a synthetic design");
  CLI::App* estimate = app.add_subcommand("estimate", "Corrected Sharpe estimate for one regularizer");
  CLI::App* frontier = app.add_subcommand("frontier", "Regularized frontier with corrected volatility");
  CLI::App* sel = app.add_subcommand("select", "Pick a regularizer from a candidate set");
  CLI::App* backtest = app.add_subcommand("backtest", "Rolling monthly backtest on a return panel");
  for (CLI::App* sub : {simulate, estimate, frontier, sel, backtest}) add_common(sub, opt, config, out, seed, threads);
  estimate->add_option("--panel", panel, "Return panel CSV");
  estimate->add_option("--mu", mu, "Mean vector CSV (asset,value)");
  estimate->add_option("--mode", mode, "known_mu, unknown_mu or gmv");
  estimate->add_option("--q", q, "Identity ridge scale (0 for no regularization)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!config.empty()) opt.config = config;
  if (!out.empty()) opt.out = out;
  for (CLI::App* sub : {simulate, estimate, frontier, sel, backtest}) {
    if (sub->parsed() && sub->count("--seed")) opt.seed = seed;
  }
  opt.threads = threads >= 0 ? threads : threads_from_env();
  if (!panel.empty()) ef.panel = panel;
  if (!mu.empty()) ef.mu = mu;
  if (!mode.empty()) ef.mode = mode;
  if (estimate->count("--q")) ef.q = q;

  try {
    if (simulate->parsed()) return cmd_simulate(opt);
    if (estimate->parsed()) return cmd_estimate(opt, ef);
    if (frontier->parsed()) return cmd_frontier(opt);
    if (sel->parsed()) return cmd_select(opt);
    if (backtest->parsed()) return cmd_backtest(opt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
