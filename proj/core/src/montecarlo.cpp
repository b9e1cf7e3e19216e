#include "sharpe_rmt/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>

#include <json.hpp>

#include "sharpe_rmt/errors.hpp"
#include "sharpe_rmt/frontier.hpp"
#include "sharpe_rmt/parallel.hpp"
#include "sharpe_rmt/ridge_path.hpp"
#include "sharpe_rmt/sharpe.hpp"
#include "sharpe_rmt/table_io.hpp"

namespace sharpe_rmt {

const char* to_string(MonteCarloTask t) {
  switch (t) {
    case MonteCarloTask::sharpe_known: return "sharpe_known";
    case MonteCarloTask::sharpe_unknown: return "sharpe_unknown";
    case MonteCarloTask::frontier: return "frontier";
  }
  return "?";
}

MonteCarloTask parse_task(const std::string& s) {
  for (auto t : {MonteCarloTask::sharpe_known, MonteCarloTask::sharpe_unknown, MonteCarloTask::frontier}) {
    if (s == to_string(t)) return t;
  }
  throw std::invalid_argument("unknown Monte Carlo task '" + s + "'");
}

namespace {

std::unique_ptr<RidgePath> try_path(const Design& design, const SampleMoments& m, bool use_ridge_path) {
  if (!use_ridge_path || design.q_family.base_is_zero()) return nullptr;
  try {
    return std::make_unique<RidgePath>(m.sigma_hat, design.q_family.offset, design.q_family.base);
  } catch (const SingularSystemError&) {
    return nullptr;
  }
}

}  // namespace

TrialValues evaluate_trial(const Design& design, const ReturnsPanel& panel, MonteCarloTask task,
                           bool use_ridge_path) {
  const auto& grid = design.spec.q_grid;
  TrialValues out;

  if (task == MonteCarloTask::frontier) {
    const SampleMoments m = compute_sample_moments(panel, design.mu);
    for (double q : grid) {
      const Regularizer reg = design.q_family.at(q);
      const RidgeSystem system(m.sigma_hat, reg.matrix, default_solve_mode(reg));
      const FrontierCoefficients coeffs = frontier_coefficients(design.mu, m, system);
      for (double mu0 : design.spec.mu0_grid) {
        const FrontierPoint pt = frontier_point(coeffs, mu0, m, &design.sigma);
        out.truth.push_back(*pt.sigma_true);
        out.hat.push_back(pt.sigma_hat);
      }
    }
    return out;
  }

  const bool known = task == MonteCarloTask::sharpe_known;
  const SampleMoments m =
      known ? compute_sample_moments(panel, design.mu) : compute_sample_moments(panel);
  const Vector& dir = known ? design.mu : m.mu_hat;
  const auto path = try_path(design, m, use_ridge_path);
  const Vector projected = path ? path->project(dir) : Vector();

  for (double q : grid) {
    Vector y;
    double corr;
    double trace;
    if (path) {
      path->check(q);
      y = path->solve_projected(q, projected);
      trace = path->trace_sigma_hat(q);
      corr = path->correction(q, m.c);
    } else {
      const Regularizer reg = design.q_family.at(q);
      const RidgeSystem system(m.sigma_hat, reg.matrix, default_solve_mode(reg));
      y = system.solve(dir);
      trace = system.trace_sigma_hat();
      corr = system.correction(m.c);
    }
    const SharpeEstimate truth = sr_oracle_from_solution(design.mu, y, design.sigma);
    const SharpeEstimate hat = known ? sr_hat_from_solution(dir, y, m.sigma_hat, corr)
                                     : sr_hat_unknown_from_solution(dir, y, m.sigma_hat, corr, trace, m.n);
    out.truth.push_back(truth.value);
    out.hat.push_back(hat.value);
  }
  return out;
}

namespace {

int argmax(const std::vector<double>& v) {
  int best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[static_cast<std::size_t>(best)]) best = static_cast<int>(i);
  }
  return best;
}

}  // namespace

MonteCarloReport run_monte_carlo(const Design& design, Eigen::Index n, int trials, MonteCarloTask task,
                                 const MonteCarloOptions& options) {
  design.spec.validate();
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  if (!options.trial_streams.empty() && options.trial_streams.size() != static_cast<std::size_t>(trials)) {
    throw std::invalid_argument("trial_streams must have one entry per trial");
  }
  if (task == MonteCarloTask::frontier && design.spec.mu0_grid.empty()) {
    throw std::invalid_argument("frontier task needs a non-empty mu0 grid");
  }

  const GaussianSampler sampler(design.mu, design.sigma);
  std::vector<TrialValues> results(static_cast<std::size_t>(trials));
  parallel_for(results.size(), options.threads, [&](std::size_t b) {
    const std::uint64_t stream = options.trial_streams.empty() ? b : options.trial_streams[b];
    Rng rng(design.spec.seed, "trial", stream);
    const ReturnsPanel panel = sampler.sample(n, rng);
    results[b] = evaluate_trial(design, panel, task, options.use_ridge_path);
  });

  MonteCarloReport report;
  report.task = task;
  report.spec = design.spec;
  report.n = n;
  report.trials = trials;

  const auto& qs = design.spec.q_grid;
  const bool frontier = task == MonteCarloTask::frontier;
  const std::size_t per_q = frontier ? design.spec.mu0_grid.size() : 1;
  const std::size_t ncell = qs.size() * per_q;
  const double tcount = static_cast<double>(trials);

  for (std::size_t k = 0; k < ncell; ++k) {
    MonteCarloCell cell;
    cell.q = qs[k / per_q];
    cell.mu0 = frontier ? design.spec.mu0_grid[k % per_q] : 0.0;
    cell.trials = trials;
    double st = 0, sh = 0, sd = 0, sr = 0, sad = 0, sar = 0, ssr = 0;
    for (const auto& r : results) {
      const double t = r.truth[k];
      const double h = r.hat[k];
      st += t;
      sh += h;
      sd += (h - t) * (h - t);
      const double ratio = frontier ? h * h / (t * t) - 1.0 : h / t - 1.0;
      sr += ratio * ratio;
      sad += std::abs(h - t);
      sar += std::abs(h / t - 1.0);
      if (frontier) {
        const double e = cell.mu0 / h - cell.mu0 / t;
        ssr += e * e;
      }
    }
    cell.mean_true = st / tcount;
    cell.mean_hat = sh / tcount;
    double vt = 0, vh = 0;
    for (const auto& r : results) {
      vt += (r.truth[k] - cell.mean_true) * (r.truth[k] - cell.mean_true);
      vh += (r.hat[k] - cell.mean_hat) * (r.hat[k] - cell.mean_hat);
    }
    cell.sd_true = std::sqrt(vt / tcount);
    cell.sd_hat = std::sqrt(vh / tcount);
    cell.mse_diff = sd / tcount;
    cell.mse_ratio = sr / tcount;
    cell.mean_abs_diff = sad / tcount;
    cell.mean_abs_rel_err = sar / tcount;
    cell.mse_sr_diff = frontier ? ssr / tcount : std::numeric_limits<double>::quiet_NaN();
    report.cells.push_back(cell);
  }

  MonteCarloSummary& s = report.summary;
  s.c = static_cast<double>(design.spec.p) / static_cast<double>(n);
  try {
    s.sr_max = sr_max(design.mu, design.sigma);
  } catch (const SingularSystemError&) {
    s.sr_max = std::numeric_limits<double>::quiet_NaN();
  }
  s.sr_limit = task == MonteCarloTask::sharpe_unknown && std::isfinite(s.sr_max)
                   ? sr_limit_unknown(s.sr_max, s.c)
                   : std::numeric_limits<double>::quiet_NaN();
  if (!frontier) {
    std::vector<double> mt, mh;
    for (const auto& c : report.cells) {
      mt.push_back(c.mean_true);
      mh.push_back(c.mean_hat);
    }
    s.argmax_true = argmax(mt);
    s.argmax_hat = argmax(mh);
    s.argmax_gap_steps = std::abs(s.argmax_true - s.argmax_hat);
    double gap = 0.0;
    for (const auto& r : results) gap += std::abs(argmax(r.truth) - argmax(r.hat));
    s.mean_trial_argmax_gap = gap / tcount;
  }

  if (options.keep_trials) {
    for (auto& r : results) {
      report.trial_true.push_back(std::move(r.truth));
      report.trial_hat.push_back(std::move(r.hat));
    }
  }
  return report;
}

MonteCarloReport run_monte_carlo(const DesignSpec& spec, Eigen::Index n, int trials, MonteCarloTask task,
                                 const MonteCarloOptions& options) {
  return run_monte_carlo(build_design(spec), n, trials, task, options);
}

std::string to_csv(const MonteCarloReport& report) {
  CsvTable table({"task", "q", "mu0", "statistic", "value"});
  const bool frontier = report.task == MonteCarloTask::frontier;
  for (const auto& c : report.cells) {
    std::vector<std::pair<const char*, double>> stats = {
        {"mean_true", c.mean_true},         {"mean_hat", c.mean_hat},
        {"sd_true", c.sd_true},             {"sd_hat", c.sd_hat},
        {"mse_diff", c.mse_diff},           {"mse_ratio", c.mse_ratio},
        {"mean_abs_diff", c.mean_abs_diff}, {"mean_abs_rel_err", c.mean_abs_rel_err},
        {"trials", static_cast<double>(c.trials)}};
    if (frontier) stats.emplace_back("mse_sr_diff", c.mse_sr_diff);
    for (const auto& [name, v] : stats) {
      table.add({to_string(report.task), format_double(c.q), frontier ? format_double(c.mu0) : "", name,
                 format_double(v)});
    }
  }
  return table.str();
}

namespace {

nlohmann::ordered_json num(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

std::string to_json(const MonteCarloReport& report) {
  using nlohmann::ordered_json;
  const DesignSpec& sp = report.spec;
  ordered_json j;
  j["task"] = to_string(report.task);
  j["design"] = {{"p", sp.p},
                 {"sigma", to_string(sp.sigma_kind)},
                 {"mu", to_string(sp.mu_kind)},
                 {"q", to_string(sp.q_kind)},
                 {"q_grid", sp.q_grid},
                 {"mu0_grid", sp.mu0_grid},
                 {"seed", sp.seed}};
  j["n"] = report.n;
  j["trials"] = report.trials;
  const MonteCarloSummary& s = report.summary;
  ordered_json summary = {{"c", s.c}, {"sr_max", num(s.sr_max)}, {"sr_limit", num(s.sr_limit)}};
  if (report.task != MonteCarloTask::frontier) {
    summary["argmax_q_true"] = sp.q_grid[static_cast<std::size_t>(s.argmax_true)];
    summary["argmax_q_hat"] = sp.q_grid[static_cast<std::size_t>(s.argmax_hat)];
    summary["argmax_gap_steps"] = s.argmax_gap_steps;
    summary["mean_trial_argmax_gap"] = s.mean_trial_argmax_gap;
  }
  j["summary"] = summary;
  ordered_json cells = ordered_json::array();
  for (const auto& c : report.cells) {
    ordered_json row = {{"q", c.q}};
    if (report.task == MonteCarloTask::frontier) row["mu0"] = c.mu0;
    row["mean_true"] = num(c.mean_true);
    row["mean_hat"] = num(c.mean_hat);
    row["sd_true"] = num(c.sd_true);
    row["sd_hat"] = num(c.sd_hat);
    row["mse_diff"] = num(c.mse_diff);
    row["mse_ratio"] = num(c.mse_ratio);
    row["mean_abs_diff"] = num(c.mean_abs_diff);
    row["mean_abs_rel_err"] = num(c.mean_abs_rel_err);
    if (report.task == MonteCarloTask::frontier) row["mse_sr_diff"] = num(c.mse_sr_diff);
    row["trials"] = c.trials;
    cells.push_back(row);
  }
  j["cells"] = cells;
  return j.dump(2) + "\n";
}

}  // namespace sharpe_rmt
