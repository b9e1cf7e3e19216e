#include "commands.hpp"

#include <Eigen/Core>
#include <chrono>
#include <ctime>
#include <iostream>

#include <json.hpp>

#include "config.hpp"
#include "output.hpp"
#include "sharpe_rmt/backtest.hpp"
#include "sharpe_rmt/frontier.hpp"
#include "sharpe_rmt/montecarlo.hpp"
#include "sharpe_rmt/parallel.hpp"
#include "sharpe_rmt/selection.hpp"
#include "sharpe_rmt/sharpe.hpp"
#include "sharpe_rmt/simgen.hpp"
#include "sharpe_rmt/table_io.hpp"

namespace sharpe_rmt::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

namespace {

constexpr const char* kVersion = "0.1.0";

ordered_json num(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Section config_of(const CommonOptions& opt) {
  if (!opt.config) throw ConfigError("--config is required for this command");
  return load_config(*opt.config);
}

fs::path out_dir(const CommonOptions& opt) {
  if (!opt.out) throw ConfigError("--out is required for this command");
  return *opt.out;
}

void add_manifest(OutputSet& out, const std::string& command, const CommonOptions& opt,
                  std::optional<std::uint64_t> seed, Clock::time_point start) {
  ordered_json m;
  m["command"] = command;
  m["version"] = kVersion;
  m["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
               std::to_string(EIGEN_MINOR_VERSION);
  m["config"] = opt.config ? fs::absolute(*opt.config).string() : std::string();
  if (seed) m["seed"] = *seed;
  m["threads"] = effective_threads(opt.threads);
  ordered_json files = ordered_json::array();
  for (const auto& [name, content] : out.files()) files.push_back({{"name", name}, {"bytes", content.size()}});
  m["outputs"] = files;
  m["elapsed_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
  m["created_utc"] = utc_now();
  out.add("manifest.json", m.dump(2) + "\n");
}

ReturnsPanel load_panel_from(Section& cfg) {
  std::vector<std::string> warnings;
  ReturnsPanel panel = load_panel(cfg.path("panel").string(), &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  if (const auto rf = cfg.opt_num("risk_free")) panel.risk_free = *rf;
  return panel;
}

Matrix load_design_matrix(Section& s, const std::string& key, int p) {
  const fs::path file = s.path(key);
  std::vector<std::string> names;
  for (int i = 1; i <= p; ++i) names.push_back("A" + std::to_string(i));
  return load_matrix(file, names);
}

DesignSpec parse_design(Section& d, std::optional<std::uint64_t> seed_override) {
  DesignSpec spec;
  const long long p = d.integer("p");
  if (p < 1 || p > 100000) throw ConfigError("design.p out of range");
  spec.p = static_cast<int>(p);
  try {
    spec.sigma_kind = parse_sigma_kind(d.str("sigma", "sigma0"));
    spec.mu_kind = parse_mu_kind(d.str("mu", "mu0"));
    spec.q_kind = parse_q_kind(d.str("q", "q0_scaled"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("design: ") + e.what());
  }
  const long long seed = d.integer("seed", 0);
  if (seed < 0) throw ConfigError("design.seed must be >= 0");
  spec.seed = seed_override ? *seed_override : static_cast<std::uint64_t>(seed);
  if (spec.sigma_kind == SigmaKind::custom) spec.custom_sigma = load_design_matrix(d, "sigma_path", spec.p);
  if (spec.mu_kind == MuKind::custom) {
    std::vector<std::string> names;
    for (int i = 1; i <= spec.p; ++i) names.push_back("A" + std::to_string(i));
    spec.custom_mu = load_vector(d.path("mu_path"), names);
  }
  if (spec.q_kind == QKind::custom) spec.custom_q_base = load_design_matrix(d, "q_base_path", spec.p);
  return spec;
}

std::string curves_csv(const MonteCarloReport& r) {
  const bool frontier = r.task == MonteCarloTask::frontier;
  std::vector<std::string> header = {"q"};
  if (frontier) header.push_back("mu0");
  for (const char* h : {"mean_true", "mean_hat", "sd_true", "sd_hat", "mse_diff", "mse_ratio", "mean_abs_diff",
                        "mean_abs_rel_err"}) {
    header.emplace_back(h);
  }
  if (frontier) header.emplace_back("mse_sr_diff");
  header.emplace_back("trials");
  CsvTable t(header);
  for (const auto& c : r.cells) {
    std::vector<std::string> row = {format_double(c.q)};
    if (frontier) row.push_back(format_double(c.mu0));
    for (double v : {c.mean_true, c.mean_hat, c.sd_true, c.sd_hat, c.mse_diff, c.mse_ratio, c.mean_abs_diff,
                     c.mean_abs_rel_err}) {
      row.push_back(format_double(v));
    }
    if (frontier) row.push_back(format_double(c.mse_sr_diff));
    row.push_back(std::to_string(c.trials));
    t.add(std::move(row));
  }
  return t.str();
}

}  // namespace

int cmd_simulate(const CommonOptions& opt) {
  const auto start = Clock::now();
  Section cfg = config_of(opt);
  const fs::path dir = out_dir(opt);
  Section d = cfg.child("design");
  DesignSpec spec = parse_design(d, opt.seed);
  const long long n = cfg.integer("n");
  if (n < 2) throw ConfigError("n must be >= 2");
  const double c = static_cast<double>(spec.p) / static_cast<double>(n);
  if (!d.has("q_grid")) {
    spec.q_grid = default_q_grid(c);
  } else if (d.raw("q_grid").is_string()) {
    if (d.str("q_grid") != "default") throw ConfigError("design.q_grid must be an array, a range or \"default\"");
    spec.q_grid = default_q_grid(c);
  } else {
    spec.q_grid = parse_grid(d, "q_grid");
  }
  if (d.has("mu0_grid")) spec.mu0_grid = parse_grid(d, "mu0_grid");
  d.finish();
  const long long trials = cfg.integer("trials");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  MonteCarloTask task;
  try {
    task = parse_task(cfg.str("task", "sharpe_known"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  MonteCarloOptions mo;
  mo.threads = opt.threads;
  mo.keep_trials = cfg.flag("keep_trials", false);
  mo.use_ridge_path = cfg.flag("ridge_path", true);
  cfg.finish();
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  const MonteCarloReport rep = run_monte_carlo(spec, n, static_cast<int>(trials), task, mo);
  OutputSet out(dir);
  out.add("curves.csv", curves_csv(rep));
  out.add("report.csv", to_csv(rep));
  out.add("report.json", to_json(rep));
  if (mo.keep_trials) {
    CsvTable t({"trial", "cell", "true", "hat"});
    for (std::size_t b = 0; b < rep.trial_true.size(); ++b) {
      for (std::size_t k = 0; k < rep.trial_true[b].size(); ++k) {
        t.add({std::to_string(b), std::to_string(k), format_double(rep.trial_true[b][k]),
               format_double(rep.trial_hat[b][k])});
      }
    }
    out.add("trials.csv", t.str());
  }
  add_manifest(out, "simulate", opt, spec.seed, start);
  out.commit();
  return 0;
}

int cmd_estimate(const CommonOptions& opt, const EstimateFlags& flags) {
  const auto start = Clock::now();
  Section cfg = opt.config ? load_config(*opt.config) : empty_config();

  std::vector<std::string> warnings;
  ReturnsPanel panel;
  if (flags.panel) {
    panel = load_panel(flags.panel->string(), &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    if (const auto rf = cfg.opt_num("risk_free")) panel.risk_free = *rf;
  } else {
    panel = load_panel_from(cfg);
  }
  std::string mode = flags.mode ? *flags.mode : cfg.str("mode", "known_mu");
  std::optional<fs::path> mu_path = flags.mu ? flags.mu : cfg.opt_path("mu");
  Regularizer reg;
  if (flags.q) {
    if (*flags.q < 0.0) throw ConfigError("--q must be >= 0");
    reg = *flags.q == 0.0 ? Regularizer::zero(panel.p()) : Regularizer::identity(panel.p(), *flags.q);
  } else if (cfg.has("regularizer")) {
    Section r = cfg.child("regularizer");
    reg = parse_regularizer(r, panel);
  } else {
    throw ConfigError("a regularizer is required (--q or config 'regularizer')");
  }
  cfg.finish();

  ordered_json j;
  SampleMoments m;
  SharpeEstimate e;
  if (mode == "known_mu") {
    if (!mu_path) throw ConfigError("known_mu mode needs a mean vector (--mu or config 'mu')");
    const Vector mu = load_vector(*mu_path, panel.assets);
    m = compute_sample_moments(panel, mu);
    const RidgeSystem sys(m.sigma_hat, reg.matrix, default_solve_mode(reg));
    e = sr_hat_known_mu(mu, m, sys);
    j["pseudo_inverse"] = sys.used_pseudo_inverse();
  } else if (mode == "unknown_mu") {
    if (mu_path) throw ConfigError("unknown_mu mode estimates the mean; drop --mu");
    m = compute_sample_moments(panel);
    const RidgeSystem sys(m.sigma_hat, reg.matrix, default_solve_mode(reg));
    e = sr_hat_unknown_mu(m, sys);
    j["pseudo_inverse"] = sys.used_pseudo_inverse();
  } else if (mode == "gmv") {
    m = compute_sample_moments(panel);
    const RidgeSystem sys(m.sigma_hat, reg.matrix, default_solve_mode(reg));
    e = sr_gmv(m, sys);
    j["pseudo_inverse"] = sys.used_pseudo_inverse();
  } else {
    throw ConfigError("unknown mode '" + mode + "' (known_mu, unknown_mu, gmv)");
  }
  ordered_json out_j;
  out_j["mode"] = to_string(e.mode);
  out_j["regularizer"] = reg.label;
  out_j["n"] = m.n;
  out_j["p"] = m.p;
  out_j["c"] = m.c;
  out_j["value"] = num(e.value);
  out_j["t1"] = num(e.numerator);
  out_j["t2_hat"] = num(e.denominator * e.denominator);
  out_j["denominator"] = num(e.denominator);
  out_j["correction"] = num(e.correction);
  if (e.mode == SharpeMode::hat_unknown_mu) out_j["bias"] = num(e.bias);
  out_j["pseudo_inverse"] = j["pseudo_inverse"];
  const std::string text = out_j.dump(2) + "\n";
  std::cout << text;
  if (opt.out) {
    OutputSet out(*opt.out);
    out.add("estimate.json", text);
    add_manifest(out, "estimate", opt, std::nullopt, start);
    out.commit();
  }
  return 0;
}

int cmd_frontier(const CommonOptions& opt) {
  const auto start = Clock::now();
  Section cfg = config_of(opt);
  const fs::path dir = out_dir(opt);
  const ReturnsPanel panel = load_panel_from(cfg);
  const SampleMoments m = compute_sample_moments(panel);
  Vector r;
  const std::string r_src = cfg.str("r", "sample_mean");
  if (r_src == "sample_mean") {
    r = (m.mu_hat.array() + panel.risk_free).matrix();
  } else {
    const fs::path rp = fs::path(r_src).is_absolute() ? fs::path(r_src) : cfg.base_dir() / r_src;
    r = load_vector(rp, panel.assets);
  }
  Section rs = cfg.child("regularizer");
  const Regularizer reg = parse_regularizer(rs, panel);
  const std::vector<double> grid = parse_grid(cfg, "mu0_grid");
  std::optional<Matrix> sigma_true;
  if (const auto sp = cfg.opt_path("sigma_true")) sigma_true = load_matrix(*sp, panel.assets);
  cfg.finish();

  const RidgeSystem sys(m.sigma_hat, reg.matrix, default_solve_mode(reg));
  const FrontierCoefficients f = frontier_coefficients(r, m, sys);
  std::vector<FrontierPoint> points(grid.size());
  parallel_for(grid.size(), opt.threads, [&](std::size_t i) {
    points[i] = frontier_point(f, grid[i], m, sigma_true ? &*sigma_true : nullptr);
  });

  CsvTable t({"mu0", "sigma_hat", "sigma_hat_sq", "sigma_true"});
  for (const auto& pt : points) {
    t.add({format_double(pt.mu0), format_double(pt.sigma_hat), format_double(pt.sigma_hat_sq),
           pt.sigma_true ? format_double(*pt.sigma_true) : std::string()});
  }
  CsvTable w([&] {
    std::vector<std::string> h = {"mu0"};
    h.insert(h.end(), panel.assets.begin(), panel.assets.end());
    return h;
  }());
  for (const auto& pt : points) {
    std::vector<std::string> row = {format_double(pt.mu0)};
    for (Eigen::Index k = 0; k < pt.weights.size(); ++k) row.push_back(format_double(pt.weights(k)));
    w.add(std::move(row));
  }
  ordered_json j;
  j["regularizer"] = reg.label;
  j["n"] = m.n;
  j["p"] = m.p;
  j["c"] = m.c;
  j["A"] = f.a;
  j["B"] = f.b;
  j["C"] = f.c;
  j["D"] = f.d;
  j["correction"] = f.correction;
  j["min_variance_mu0"] = f.a / f.c;
  j["pseudo_inverse"] = sys.used_pseudo_inverse();
  OutputSet out(dir);
  out.add("frontier.csv", t.str());
  out.add("frontier_weights.csv", w.str());
  out.add("frontier.json", j.dump(2) + "\n");
  add_manifest(out, "frontier", opt, std::nullopt, start);
  out.commit();
  return 0;
}

int cmd_select(const CommonOptions& opt) {
  const auto start = Clock::now();
  Section cfg = config_of(opt);
  const fs::path dir = out_dir(opt);
  const ReturnsPanel panel = load_panel_from(cfg);
  SelectionCriterion crit;
  try {
    crit = parse_criterion(cfg.str("criterion"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  Section cs = cfg.child("candidates");
  const CandidateSet cands = parse_candidates(cs, panel);
  SelectionInputs in;
  SampleMoments m;
  if (crit == SelectionCriterion::max_sr_known) {
    in.mu = load_vector(cfg.path("mu"), panel.assets);
    m = compute_sample_moments(panel, *in.mu);
  } else {
    m = compute_sample_moments(panel);
  }
  if (crit == SelectionCriterion::min_frontier_var) {
    in.r = (m.mu_hat.array() + panel.risk_free).matrix();
    in.mu0 = cfg.num("mu0");
  }
  cfg.finish();

  const SelectionResult res = select(m, cands, crit, in);
  ordered_json j;
  j["criterion"] = to_string(crit);
  j["n"] = m.n;
  j["p"] = m.p;
  j["c"] = m.c;
  j["chosen"] = res.chosen.label;
  j["chosen_index"] = res.chosen_index;
  ordered_json scores = ordered_json::array();
  for (const auto& s : res.scores) {
    ordered_json row = {{"label", s.label}, {"valid", s.valid}, {"score", num(s.score)}};
    if (!s.valid) row["error"] = s.error;
    scores.push_back(row);
  }
  j["scores"] = scores;
  OutputSet out(dir);
  out.add("scores.csv", score_table_csv(res));
  out.add("selection.json", j.dump(2) + "\n");
  add_manifest(out, "select", opt, std::nullopt, start);
  out.commit();
  std::cout << res.chosen.label << "\n";
  return 0;
}

int cmd_backtest(const CommonOptions& opt) {
  const auto start = Clock::now();
  Section cfg = config_of(opt);
  const fs::path dir = out_dir(opt);
  const ReturnsPanel panel = load_panel_from(cfg);
  BacktestConfig bc;
  bc.lookback_months = static_cast<int>(cfg.integer("lookback_months", 12));
  bc.test_start = parse_year_month(cfg.str("test_start"));
  bc.test_end = parse_year_month(cfg.str("test_end"));
  try {
    bc.strategy = parse_strategy(cfg.str("strategy", "mv_known_mu"));
    bc.mu_source = parse_mu_source(cfg.str("mu_source", "oracle_month_ahead"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  bc.forward_window_months = static_cast<int>(cfg.integer("forward_window_months", 36));
  bc.window_stride_months = static_cast<int>(cfg.integer("window_stride_months", 1));
  if (const auto mu0 = cfg.opt_num("mu0")) bc.mu0 = *mu0;
  bc.annualize = cfg.flag("annualize", false);
  Section cs = cfg.child("candidates");
  bc.candidates = parse_candidates(cs, panel);
  bc.threads = opt.threads;
  cfg.finish();
  try {
    bc.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  const BacktestReport rep = run_backtest(panel, bc);
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
  OutputSet out(dir);
  out.add("months.csv", months_csv(rep));
  out.add("weights.csv", weights_csv(rep));
  out.add("scores.csv", scores_csv(rep));
  out.add("daily.csv", daily_csv(rep));
  out.add("windows.csv", windows_csv(rep));
  out.add("report.json", report_json(rep));
  add_manifest(out, "backtest", opt, std::nullopt, start);
  out.commit();
  return 0;
}

}  // namespace sharpe_rmt::cli
