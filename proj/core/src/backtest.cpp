#include "sharpe_rmt/backtest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "sharpe_rmt/errors.hpp"
#include "sharpe_rmt/frontier.hpp"
#include "sharpe_rmt/parallel.hpp"
#include "sharpe_rmt/table_io.hpp"

namespace sharpe_rmt {

namespace {

bool is_missing(const std::string& s) {
  return s.empty() || s == "NA" || s == "nan" || s == "NaN";
}

double parse_number(const std::string& s, std::size_t line, const std::string& col) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  if (!s.empty() && *b == '+') ++b;
  const auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e || !std::isfinite(v)) {
    throw std::invalid_argument("line " + std::to_string(line) + ", column '" + col + "': cannot parse '" + s + "'");
  }
  return v;
}

}  // namespace

ReturnsPanel parse_panel(std::istream& in, std::vector<std::string>* warnings) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("panel CSV is empty");
  const std::vector<std::string> header = split_csv_line(line);
  if (header.size() < 2) throw std::invalid_argument("panel CSV needs a date column and at least one asset");
  const std::size_t p = header.size() - 1;

  std::vector<Date> dates;
  std::vector<std::vector<double>> cols(p);
  std::vector<bool> missing(p, false);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected " + std::to_string(header.size()) +
                                  " fields, got " + std::to_string(cells.size()));
    }
    const Date d = parse_date(cells[0]);
    if (!dates.empty()) {
      if (d == dates.back()) throw std::invalid_argument("duplicate date " + d.iso());
      if (d < dates.back()) throw std::invalid_argument("dates not sorted at " + d.iso());
    }
    dates.push_back(d);
    for (std::size_t j = 0; j < p; ++j) {
      if (is_missing(cells[j + 1])) {
        missing[j] = true;
        cols[j].push_back(0.0);
      } else {
        cols[j].push_back(parse_number(cells[j + 1], lineno, header[j + 1]));
      }
    }
  }
  if (dates.empty()) throw std::invalid_argument("panel CSV has no data rows");

  ReturnsPanel panel;
  panel.dates = std::move(dates);
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < p; ++j) {
    if (missing[j]) {
      if (warnings) warnings->push_back("dropped asset '" + header[j + 1] + "' with missing values");
    } else {
      keep.push_back(j);
    }
  }
  if (keep.empty()) throw std::invalid_argument("panel is empty after dropping assets with missing values");
  const auto n = static_cast<Eigen::Index>(panel.dates.size());
  panel.data.resize(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    panel.assets.push_back(header[keep[k] + 1]);
    for (Eigen::Index i = 0; i < n; ++i) panel.data(i, static_cast<Eigen::Index>(k)) = cols[keep[k]][i];
  }
  return panel;
}

ReturnsPanel load_panel(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open panel file '" + path + "'");
  return parse_panel(in, warnings);
}

std::string panel_to_csv(const ReturnsPanel& panel) {
  std::vector<std::string> header = {"date"};
  for (Eigen::Index j = 0; j < panel.p(); ++j) {
    header.push_back(panel.assets.empty() ? "a" + std::to_string(j) : panel.assets[j]);
  }
  CsvTable t(header);
  for (Eigen::Index i = 0; i < panel.n(); ++i) {
    std::vector<std::string> row = {panel.dates.empty() ? std::to_string(i) : panel.dates[i].iso()};
    for (Eigen::Index j = 0; j < panel.p(); ++j) row.push_back(format_double(panel.data(i, j)));
    t.add(std::move(row));
  }
  return t.str();
}

namespace {

// [begin, end) rows whose month lies in [from, to]
std::pair<Eigen::Index, Eigen::Index> month_rows(const ReturnsPanel& panel, YearMonth from, YearMonth to) {
  const auto lo = std::lower_bound(panel.dates.begin(), panel.dates.end(), from.first_day());
  const auto hi = std::lower_bound(panel.dates.begin(), panel.dates.end(), to.plus(1).first_day());
  return {static_cast<Eigen::Index>(lo - panel.dates.begin()), static_cast<Eigen::Index>(hi - panel.dates.begin())};
}

}  // namespace

Matrix sample_covariance_between(const ReturnsPanel& panel, YearMonth from, YearMonth to) {
  if (panel.dates.empty()) throw std::invalid_argument("panel has no dates");
  const auto [b, e] = month_rows(panel, from, to);
  if (e - b < 2) throw std::invalid_argument("fewer than 2 rows between " + from.iso() + " and " + to.iso());
  ReturnsPanel sub;
  sub.data = panel.data.middleRows(b, e - b);
  return compute_sample_moments(sub).sigma_hat;
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::mv_known_mu: return "mv_known_mu";
    case Strategy::mv_sample_mu: return "mv_sample_mu";
    case Strategy::gmv: return "gmv";
    case Strategy::frontier: return "frontier";
  }
  return "?";
}

const char* to_string(MuSource s) {
  switch (s) {
    case MuSource::oracle_month_ahead: return "oracle_month_ahead";
    case MuSource::historical_sample: return "historical_sample";
  }
  return "?";
}

Strategy parse_strategy(const std::string& s) {
  for (auto v : {Strategy::mv_known_mu, Strategy::mv_sample_mu, Strategy::gmv, Strategy::frontier}) {
    if (s == to_string(v)) return v;
  }
  throw std::invalid_argument("unknown strategy '" + s + "'");
}

MuSource parse_mu_source(const std::string& s) {
  for (auto v : {MuSource::oracle_month_ahead, MuSource::historical_sample}) {
    if (s == to_string(v)) return v;
  }
  throw std::invalid_argument("unknown mu source '" + s + "'");
}

void BacktestConfig::validate() const {
  if (lookback_months < 1) throw std::invalid_argument("lookback_months must be >= 1");
  if (forward_window_months < 1) throw std::invalid_argument("forward_window_months must be >= 1");
  if (window_stride_months < 1) throw std::invalid_argument("window_stride_months must be >= 1");
  if (test_end < test_start) throw std::invalid_argument("test_end precedes test_start");
  candidates.validate();
  if (strategy == Strategy::mv_sample_mu && mu_source != MuSource::historical_sample) {
    throw std::invalid_argument("mv_sample_mu needs mu_source historical_sample");
  }
  if (strategy == Strategy::frontier && !mu0) throw std::invalid_argument("frontier strategy needs mu0");
}

RealizedStats realized_stats(std::span<const double> daily) {
  if (daily.size() < 2) throw std::invalid_argument("realized_stats needs at least 2 observations");
  double mean = 0.0;
  double scale = 0.0;
  for (double v : daily) {
    mean += v;
    scale = std::max(scale, std::abs(v));
  }
  mean /= static_cast<double>(daily.size());
  double var = 0.0;
  for (double v : daily) var += (v - mean) * (v - mean);
  var /= static_cast<double>(daily.size());
  if (!(std::sqrt(var) > kZeroVolRelTol * scale)) throw ZeroVarianceError("realized_stats: zero variance");
  RealizedStats out;
  out.vol = std::sqrt(var);
  out.sr = mean / out.vol;
  return out;
}

std::vector<YearMonth> testing_months(YearMonth start, YearMonth end) {
  std::vector<YearMonth> out;
  for (YearMonth m = start; !(end < m); m = m.plus(1)) out.push_back(m);
  return out;
}

std::vector<double> BacktestReport::window_series(std::size_t label_index, YearMonth start, YearMonth end) const {
  std::vector<double> out;
  for (std::size_t i = 0; i < daily_dates.size(); ++i) {
    const YearMonth m = year_month(daily_dates[i]);
    if (!(m < start) && !(end < m)) out.push_back(daily_returns(static_cast<Eigen::Index>(i),
                                                                static_cast<Eigen::Index>(label_index)));
  }
  return out;
}

namespace {

SelectionCriterion criterion_for(Strategy s) {
  switch (s) {
    case Strategy::mv_known_mu: return SelectionCriterion::max_sr_known;
    case Strategy::mv_sample_mu: return SelectionCriterion::max_sr_unknown;
    case Strategy::gmv: return SelectionCriterion::max_inv_vol_gmv;
    case Strategy::frontier: return SelectionCriterion::min_frontier_var;
  }
  throw std::invalid_argument("unknown strategy");
}

Vector strategy_weights(const BacktestConfig& cfg, const SampleMoments& m, const RidgeSystem& system,
                        const Vector& mu) {
  switch (cfg.strategy) {
    case Strategy::mv_known_mu:
    case Strategy::mv_sample_mu:
      return mv_weights(system, mu).w;
    case Strategy::gmv:
      return gmv_weights(system).w;
    case Strategy::frontier: {
      const FrontierCoefficients coeffs = frontier_coefficients(mu, m, system);
      return coeffs.g + *cfg.mu0 * coeffs.h;
    }
  }
  throw std::invalid_argument("unknown strategy");
}

struct MonthResult {
  MonthRecord record;
  Matrix returns;  // days x labels
  Eigen::Index first_row = 0;
};

}  // namespace

BacktestReport run_backtest(const ReturnsPanel& panel, const BacktestConfig& config) {
  panel.validate();
  config.validate();
  if (panel.dates.empty()) throw std::invalid_argument("backtest needs a dated panel");
  const Eigen::Index p = panel.p();
  if (config.candidates.candidates.front().dim() != p) {
    throw std::invalid_argument("candidate dimension does not match the panel");
  }
  const YearMonth first = year_month(panel.dates.front());
  const YearMonth last = year_month(panel.dates.back());
  if (config.test_start.plus(-config.lookback_months) < first || last < config.test_end) {
    throw std::invalid_argument("test range " + config.test_start.iso() + ".." + config.test_end.iso() +
                                " with lookback " + std::to_string(config.lookback_months) +
                                " is outside panel coverage " + first.iso() + ".." + last.iso());
  }

  BacktestReport report;
  report.config = config;
  report.mu_month_ahead = config.mu_source == MuSource::oracle_month_ahead;
  for (const auto& c : config.candidates.candidates) report.labels.push_back(c.label);
  report.labels.push_back("Q=0");
  report.labels.push_back("Q*");
  const auto nlabels = static_cast<Eigen::Index>(report.labels.size());
  const Eigen::Index ncand = nlabels - 2;

  const std::vector<YearMonth> months = testing_months(config.test_start, config.test_end);
  std::vector<MonthResult> results(months.size());

  parallel_for(months.size(), config.threads, [&](std::size_t k) {
    const YearMonth m = months[k];
    MonthResult& res = results[k];
    res.record.month = m;
    const auto [mb, me] = month_rows(panel, m, m);
    const auto [lb, le] = month_rows(panel, m.plus(-config.lookback_months), m.plus(-1));
    res.first_row = mb;
    res.record.days = static_cast<int>(me - mb);
    res.record.lookback_rows = static_cast<int>(le - lb);
    if (me == mb) return;
    if (le - lb < 2) {
      throw std::invalid_argument("insufficient lookback rows for " + m.iso() + " (" + std::to_string(le - lb) + ")");
    }

    ReturnsPanel window;
    window.data = panel.data.middleRows(lb, le - lb);
    window.risk_free = panel.risk_free;
    const SampleMoments moments = compute_sample_moments(window);
    Vector mu = moments.mu_hat;
    if (config.mu_source == MuSource::oracle_month_ahead) {
      mu = panel.data.middleRows(mb, me - mb).colwise().mean().transpose();
      mu.array() -= panel.risk_free;
    }

    try {
      Matrix w(p, nlabels);
      for (Eigen::Index j = 0; j < ncand; ++j) {
        const Regularizer& reg = config.candidates.candidates[static_cast<std::size_t>(j)];
        const RidgeSystem system(moments.sigma_hat, reg.matrix, SolveMode::pseudo_inverse);
        w.col(j) = strategy_weights(config, moments, system, mu);
        res.record.strategies.push_back({reg.label, w.col(j), system.used_pseudo_inverse()});
      }
      const RidgeSystem zero(moments.sigma_hat, Matrix::Zero(p, p), SolveMode::pseudo_inverse);
      w.col(ncand) = strategy_weights(config, moments, zero, mu);
      res.record.strategies.push_back({"Q=0", w.col(ncand), zero.used_pseudo_inverse()});

      SelectionInputs in;
      in.mu = mu;
      in.r = mu;
      in.mu0 = config.mu0;
      const SelectionResult sel = select(moments, config.candidates, criterion_for(config.strategy), in);
      res.record.chosen_label = sel.chosen.label;
      res.record.scores = sel.scores;
      const auto chosen = static_cast<Eigen::Index>(sel.chosen_index);
      w.col(ncand + 1) = w.col(chosen);
      res.record.strategies.push_back({"Q*", w.col(chosen), res.record.strategies[sel.chosen_index].pseudo_inverse});

      const Matrix excess = panel.data.middleRows(mb, me - mb).array() - panel.risk_free;
      res.returns = excess * w;
    } catch (const std::exception& e) {
      throw std::runtime_error("month " + m.iso() + ": " + e.what());
    }
  });

  Eigen::Index total_days = 0;
  for (const auto& r : results) total_days += r.returns.rows();
  report.daily_returns.resize(total_days, nlabels);
  Eigen::Index row = 0;
  for (auto& r : results) {
    if (r.record.days == 0) report.warnings.push_back("month " + r.record.month.iso() + " has no trading days; skipped");
    for (Eigen::Index i = 0; i < r.returns.rows(); ++i) {
      report.daily_dates.push_back(panel.dates[static_cast<std::size_t>(r.first_row + i)]);
      report.daily_returns.row(row++) = r.returns.row(i);
    }
    report.months.push_back(std::move(r.record));
  }

  const double scale = config.annualize ? std::sqrt(252.0) : 1.0;
  for (std::size_t s = 0; s < months.size(); s += static_cast<std::size_t>(config.window_stride_months)) {
    const YearMonth ws = months[s];
    const YearMonth we = ws.plus(config.forward_window_months - 1);
    if (config.test_end < we) break;
    for (Eigen::Index j = 0; j < nlabels; ++j) {
      const std::vector<double> series = report.window_series(static_cast<std::size_t>(j), ws, we);
      RealizedStats st;
      try {
        st = realized_stats(series);
      } catch (const ZeroVarianceError&) {
        throw ZeroVarianceError("window " + ws.iso() + " strategy " + report.labels[static_cast<std::size_t>(j)] +
                                ": zero variance");
      }
      report.windows.push_back({ws, we, report.labels[static_cast<std::size_t>(j)], static_cast<int>(series.size()),
                                st.sr * scale, st.vol});
    }
  }
  if (report.windows.empty()) report.warnings.push_back("test range is shorter than the forward window; no windows");
  return report;
}

std::string months_csv(const BacktestReport& report) {
  CsvTable t({"month", "lookback_rows", "days", "chosen", "mu_month_ahead"});
  for (const auto& m : report.months) {
    t.add({m.month.iso(), std::to_string(m.lookback_rows), std::to_string(m.days), m.chosen_label,
           report.mu_month_ahead ? "1" : "0"});
  }
  return t.str();
}

std::string weights_csv(const BacktestReport& report) {
  CsvTable t({"month", "label", "sum_w", "l1_w", "max_abs_w", "pseudo_inverse"});
  for (const auto& m : report.months) {
    for (const auto& s : m.strategies) {
      t.add({m.month.iso(), s.label, format_double(s.weights.sum()), format_double(s.weights.lpNorm<1>()),
             format_double(s.weights.cwiseAbs().maxCoeff()), s.pseudo_inverse ? "1" : "0"});
    }
  }
  return t.str();
}

std::string scores_csv(const BacktestReport& report) {
  CsvTable t({"month", "label", "score", "valid", "chosen"});
  for (const auto& m : report.months) {
    for (const auto& s : m.scores) {
      t.add({m.month.iso(), s.label, format_double(s.score), s.valid ? "1" : "0",
             s.label == m.chosen_label ? "1" : "0"});
    }
  }
  return t.str();
}

std::string daily_csv(const BacktestReport& report) {
  std::vector<std::string> header = {"date"};
  header.insert(header.end(), report.labels.begin(), report.labels.end());
  CsvTable t(header);
  for (std::size_t i = 0; i < report.daily_dates.size(); ++i) {
    std::vector<std::string> row = {report.daily_dates[i].iso()};
    for (Eigen::Index j = 0; j < report.daily_returns.cols(); ++j) {
      row.push_back(format_double(report.daily_returns(static_cast<Eigen::Index>(i), j)));
    }
    t.add(std::move(row));
  }
  return t.str();
}

std::string windows_csv(const BacktestReport& report) {
  CsvTable t({"window_start", "window_end", "label", "days", "realized_sr", "realized_vol"});
  for (const auto& w : report.windows) {
    t.add({w.start.iso(), w.end.iso(), w.label, std::to_string(w.days), format_double(w.realized_sr),
           format_double(w.realized_vol)});
  }
  return t.str();
}

std::string report_json(const BacktestReport& report) {
  using nlohmann::ordered_json;
  const BacktestConfig& c = report.config;
  ordered_json j;
  ordered_json cfg = {{"lookback_months", c.lookback_months},
                      {"test_start", c.test_start.iso()},
                      {"test_end", c.test_end.iso()},
                      {"strategy", to_string(c.strategy)},
                      {"mu_source", to_string(c.mu_source)},
                      {"forward_window_months", c.forward_window_months},
                      {"window_stride_months", c.window_stride_months},
                      {"annualize", c.annualize}};
  if (c.mu0) cfg["mu0"] = *c.mu0;
  j["config"] = cfg;
  j["labels"] = report.labels;
  j["mu_month_ahead"] = report.mu_month_ahead;
  j["testing_months"] = report.months.size();
  j["trading_days"] = report.daily_dates.size();
  j["windows"] = report.windows.size();
  j["warnings"] = report.warnings;
  j["tables"] = {"months.csv", "weights.csv", "scores.csv", "daily.csv", "windows.csv"};
  return j.dump(2) + "\n";
}

}  // namespace sharpe_rmt
