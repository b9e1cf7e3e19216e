#pragma once

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sharpe_rmt/calendar.hpp"
#include "sharpe_rmt/moments.hpp"
#include "sharpe_rmt/selection.hpp"

namespace sharpe_rmt {

// CSV with header "date,<asset>,...", ISO dates, one row per trading day. Empty, "NA" or
// "nan" cells mark missing values; assets with any missing value are dropped and a warning
// is appended to `warnings`.
ReturnsPanel parse_panel(std::istream& in, std::vector<std::string>* warnings = nullptr);
ReturnsPanel load_panel(const std::string& path, std::vector<std::string>* warnings = nullptr);
std::string panel_to_csv(const ReturnsPanel& panel);

// Centered sample covariance (divisor n) of the rows dated in months [from, to].
Matrix sample_covariance_between(const ReturnsPanel& panel, YearMonth from, YearMonth to);

enum class Strategy { mv_known_mu, mv_sample_mu, gmv, frontier };
enum class MuSource { oracle_month_ahead, historical_sample };

const char* to_string(Strategy s);
const char* to_string(MuSource s);
Strategy parse_strategy(const std::string& s);
MuSource parse_mu_source(const std::string& s);

struct BacktestConfig {
  int lookback_months = 12;
  YearMonth test_start;
  YearMonth test_end;
  CandidateSet candidates;
  Strategy strategy = Strategy::mv_known_mu;
  MuSource mu_source = MuSource::oracle_month_ahead;
  int forward_window_months = 36;
  int window_stride_months = 1;
  std::optional<double> mu0;  // frontier target
  bool annualize = false;     // multiply realized SR by sqrt(252)
  int threads = 1;

  void validate() const;
};

struct RealizedStats {
  double sr = 0.0;
  double vol = 0.0;
};

inline constexpr double kZeroVolRelTol = 1e-12;

// sr = mean / std, vol = std, population std (divisor N). Throws ZeroVarianceError when
// std <= kZeroVolRelTol * max|x|.
RealizedStats realized_stats(std::span<const double> daily);

struct StrategyMonth {
  std::string label;
  Vector weights;
  bool pseudo_inverse = false;
};

struct MonthRecord {
  YearMonth month;
  int lookback_rows = 0;
  int days = 0;
  std::string chosen_label;
  std::vector<StrategyMonth> strategies;  // candidates..., "Q=0", "Q*"
  std::vector<CandidateScore> scores;
};

struct WindowRecord {
  YearMonth start;
  YearMonth end;
  std::string label;
  int days = 0;
  double realized_sr = 0.0;
  double realized_vol = 0.0;
};

struct BacktestReport {
  BacktestConfig config;
  std::vector<std::string> labels;
  std::vector<MonthRecord> months;
  std::vector<Date> daily_dates;
  Matrix daily_returns;  // days x labels
  std::vector<WindowRecord> windows;
  bool mu_month_ahead = false;
  std::vector<std::string> warnings;

  // Daily series of one strategy over the months [start, end].
  std::vector<double> window_series(std::size_t label_index, YearMonth start, YearMonth end) const;
};

// Testing months [start, end] inclusive, in order.
std::vector<YearMonth> testing_months(YearMonth start, YearMonth end);

BacktestReport run_backtest(const ReturnsPanel& panel, const BacktestConfig& config);

std::string months_csv(const BacktestReport& report);
std::string weights_csv(const BacktestReport& report);
std::string scores_csv(const BacktestReport& report);
std::string daily_csv(const BacktestReport& report);
std::string windows_csv(const BacktestReport& report);
std::string report_json(const BacktestReport& report);

}  // namespace sharpe_rmt
