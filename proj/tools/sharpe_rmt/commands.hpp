#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace sharpe_rmt::cli {

struct CommonOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> out;
  std::optional<std::uint64_t> seed;
  int threads = 0;
};

struct EstimateFlags {
  std::optional<std::filesystem::path> panel;
  std::optional<std::filesystem::path> mu;
  std::optional<std::string> mode;
  std::optional<double> q;
};

int cmd_simulate(const CommonOptions& opt);
int cmd_estimate(const CommonOptions& opt, const EstimateFlags& flags);
int cmd_frontier(const CommonOptions& opt);
int cmd_select(const CommonOptions& opt);
int cmd_backtest(const CommonOptions& opt);

}  // namespace sharpe_rmt::cli
