#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sharpe_rmt/moments.hpp"
#include "sharpe_rmt/selection.hpp"

namespace sharpe_rmt::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A JSON object that remembers which keys were read; finish() rejects the rest.
class Section {
 public:
  Section(nlohmann::json obj, std::string where, std::filesystem::path base_dir);

  bool has(const std::string& key) const;
  const nlohmann::json& raw(const std::string& key);
  Section child(const std::string& key);

  std::string str(const std::string& key);
  std::string str(const std::string& key, const std::string& fallback);
  double num(const std::string& key);
  std::optional<double> opt_num(const std::string& key);
  long long integer(const std::string& key);
  long long integer(const std::string& key, long long fallback);
  bool flag(const std::string& key, bool fallback);
  std::vector<double> numbers(const std::string& key);
  // Resolved against the directory of the config file.
  std::filesystem::path path(const std::string& key);
  std::optional<std::filesystem::path> opt_path(const std::string& key);

  const std::string& where() const { return where_; }
  const std::filesystem::path& base_dir() const { return base_; }
  void finish() const;

 private:
  std::string key_path(const std::string& key) const;

  nlohmann::json obj_;
  std::string where_;
  std::filesystem::path base_;
  std::set<std::string> used_;
};

Section load_config(const std::filesystem::path& file);
Section empty_config();

// "asset,value" rows, matched to the panel's asset order.
Vector load_vector(const std::filesystem::path& file, const std::vector<std::string>& assets);
// Header row of asset names (optionally led by an empty cell), then one row per asset.
Matrix load_matrix(const std::filesystem::path& file, const std::vector<std::string>& assets);

// {"type": "zero" | "identity" | "matrix" | "sample_covariance", ...}
Regularizer parse_regularizer(Section& s, const ReturnsPanel& panel);
// {"base": {...}, "scales": [...]} or {"list": [ {...}, ... ]}
CandidateSet parse_candidates(Section& s, const ReturnsPanel& panel);

// {"from": a, "to": b, "step": h} or a plain array
std::vector<double> parse_grid(Section& s, const std::string& key);

}  // namespace sharpe_rmt::cli
