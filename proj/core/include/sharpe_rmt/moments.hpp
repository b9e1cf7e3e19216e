#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sharpe_rmt/calendar.hpp"
#include "sharpe_rmt/linalg.hpp"

namespace sharpe_rmt {

struct ReturnsPanel {
  Matrix data;  // n x p, rows are time points
  std::vector<Date> dates;
  std::vector<std::string> assets;
  double risk_free = 0.0;

  Eigen::Index n() const { return data.rows(); }
  Eigen::Index p() const { return data.cols(); }
  void validate() const;
};

enum class MeanSource { known, sample };

struct SampleMoments {
  Vector mu_hat;
  Matrix sigma_hat;
  Eigen::Index n = 0;
  Eigen::Index p = 0;
  double c = 0.0;
  MeanSource mean_source = MeanSource::sample;
};

SampleMoments compute_sample_moments(const ReturnsPanel& panel, const std::optional<Vector>& known_mu = std::nullopt);

struct Regularizer {
  Matrix matrix;
  std::string label;
  std::optional<double> scale;
  std::string base;
  bool allow_zero = false;

  Eigen::Index dim() const { return matrix.rows(); }
  bool is_zero() const { return sharpe_rmt::is_zero(matrix); }

  // q * base; label "q=<q>*<base_name>"
  static Regularizer scaled(double q, const Matrix& base, const std::string& base_name);
  static Regularizer zero(Eigen::Index p);
  static Regularizer identity(Eigen::Index p, double q = 1.0);
  // Validates symmetry and PSD; a zero matrix needs allow_zero.
  static Regularizer from_matrix(Matrix m, std::string label, bool allow_zero = false);
};

// Shortest round-trip decimal form of q, as used in regularizer labels.
std::string format_scale(double q);

enum class Normalization { l1_book, budget_sum1, raw };

struct PortfolioWeights {
  Vector w;
  Normalization normalization = Normalization::raw;
};

// Q = 0 falls back to the pseudo-inverse only when `mode` asks for it.
PortfolioWeights mv_weights(const SampleMoments& moments, const Vector& mu, const Regularizer& reg,
                            SolveMode mode = SolveMode::strict);
PortfolioWeights mv_weights(const RidgeSystem& system, const Vector& mu);

PortfolioWeights gmv_weights(const SampleMoments& moments, const Regularizer& reg, SolveMode mode = SolveMode::strict);
PortfolioWeights gmv_weights(const RidgeSystem& system);

// Solve mode used for (sigma_hat + Q): Q = 0 and allow_zero permits the pseudo-inverse path.
SolveMode default_solve_mode(const Regularizer& reg);

}  // namespace sharpe_rmt
