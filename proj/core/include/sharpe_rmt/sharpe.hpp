#pragma once

#include "sharpe_rmt/linalg.hpp"
#include "sharpe_rmt/moments.hpp"

namespace sharpe_rmt {

enum class SharpeMode { oracle, hat_known_mu, hat_unknown_mu, gmv_oracle, gmv_hat };

const char* to_string(SharpeMode mode);

// value == numerator / denominator in every mode. The denominator is sqrt|T2| for
// oracle modes and sqrt|T2_hat| = sqrt(quad form) / correction for hat modes.
struct SharpeEstimate {
  double value = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  double correction = 1.0;
  SharpeMode mode = SharpeMode::oracle;
  double bias = 0.0;  // t/(n-t), unknown-mu estimator only
};

// Quadratic forms below this (relative) magnitude are clamped to zero instead of raising.
inline constexpr double kQuadClampTol = 1e-12;

// Building blocks taking y = (sigma_hat + Q)^{-1} dir directly.
SharpeEstimate sr_oracle_from_solution(const Vector& dir, const Vector& y, const Matrix& sigma_true,
                                       SharpeMode mode = SharpeMode::oracle);
SharpeEstimate sr_hat_from_solution(const Vector& dir, const Vector& y, const Matrix& sigma_hat, double correction,
                                    SharpeMode mode = SharpeMode::hat_known_mu);
// t = tr((sigma_hat + Q)^{-1} sigma_hat)
SharpeEstimate sr_hat_unknown_from_solution(const Vector& mu_hat, const Vector& y, const Matrix& sigma_hat,
                                            double correction, double t, Eigen::Index n);

SharpeEstimate sr_oracle(const Vector& mu, const RidgeSystem& system, const Matrix& sigma_true);
SharpeEstimate sr_oracle(const Vector& mu, const SampleMoments& moments, const Regularizer& reg,
                         const Matrix& sigma_true);

SharpeEstimate sr_hat_known_mu(const Vector& mu, const SampleMoments& moments, const RidgeSystem& system);
SharpeEstimate sr_hat_known_mu(const Vector& mu, const SampleMoments& moments, const Regularizer& reg);

// Requires moments computed with the sample mean.
SharpeEstimate sr_hat_unknown_mu(const SampleMoments& moments, const RidgeSystem& system);
SharpeEstimate sr_hat_unknown_mu(const SampleMoments& moments, const Regularizer& reg);

SharpeEstimate sr_oracle_unknown_mu(const SampleMoments& moments, const RidgeSystem& system,
                                    const Matrix& sigma_true, const Vector& mu_true);
SharpeEstimate sr_oracle_unknown_mu(const SampleMoments& moments, const Regularizer& reg, const Matrix& sigma_true,
                                    const Vector& mu_true);

// Oracle mode when sigma_true is given, hat mode otherwise.
SharpeEstimate sr_gmv(const SampleMoments& moments, const RidgeSystem& system, const Matrix* sigma_true = nullptr);
SharpeEstimate sr_gmv(const SampleMoments& moments, const Regularizer& reg, const Matrix* sigma_true = nullptr);

double sr_max(const Vector& mu, const Matrix& sigma);
double sr_limit_unknown(double sr_max, double c);

// General direction matrix A (PSD): T1 = tr K A, T2 = tr K Sigma K A, T2_hat = tr K Sigma_hat K A / correction^2
// with K = (Sigma_hat + Q)^{-1}. t2 is NaN when sigma_true is not supplied.
struct TStatistics {
  double t1 = 0.0;
  double t2 = 0.0;
  double t2_hat = 0.0;
  double correction = 1.0;
};

TStatistics t_statistics(const Matrix& a, const SampleMoments& moments, const Regularizer& reg,
                         const Matrix* sigma_true = nullptr);
// T1 / sqrt|T2_hat|
double sr_hat_general(const Matrix& a, const SampleMoments& moments, const Regularizer& reg);

}  // namespace sharpe_rmt
