#pragma once

#include "sharpe_rmt/linalg.hpp"
#include "sharpe_rmt/moments.hpp"

namespace sharpe_rmt {

// Spectrum of Sigma relative to Q, stored as u_i = eig(Sigma^{-1/2} Q Sigma^{-1/2}).
// u_i may be +inf (directions where Sigma vanishes but Q does not).
// Every fixed-point quantity is a spectral sum of w_i(s) = 1 / (1 + (1+s) u_i).
class RelativeSpectrum {
 public:
  RelativeSpectrum(const Matrix& sigma, const Regularizer& reg);

  const Vector& u() const { return u_; }
  Eigen::Index p() const { return u_.size(); }
  bool q_is_zero() const { return q_zero_; }
  // lambda_min(Q) and tr(Sigma)/p, used for the s0 bracket
  double q_min_eigenvalue() const { return q_min_; }
  double sigma_mean_trace() const { return sigma_mean_trace_; }

  double weight(Eigen::Index i, double s) const;
  // (c/p) sum (1+s) w_i(s)
  double g(double s, double c) const;
  // (c/p) sum w_i(s)^2
  double m(double s, double c) const;

 private:
  Vector u_;
  bool q_zero_ = false;
  double q_min_ = 0.0;
  double sigma_mean_trace_ = 0.0;
};

enum class FixedPointSource { oracle, plugin };

struct FixedPointSolution {
  double s0 = 0.0;
  double s1_sigma = 0.0;
  double s1_q = 0.0;
  FixedPointSource source = FixedPointSource::oracle;
  int iterations = 0;
  double residual = 0.0;
  // plug-in mode only: estimates fall outside the oracle bounds
  bool out_of_bounds = false;
};

struct PluginStatistics {
  double f1 = 0.0;
  double f2 = 0.0;
  double correction = 1.0;
  bool out_of_bounds = false;
};

inline constexpr double kFixedPointTol = 1e-12;
inline constexpr int kFixedPointMaxIter = 200;

struct S0Result {
  double s0 = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

S0Result solve_s0_detailed(const RelativeSpectrum& spectrum, double c);
double solve_s0(const Matrix& sigma, const Regularizer& reg, double c);

double solve_s1_sigma(const RelativeSpectrum& spectrum, double c, double s0);
double solve_s1_sigma(const Matrix& sigma, const Regularizer& reg, double c, double s0);

double solve_s1_q(const RelativeSpectrum& spectrum, double c, double s0);
double solve_s1_q(const Matrix& sigma, const Regularizer& reg, double c, double s0);

FixedPointSolution solve_fixed_points(const RelativeSpectrum& spectrum, double c);
FixedPointSolution solve_fixed_points(const Matrix& sigma, const Regularizer& reg, double c);

PluginStatistics plugin_stats(const SampleMoments& moments, const Regularizer& reg);
PluginStatistics plugin_stats(const SampleMoments& moments, const Regularizer& reg, const RidgeSystem& system);

FixedPointSolution plugin_fixed_points(const PluginStatistics& stats, double c);

}  // namespace sharpe_rmt
