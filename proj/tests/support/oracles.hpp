#pragma once

#include <vector>

#include <Eigen/Dense>

namespace sharpe_rmt::testing {

// Reference computations: LU instead of Cholesky, explicit loops, plain fixed-point
// iteration instead of spectral bisection.

Eigen::MatrixXd lu_inverse(const Eigen::MatrixXd& a);

// X'X/n with explicit loops in long double; X = R - 1 center'
Eigen::MatrixXd loop_covariance(const Eigen::MatrixXd& r, const Eigen::VectorXd& center);

// mu'K mu / sqrt(mu'K S K mu) with K from lu_inverse(sigma_hat + q)
double oracle_sharpe(const Eigen::VectorXd& num_dir, const Eigen::VectorXd& dir, const Eigen::MatrixXd& sigma_hat,
                     const Eigen::MatrixXd& q, const Eigen::MatrixXd& s);

// 1 - (c/p) tr(sigma_hat K) via LU
double oracle_correction(const Eigen::MatrixXd& sigma_hat, const Eigen::MatrixXd& q, double c);

// s0 by damped fixed-point iteration s <- (c/p) tr Sigma (Sigma/(1+s) + Q)^{-1}, explicit LU per step
double oracle_s0_iteration(const Eigen::MatrixXd& sigma, const Eigen::MatrixXd& q, double c);

// positive root of q s^2 + (q + 1 - c) s - c = 0
double oracle_s0_proportional(double q, double c);

// m = (c/p) (1+s0)^{-2} tr (Sigma/(1+s0) + Q)^{-2} Sigma^2 by matrix products
double oracle_m(const Eigen::MatrixXd& sigma, const Eigen::MatrixXd& q, double c, double s0);

// f1, f2 by explicit products
double oracle_f1(const Eigen::MatrixXd& sigma_hat, const Eigen::MatrixXd& q);
double oracle_f2(const Eigen::MatrixXd& sigma_hat, const Eigen::MatrixXd& q);

// mean / population std with long double accumulation
double oracle_realized_sr(const std::vector<double>& x);
double oracle_realized_vol(const std::vector<double>& x);

// Count months from (y0, m0) to (y1, m1) inclusive by stepping a calendar
int oracle_month_count(int y0, int m0, int y1, int m1);

}  // namespace sharpe_rmt::testing
