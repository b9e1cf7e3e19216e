#include "sharpe_rmt/sharpe.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "sharpe_rmt/errors.hpp"

namespace sharpe_rmt {

namespace {

// y' S y, clamping tiny negative noise to zero.
double quad_form(const Vector& y, const Matrix& s, const char* what) {
  const double v = y.dot(s * y);
  if (v >= 0.0) return v;
  const Vector ay = y.cwiseAbs();
  const double scale = ay.dot(s.cwiseAbs() * ay);
  if (-v <= kQuadClampTol * std::max(1.0, scale)) return 0.0;
  throw DegenerateEstimateError(std::string(what) + ": negative quadratic form " + std::to_string(v));
}

double positive_sqrt(double v, const char* what) {
  if (!(v > 0.0)) throw DegenerateEstimateError(std::string(what) + ": zero denominator");
  return std::sqrt(v);
}

void check_length(const Vector& v, Eigen::Index p, const char* what) {
  if (v.size() != p) throw std::invalid_argument(std::string(what) + ": vector length mismatch");
}

void check_sigma(const Matrix& sigma, Eigen::Index p) {
  if (sigma.rows() != p || sigma.cols() != p) throw std::invalid_argument("sigma_true dimension mismatch");
}

double checked_correction(double corr) {
  if (!(corr > 0.0)) {
    throw DegenerateEstimateError("correction factor " + std::to_string(corr) + " is not positive");
  }
  return corr;
}

}  // namespace

SharpeEstimate sr_oracle_from_solution(const Vector& dir, const Vector& y, const Matrix& sigma, SharpeMode mode) {
  SharpeEstimate out;
  out.mode = mode;
  out.numerator = dir.dot(y);
  out.denominator = positive_sqrt(quad_form(y, sigma, "sr_oracle"), "sr_oracle");
  out.value = out.numerator / out.denominator;
  return out;
}

SharpeEstimate sr_hat_from_solution(const Vector& dir, const Vector& y, const Matrix& sigma_hat, double correction,
                                    SharpeMode mode) {
  SharpeEstimate out;
  out.mode = mode;
  out.correction = checked_correction(correction);
  out.numerator = dir.dot(y);
  const double root = positive_sqrt(quad_form(y, sigma_hat, "sr_hat"), "sr_hat");
  out.denominator = root / correction;
  out.value = correction * out.numerator / root;
  return out;
}

SharpeEstimate sr_hat_unknown_from_solution(const Vector& mu_hat, const Vector& y, const Matrix& sigma_hat,
                                            double correction, double t, Eigen::Index n) {
  const double nn = static_cast<double>(n);
  if (!(nn > t)) throw DegenerateEstimateError("sr_hat_unknown_mu: n <= tr (sigma_hat+Q)^{-1} sigma_hat");
  SharpeEstimate out = sr_hat_from_solution(mu_hat, y, sigma_hat, correction, SharpeMode::hat_unknown_mu);
  out.bias = t / (nn - t);
  out.numerator -= out.bias;
  out.value = out.numerator / out.denominator;
  return out;
}

const char* to_string(SharpeMode mode) {
  switch (mode) {
    case SharpeMode::oracle: return "oracle";
    case SharpeMode::hat_known_mu: return "hat_known_mu";
    case SharpeMode::hat_unknown_mu: return "hat_unknown_mu";
    case SharpeMode::gmv_oracle: return "gmv_oracle";
    case SharpeMode::gmv_hat: return "gmv_hat";
  }
  return "unknown";
}

SharpeEstimate sr_oracle(const Vector& mu, const RidgeSystem& system, const Matrix& sigma_true) {
  check_length(mu, system.dim(), "sr_oracle");
  check_sigma(sigma_true, system.dim());
  return sr_oracle_from_solution(mu, system.solve(mu), sigma_true, SharpeMode::oracle);
}

SharpeEstimate sr_oracle(const Vector& mu, const SampleMoments& moments, const Regularizer& reg,
                         const Matrix& sigma_true) {
  return sr_oracle(mu, RidgeSystem(moments.sigma_hat, reg.matrix, default_solve_mode(reg)), sigma_true);
}

SharpeEstimate sr_hat_known_mu(const Vector& mu, const SampleMoments& moments, const RidgeSystem& system) {
  check_length(mu, moments.p, "sr_hat_known_mu");
  return sr_hat_from_solution(mu, system.solve(mu), moments.sigma_hat, system.correction(moments.c),
                              SharpeMode::hat_known_mu);
}

SharpeEstimate sr_hat_known_mu(const Vector& mu, const SampleMoments& moments, const Regularizer& reg) {
  return sr_hat_known_mu(mu, moments, RidgeSystem(moments.sigma_hat, reg.matrix, default_solve_mode(reg)));
}

SharpeEstimate sr_hat_unknown_mu(const SampleMoments& moments, const RidgeSystem& system) {
  if (moments.mean_source != MeanSource::sample) {
    throw std::invalid_argument("sr_hat_unknown_mu needs moments centered at the sample mean");
  }
  return sr_hat_unknown_from_solution(moments.mu_hat, system.solve(moments.mu_hat), moments.sigma_hat,
                                      system.correction(moments.c), system.trace_sigma_hat(), moments.n);
}

SharpeEstimate sr_hat_unknown_mu(const SampleMoments& moments, const Regularizer& reg) {
  return sr_hat_unknown_mu(moments, RidgeSystem(moments.sigma_hat, reg.matrix, default_solve_mode(reg)));
}

SharpeEstimate sr_oracle_unknown_mu(const SampleMoments& moments, const RidgeSystem& system,
                                    const Matrix& sigma_true, const Vector& mu_true) {
  check_length(mu_true, moments.p, "sr_oracle_unknown_mu");
  check_sigma(sigma_true, moments.p);
  return sr_oracle_from_solution(mu_true, system.solve(moments.mu_hat), sigma_true, SharpeMode::oracle);
}

SharpeEstimate sr_oracle_unknown_mu(const SampleMoments& moments, const Regularizer& reg, const Matrix& sigma_true,
                                    const Vector& mu_true) {
  return sr_oracle_unknown_mu(moments, RidgeSystem(moments.sigma_hat, reg.matrix, default_solve_mode(reg)),
                              sigma_true, mu_true);
}

SharpeEstimate sr_gmv(const SampleMoments& moments, const RidgeSystem& system, const Matrix* sigma_true) {
  const Vector ones = Vector::Ones(moments.p);
  const Vector y = system.solve(ones);
  if (sigma_true) {
    check_sigma(*sigma_true, moments.p);
    return sr_oracle_from_solution(ones, y, *sigma_true, SharpeMode::gmv_oracle);
  }
  return sr_hat_from_solution(ones, y, moments.sigma_hat, system.correction(moments.c), SharpeMode::gmv_hat);
}

SharpeEstimate sr_gmv(const SampleMoments& moments, const Regularizer& reg, const Matrix* sigma_true) {
  return sr_gmv(moments, RidgeSystem(moments.sigma_hat, reg.matrix, default_solve_mode(reg)), sigma_true);
}

double sr_max(const Vector& mu, const Matrix& sigma) {
  if (sigma.rows() != mu.size() || sigma.cols() != mu.size()) {
    throw std::invalid_argument("sr_max: dimension mismatch");
  }
  Eigen::LLT<Matrix> llt(sigma);
  if (llt.info() != Eigen::Success || llt.rcond() < RidgeSystem::kSingularRcond) {
    throw SingularSystemError("sr_max: Sigma is singular");
  }
  const double v = mu.dot(llt.solve(mu));
  return std::sqrt(std::max(0.0, v));
}

double sr_limit_unknown(double sr_max, double c) {
  if (sr_max < 0.0) throw std::invalid_argument("sr_limit_unknown: sr_max must be >= 0");
  if (!(c > 0.0)) throw std::invalid_argument("sr_limit_unknown: c must be > 0");
  const double s2 = sr_max * sr_max;
  return s2 / std::sqrt(s2 + c);
}

TStatistics t_statistics(const Matrix& a, const SampleMoments& moments, const Regularizer& reg,
                         const Matrix* sigma_true) {
  if (a.rows() != moments.p || a.cols() != moments.p) throw std::invalid_argument("t_statistics: A dimension mismatch");
  require_psd(a, "A");
  const RidgeSystem system(moments.sigma_hat, reg.matrix, default_solve_mode(reg));
  const Matrix& k = system.inverse();
  TStatistics out;
  out.correction = checked_correction(system.correction(moments.c));
  const Matrix ka = k * a;
  out.t1 = ka.trace();
  // tr K S K A = sum((K S)^T .* K A) = sum((S K) .* K A)
  out.t2_hat = (moments.sigma_hat * k).cwiseProduct(ka).sum() / (out.correction * out.correction);
  if (sigma_true) {
    check_sigma(*sigma_true, moments.p);
    out.t2 = ((*sigma_true) * k).cwiseProduct(ka).sum();
  } else {
    out.t2 = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

double sr_hat_general(const Matrix& a, const SampleMoments& moments, const Regularizer& reg) {
  const TStatistics t = t_statistics(a, moments, reg);
  return t.t1 / positive_sqrt(std::abs(t.t2_hat), "sr_hat_general");
}

}  // namespace sharpe_rmt
