#include "sharpe_rmt/rmt_core.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "sharpe_rmt/errors.hpp"

namespace sharpe_rmt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_c(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("aspect ratio c must be finite and > 0");
}

}  // namespace

RelativeSpectrum::RelativeSpectrum(const Matrix& sigma, const Regularizer& reg) {
  const Matrix& q = reg.matrix;
  if (sigma.rows() != q.rows() || sigma.cols() != q.cols()) {
    throw std::invalid_argument("RelativeSpectrum: Sigma and Q dimensions differ");
  }
  require_psd(sigma, "Sigma");
  const Eigen::Index p = sigma.rows();
  sigma_mean_trace_ = sigma.trace() / static_cast<double>(p);

  if (reg.is_zero()) {
    q_zero_ = true;
    u_ = Vector::Zero(p);
    return;
  }
  require_psd(q, "Q");
  const Vector qev = symmetric_eigenvalues(q);
  q_min_ = std::max(0.0, qev(0));

  Eigen::LLT<Matrix> q_llt(q);
  if (q_llt.info() == Eigen::Success && q_llt.rcond() > 1e-12) {
    // v_i = eig(L_Q^{-1} Sigma L_Q^{-T}) and u_i = 1/v_i
    const Vector v = generalized_eigenvalues(sigma, q);
    const double vmax = std::max(0.0, v.maxCoeff());
    u_.resize(p);
    for (Eigen::Index i = 0; i < p; ++i) {
      u_(i) = v(i) > 1e-14 * vmax ? 1.0 / v(i) : kInf;
    }
    return;
  }
  Eigen::LLT<Matrix> s_llt(sigma);
  if (s_llt.info() != Eigen::Success) {
    throw SingularSystemError("RelativeSpectrum: both Sigma and Q are singular");
  }
  u_ = generalized_eigenvalues(q, sigma).cwiseMax(0.0);
}

double RelativeSpectrum::weight(Eigen::Index i, double s) const {
  const double ui = u_(i);
  if (std::isinf(ui)) return 0.0;
  return 1.0 / (1.0 + (1.0 + s) * ui);
}

double RelativeSpectrum::g(double s, double c) const {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p(); ++i) acc += weight(i, s);
  return c / static_cast<double>(p()) * (1.0 + s) * acc;
}

double RelativeSpectrum::m(double s, double c) const {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p(); ++i) {
    const double w = weight(i, s);
    acc += w * w;
  }
  return c / static_cast<double>(p()) * acc;
}

S0Result solve_s0_detailed(const RelativeSpectrum& spectrum, double c) {
  check_c(c);
  S0Result out;
  if (spectrum.q_is_zero()) {
    if (c >= 1.0) throw std::invalid_argument("solve_s0: Q = 0 requires c < 1");
    out.s0 = c / (1.0 - c);
    out.residual = std::abs(spectrum.g(out.s0, c) - out.s0);
    return out;
  }
  auto h = [&](double s) { return spectrum.g(s, c) - s; };

  double lo = 0.0;
  double hi = spectrum.q_min_eigenvalue() > 0.0
                  ? c * spectrum.sigma_mean_trace() / spectrum.q_min_eigenvalue()
                  : 1.0;
  if (!(hi > 0.0)) hi = 1.0;
  int grow = 0;
  while (h(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++grow > 200) throw std::runtime_error("solve_s0: failed to bracket the fixed point");
  }
  if (h(lo) < 0.0) throw std::runtime_error("solve_s0: invalid bracket");

  int it = 0;
  while (it < kFixedPointMaxIter && hi - lo > kFixedPointTol * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (h(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++it;
  }
  out.s0 = 0.5 * (lo + hi);
  out.iterations = it;
  out.residual = std::abs(h(out.s0));
  if (!(out.s0 > 0.0)) throw DegenerateEstimateError("solve_s0: fixed point is not positive");
  return out;
}

double solve_s0(const Matrix& sigma, const Regularizer& reg, double c) {
  return solve_s0_detailed(RelativeSpectrum(sigma, reg), c).s0;
}

namespace {

double checked_m(const RelativeSpectrum& spectrum, double c, double s0) {
  check_c(c);
  if (!(s0 > 0.0)) throw std::invalid_argument("s0 must be > 0");
  const double m = spectrum.m(s0, c);
  if (m >= 1.0) {
    throw DegenerateEstimateError("fixed point m = " + std::to_string(m) + " >= 1; inputs are inconsistent");
  }
  return m;
}

}  // namespace

double solve_s1_sigma(const RelativeSpectrum& spectrum, double c, double s0) {
  const double m = checked_m(spectrum, c, s0);
  return m * (1.0 + s0) * (1.0 + s0) / (m - 1.0);
}

double solve_s1_sigma(const Matrix& sigma, const Regularizer& reg, double c, double s0) {
  return solve_s1_sigma(RelativeSpectrum(sigma, reg), c, s0);
}

double solve_s1_q(const RelativeSpectrum& spectrum, double c, double s0) {
  const double m = checked_m(spectrum, c, s0);
  return (m * (1.0 + s0) - s0) / (1.0 - m);
}

double solve_s1_q(const Matrix& sigma, const Regularizer& reg, double c, double s0) {
  return solve_s1_q(RelativeSpectrum(sigma, reg), c, s0);
}

FixedPointSolution solve_fixed_points(const RelativeSpectrum& spectrum, double c) {
  const S0Result s = solve_s0_detailed(spectrum, c);
  FixedPointSolution out;
  out.s0 = s.s0;
  out.iterations = s.iterations;
  out.residual = s.residual;
  out.s1_sigma = solve_s1_sigma(spectrum, c, s.s0);
  out.s1_q = solve_s1_q(spectrum, c, s.s0);
  out.source = FixedPointSource::oracle;
  return out;
}

FixedPointSolution solve_fixed_points(const Matrix& sigma, const Regularizer& reg, double c) {
  return solve_fixed_points(RelativeSpectrum(sigma, reg), c);
}

PluginStatistics plugin_stats(const SampleMoments& moments, const Regularizer& reg, const RidgeSystem& system) {
  const double p = static_cast<double>(moments.p);
  PluginStatistics out;
  if (reg.is_zero()) {
    out.f1 = 0.0;
    out.f2 = 0.0;
  } else {
    const Matrix kq = system.inverse() * reg.matrix;
    out.f1 = kq.trace() / p;
    out.f2 = kq.cwiseProduct(kq.transpose()).sum() / p;
  }
  out.correction = system.correction(moments.c);
  constexpr double slack = 1e-12;
  out.out_of_bounds = out.f1 < -slack || out.f1 > 1.0 + slack || out.f2 < -slack || out.f2 > out.f1 + slack;
  return out;
}

PluginStatistics plugin_stats(const SampleMoments& moments, const Regularizer& reg) {
  return plugin_stats(moments, reg, RidgeSystem(moments.sigma_hat, reg.matrix, default_solve_mode(reg)));
}

FixedPointSolution plugin_fixed_points(const PluginStatistics& stats, double c) {
  check_c(c);
  const double d = 1.0 + c * (stats.f1 - 1.0);
  if (d == 0.0 || !std::isfinite(d)) {
    throw DegenerateEstimateError("plugin_fixed_points: 1 + c(f1 - 1) = 0");
  }
  FixedPointSolution out;
  out.source = FixedPointSource::plugin;
  out.s0 = c * (1.0 - stats.f1) / d;
  out.s1_q = c * (stats.f2 - stats.f1) / (d * d);
  const double e = stats.f1 - 1.0;
  out.s1_sigma = c * (-1.0 + 2.0 * stats.f1 - stats.f2 + c * e * e) / (d * d * d * d);
  const double sq = (1.0 + out.s0) * (1.0 + out.s0);
  out.out_of_bounds = stats.out_of_bounds || out.s0 < 0.0 || out.s1_q > 0.0 || out.s1_q < -out.s0 ||
                      out.s1_sigma > 0.0 || out.s1_sigma < -out.s0 * sq;
  return out;
}

}  // namespace sharpe_rmt
