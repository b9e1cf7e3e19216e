#include "sharpe_rmt/moments.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "sharpe_rmt/errors.hpp"

namespace sharpe_rmt {

void ReturnsPanel::validate() const {
  if (data.rows() < 2) throw std::invalid_argument("panel needs at least 2 rows");
  if (data.cols() < 1) throw std::invalid_argument("panel needs at least 1 asset");
  if (!data.allFinite()) throw std::invalid_argument("panel has non-finite entries");
  if (!std::isfinite(risk_free)) throw std::invalid_argument("risk-free rate must be finite");
  if (!dates.empty()) {
    if (static_cast<Eigen::Index>(dates.size()) != data.rows()) {
      throw std::invalid_argument("panel has " + std::to_string(dates.size()) + " dates for " +
                                  std::to_string(data.rows()) + " rows");
    }
    for (std::size_t i = 1; i < dates.size(); ++i) {
      if (!(dates[i - 1] < dates[i])) {
        throw std::invalid_argument("panel dates not strictly increasing at " + dates[i].iso());
      }
    }
  }
  if (!assets.empty() && static_cast<Eigen::Index>(assets.size()) != data.cols()) {
    throw std::invalid_argument("panel asset labels do not match column count");
  }
}

SampleMoments compute_sample_moments(const ReturnsPanel& panel, const std::optional<Vector>& known_mu) {
  panel.validate();
  const Eigen::Index n = panel.n();
  const Eigen::Index p = panel.p();

  SampleMoments m;
  m.n = n;
  m.p = p;
  m.c = static_cast<double>(p) / static_cast<double>(n);

  Vector center;
  if (known_mu) {
    if (known_mu->size() != p) {
      throw std::invalid_argument("known mu has length " + std::to_string(known_mu->size()) + ", expected " +
                                  std::to_string(p));
    }
    if (!known_mu->allFinite()) throw std::invalid_argument("known mu has non-finite entries");
    m.mu_hat = *known_mu;
    m.mean_source = MeanSource::known;
    center = known_mu->array() + panel.risk_free;
  } else {
    center = panel.data.colwise().mean().transpose();
    m.mu_hat = center.array() - panel.risk_free;
    m.mean_source = MeanSource::sample;
  }

  const Matrix x = panel.data.rowwise() - center.transpose();
  m.sigma_hat = Matrix::Zero(p, p);
  m.sigma_hat.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose(), 1.0 / static_cast<double>(n));
  m.sigma_hat = m.sigma_hat.selfadjointView<Eigen::Lower>();
  return m;
}

std::string format_scale(double q) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, q);
  return std::string(buf, res.ptr);
}

Regularizer Regularizer::scaled(double q, const Matrix& base, const std::string& base_name) {
  if (!std::isfinite(q) || q < 0.0) throw std::invalid_argument("regularizer scale must be finite and >= 0");
  Regularizer r;
  r.matrix = q * base;
  r.scale = q;
  r.base = base_name;
  r.label = "q=" + format_scale(q) + "*" + base_name;
  r.allow_zero = q == 0.0;
  return r;
}

Regularizer Regularizer::zero(Eigen::Index p) {
  Regularizer r;
  r.matrix = Matrix::Zero(p, p);
  r.label = "Q=0";
  r.scale = 0.0;
  r.base = "zero";
  r.allow_zero = true;
  return r;
}

Regularizer Regularizer::identity(Eigen::Index p, double q) {
  return scaled(q, Matrix::Identity(p, p), "I");
}

Regularizer Regularizer::from_matrix(Matrix m, std::string label, bool allow_zero) {
  require_psd(m, "regularizer");
  if (sharpe_rmt::is_zero(m) && !allow_zero) {
    throw std::invalid_argument("zero regularizer requires allow_zero");
  }
  Regularizer r;
  r.matrix = std::move(m);
  r.label = std::move(label);
  r.base = "custom";
  r.allow_zero = allow_zero;
  return r;
}

SolveMode default_solve_mode(const Regularizer& reg) {
  return reg.allow_zero && reg.is_zero() ? SolveMode::pseudo_inverse : SolveMode::strict;
}

PortfolioWeights mv_weights(const RidgeSystem& system, const Vector& mu) {
  if (mu.size() != system.dim()) throw std::invalid_argument("mv_weights: mu has wrong length");
  if (is_zero(mu)) throw DegenerateEstimateError("mv_weights: mu = 0 has no direction");
  PortfolioWeights out;
  out.w = system.solve(mu);
  const double l1 = out.w.lpNorm<1>();
  if (!(l1 > 0.0) || !std::isfinite(l1)) throw DegenerateEstimateError("mv_weights: zero direction");
  out.w /= l1;
  out.normalization = Normalization::l1_book;
  return out;
}

PortfolioWeights mv_weights(const SampleMoments& moments, const Vector& mu, const Regularizer& reg, SolveMode mode) {
  return mv_weights(RidgeSystem(moments.sigma_hat, reg.matrix, mode), mu);
}

PortfolioWeights gmv_weights(const RidgeSystem& system) {
  const Vector ones = Vector::Ones(system.dim());
  PortfolioWeights out;
  out.w = system.solve(ones);
  const double total = out.w.sum();
  if (!(total > 0.0)) throw DegenerateEstimateError("gmv_weights: 1'(sigma_hat+Q)^{-1}1 is not positive");
  out.w /= total;
  out.normalization = Normalization::budget_sum1;
  return out;
}

PortfolioWeights gmv_weights(const SampleMoments& moments, const Regularizer& reg, SolveMode mode) {
  return gmv_weights(RidgeSystem(moments.sigma_hat, reg.matrix, mode));
}

}  // namespace sharpe_rmt
