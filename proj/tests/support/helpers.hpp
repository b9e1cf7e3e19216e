#pragma once

#include "sharpe_rmt/moments.hpp"

namespace sharpe_rmt::testing {

inline SampleMoments moments_of(const Matrix& sigma_hat, Eigen::Index n, MeanSource source = MeanSource::known,
                                const Vector& mu_hat = Vector()) {
  SampleMoments m;
  m.sigma_hat = sigma_hat;
  m.p = sigma_hat.rows();
  m.n = n;
  m.c = static_cast<double>(m.p) / static_cast<double>(n);
  m.mean_source = source;
  m.mu_hat = mu_hat.size() == 0 ? Vector::Zero(m.p) : mu_hat;
  return m;
}

inline ReturnsPanel panel_of(const Matrix& data) {
  ReturnsPanel p;
  p.data = data;
  return p;
}

}  // namespace sharpe_rmt::testing
