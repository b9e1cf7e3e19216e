#pragma once

#include "sharpe_rmt/linalg.hpp"

namespace sharpe_rmt {

// (sigma_hat + offset + q * base)^{-1} for many q after one O(p^3) setup.
// With base = L L^T and L^{-1}(sigma_hat + offset)L^{-T} = W diag(lambda) W^T,
// the inverse is V diag(1/(lambda + q)) V^T where V = L^{-T} W.
class RidgePath {
 public:
  RidgePath(const Matrix& sigma_hat, const Matrix& offset, const Matrix& base);

  Eigen::Index dim() const { return v_.rows(); }

  Vector project(const Vector& b) const { return v_.transpose() * b; }
  // (sigma_hat + Q(q))^{-1} b given a = project(b)
  Vector solve_projected(double q, const Vector& a) const;
  Vector solve(double q, const Vector& b) const { return solve_projected(q, project(b)); }

  // tr(sigma_hat (sigma_hat + Q(q))^{-1})
  double trace_sigma_hat(double q) const;
  double correction(double q, double c) const;

  // Throws SingularSystemError when sigma_hat + Q(q) is numerically singular.
  void check(double q) const;

 private:
  Matrix v_;
  Vector lambda_;
  Vector trace_weights_;
};

}  // namespace sharpe_rmt
