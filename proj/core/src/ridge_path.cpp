#include "sharpe_rmt/ridge_path.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sharpe_rmt/errors.hpp"

namespace sharpe_rmt {

RidgePath::RidgePath(const Matrix& sigma_hat, const Matrix& offset, const Matrix& base) {
  const Eigen::Index p = sigma_hat.rows();
  if (sigma_hat.cols() != p || offset.rows() != p || offset.cols() != p || base.rows() != p || base.cols() != p) {
    throw std::invalid_argument("RidgePath: dimension mismatch");
  }
  Matrix c = sigma_hat + offset;
  const bool diagonal = base.isDiagonal(0.0);
  if (diagonal) {
    const Vector d = base.diagonal();
    if (!(d.minCoeff() > 0.0)) throw SingularSystemError("RidgePath: base must be positive definite");
    const Vector inv_root = d.cwiseSqrt().cwiseInverse();
    c = inv_root.asDiagonal() * c * inv_root.asDiagonal();
    symmetrize(c);
    SymmetricEigen e = symmetric_eigen(c);
    lambda_ = e.values;
    v_ = inv_root.asDiagonal() * e.vectors;
  } else {
    Eigen::LLT<Matrix> llt(base);
    if (llt.info() != Eigen::Success) throw SingularSystemError("RidgePath: base must be positive definite");
    c = llt.matrixL().solve(c);
    c = llt.matrixL().solve(c.transpose()).transpose();
    symmetrize(c);
    SymmetricEigen e = symmetric_eigen(c);
    lambda_ = e.values;
    v_ = llt.matrixU().solve(e.vectors);
  }
  // V^T sigma_hat V = diag(lambda) - V^T offset V
  trace_weights_ = lambda_;
  if (!is_zero(offset)) {
    if (offset.isDiagonal(0.0)) {
      trace_weights_ -= (v_.array().square().colwise() * offset.diagonal().array()).colwise().sum().transpose().matrix();
    } else {
      trace_weights_ -= (v_.array() * (offset * v_).array()).colwise().sum().transpose().matrix();
    }
  }
}

void RidgePath::check(double q) const {
  const Vector shifted = lambda_.array() + q;
  const double hi = shifted.cwiseAbs().maxCoeff();
  if (!(shifted.minCoeff() > RidgeSystem::kSingularRcond * hi)) {
    throw SingularSystemError("RidgePath: sigma_hat + Q(" + std::to_string(q) + ") is singular");
  }
}

Vector RidgePath::solve_projected(double q, const Vector& a) const {
  return v_ * (a.array() / (lambda_.array() + q)).matrix();
}

double RidgePath::trace_sigma_hat(double q) const {
  return (trace_weights_.array() / (lambda_.array() + q)).sum();
}

double RidgePath::correction(double q, double c) const {
  return 1.0 - c / static_cast<double>(dim()) * trace_sigma_hat(q);
}

}  // namespace sharpe_rmt
