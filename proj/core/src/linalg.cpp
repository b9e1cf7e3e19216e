#include "sharpe_rmt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sharpe_rmt/errors.hpp"

namespace sharpe_rmt {

namespace {

void require_square(const Matrix& a, const char* who) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
  }
}

Eigen::SelfAdjointEigenSolver<Matrix> decompose(const Matrix& a, int options) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, options);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("symmetric eigendecomposition did not converge");
  }
  return es;
}

}  // namespace

SymmetricEigen symmetric_eigen(const Matrix& a) {
  require_square(a, "symmetric_eigen");
  SymmetricEigen out;
  if (a.size() == 0) return out;
  const auto es = decompose(a, Eigen::ComputeEigenvectors);
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();
  return out;
}

Vector symmetric_eigenvalues(const Matrix& a) {
  require_square(a, "symmetric_eigenvalues");
  if (a.size() == 0) return Vector();
  return decompose(a, Eigen::EigenvaluesOnly).eigenvalues();
}

Vector generalized_eigenvalues(const Matrix& a, const Matrix& b) {
  require_square(a, "generalized_eigenvalues");
  if (b.rows() != a.rows() || b.cols() != a.cols()) {
    throw std::invalid_argument("generalized_eigenvalues: dimension mismatch");
  }
  Eigen::LLT<Matrix> llt(b);
  if (llt.info() != Eigen::Success) {
    throw SingularSystemError("generalized_eigenvalues: B is not positive definite");
  }
  Matrix w = llt.matrixL().solve(a);
  w = llt.matrixL().solve(w.transpose()).transpose();
  symmetrize(w);
  return symmetric_eigenvalues(w);
}

bool is_symmetric(const Matrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = a.cwiseAbs().maxCoeff();
  if (a.size() == 0 || scale == 0.0) return true;
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

void symmetrize(Matrix& a) {
  a = 0.5 * (a + a.transpose()).eval();
}

void require_psd(const Matrix& a, const char* name, double rel_tol) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument(std::string(name) + " must be square");
  }
  if (!a.allFinite()) {
    throw std::invalid_argument(std::string(name) + " has non-finite entries");
  }
  if (!is_symmetric(a)) {
    throw std::invalid_argument(std::string(name) + " must be symmetric");
  }
  if (a.size() == 0) return;
  const Vector ev = symmetric_eigenvalues(a);
  const double op = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  if (ev(0) < -rel_tol * op) {
    throw std::invalid_argument(std::string(name) + " is not positive semidefinite");
  }
}

Matrix pseudo_inverse(const Matrix& a, double rank_tol) {
  require_square(a, "pseudo_inverse");
  if (a.size() == 0) return a;
  Matrix sym = a;
  symmetrize(sym);
  const SymmetricEigen e = symmetric_eigen(sym);
  const double lmax = e.values.cwiseAbs().maxCoeff();
  Vector inv(e.values.size());
  for (Eigen::Index i = 0; i < inv.size(); ++i) {
    inv(i) = (lmax > 0.0 && std::abs(e.values(i)) > rank_tol * lmax) ? 1.0 / e.values(i) : 0.0;
  }
  Matrix out = e.vectors * inv.asDiagonal() * e.vectors.transpose();
  symmetrize(out);
  return out;
}

Matrix symmetric_sqrt(const Matrix& a) {
  require_square(a, "symmetric_sqrt");
  if (a.size() == 0) return a;
  const SymmetricEigen e = symmetric_eigen(a);
  const double lmax = std::max(0.0, e.values.maxCoeff());
  Vector root(e.values.size());
  for (Eigen::Index i = 0; i < root.size(); ++i) {
    const double v = e.values(i);
    if (v < -1e-10 * lmax) {
      throw std::invalid_argument("symmetric_sqrt: matrix is not positive semidefinite");
    }
    root(i) = v > 0.0 ? std::sqrt(v) : 0.0;
  }
  Matrix out = e.vectors * root.asDiagonal() * e.vectors.transpose();
  symmetrize(out);
  return out;
}

bool is_zero(const Matrix& a) {
  return a.size() == 0 || a.cwiseAbs().maxCoeff() == 0.0;
}

RidgeSystem::RidgeSystem(const Matrix& sigma_hat, const Matrix& q, SolveMode mode) {
  if (sigma_hat.rows() != sigma_hat.cols() || q.rows() != sigma_hat.rows() || q.cols() != sigma_hat.cols()) {
    throw std::invalid_argument("RidgeSystem: dimension mismatch between sigma_hat and Q");
  }
  const Eigen::Index p = sigma_hat.rows();
  Matrix a = sigma_hat + q;
  Eigen::LLT<Matrix> llt(a);
  rcond_ = llt.info() == Eigen::Success ? llt.rcond() : 0.0;
  if (rcond_ >= kSingularRcond) {
    inverse_ = llt.solve(Matrix::Identity(p, p));
    symmetrize(inverse_);
  } else if (mode == SolveMode::pseudo_inverse) {
    inverse_ = pseudo_inverse(a);
    pinv_ = true;
  } else {
    throw SingularSystemError("sigma_hat + Q is singular (rcond " + std::to_string(rcond_) + ")");
  }
  trace_sigma_hat_ = sigma_hat.cwiseProduct(inverse_).sum();
}

double RidgeSystem::correction(double c) const {
  const double p = static_cast<double>(dim());
  return 1.0 - (c / p) * trace_sigma_hat_;
}

}  // namespace sharpe_rmt
