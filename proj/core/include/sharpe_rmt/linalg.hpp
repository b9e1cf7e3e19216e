#pragma once

#include <Eigen/Dense>

namespace sharpe_rmt {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Eigenvalues in ascending order; columns of `vectors` are the matching eigenvectors.
struct SymmetricEigen {
  Vector values;
  Matrix vectors;
};

// Only the lower triangle of `a` is read. Eigenvalues ascending.
SymmetricEigen symmetric_eigen(const Matrix& a);
Vector symmetric_eigenvalues(const Matrix& a);

// Eigenvalues of L^{-1} A L^{-T} where B = L L^T (B must be positive definite).
Vector generalized_eigenvalues(const Matrix& a, const Matrix& b);

bool is_symmetric(const Matrix& a, double rel_tol = 1e-12);
void symmetrize(Matrix& a);

// Throws std::invalid_argument unless `a` is square, symmetric and has
// smallest eigenvalue >= -rel_tol * ||a||_op.
void require_psd(const Matrix& a, const char* name, double rel_tol = 1e-10);

// Moore-Penrose inverse; eigenvalues below rank_tol * lambda_max are dropped.
Matrix pseudo_inverse(const Matrix& a, double rank_tol = 1e-12);

// Symmetric square root. Eigenvalues in [-1e-10 lambda_max, 0) are clamped to zero.
Matrix symmetric_sqrt(const Matrix& a);

bool is_zero(const Matrix& a);

enum class SolveMode { strict, pseudo_inverse };

// Owns (sigma_hat + Q)^{-1}. Cholesky first; if that fails or the reciprocal
// condition estimate drops below kSingularRcond the system is singular, which
// is an error in strict mode and a pseudo-inverse in pseudo_inverse mode.
class RidgeSystem {
 public:
  static constexpr double kSingularRcond = 1e-10;

  RidgeSystem(const Matrix& sigma_hat, const Matrix& q, SolveMode mode = SolveMode::strict);

  const Matrix& inverse() const { return inverse_; }
  Vector solve(const Vector& b) const { return inverse_ * b; }
  bool used_pseudo_inverse() const { return pinv_; }
  double rcond() const { return rcond_; }
  Eigen::Index dim() const { return inverse_.rows(); }

  // tr(sigma_hat (sigma_hat+Q)^{-1})
  double trace_sigma_hat() const { return trace_sigma_hat_; }
  // 1 - (c/p) tr(sigma_hat (sigma_hat+Q)^{-1})
  double correction(double c) const;

 private:
  Matrix inverse_;
  double trace_sigma_hat_ = 0.0;
  double rcond_ = 0.0;
  bool pinv_ = false;
};

}  // namespace sharpe_rmt
