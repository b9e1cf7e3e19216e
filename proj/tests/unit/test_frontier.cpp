#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "helpers.hpp"
#include "oracles.hpp"
#include "sharpe_rmt/errors.hpp"
#include "sharpe_rmt/frontier.hpp"
#include "sharpe_rmt/rmt_core.hpp"

using namespace sharpe_rmt;
using sharpe_rmt::testing::Gen;
using sharpe_rmt::testing::moments_of;

namespace {

const Vector kR2 = (Vector(2) << 0.1, 0.2).finished();

}  // namespace

TEST(FrontierCoefficients, TwoByTwoHandValues) {
  const SampleMoments m = moments_of(Matrix::Identity(2, 2), 10);
  const FrontierCoefficients f = frontier_coefficients(kR2, m, Regularizer::zero(2));
  EXPECT_NEAR(f.a, 0.3, 1e-15);
  EXPECT_NEAR(f.b, 0.05, 1e-15);
  EXPECT_NEAR(f.c, 2.0, 1e-15);
  EXPECT_NEAR(f.d, 0.01, 1e-15);
  // g = (0.05*1 - 0.3*r)/0.01, h = (2r - 0.3*1)/0.01
  EXPECT_NEAR(f.g(0), 2.0, 1e-12);
  EXPECT_NEAR(f.g(1), -1.0, 1e-12);
  EXPECT_NEAR(f.h(0), -10.0, 1e-12);
  EXPECT_NEAR(f.h(1), 10.0, 1e-12);
}

TEST(FrontierCoefficients, CollinearRejected) {
  const SampleMoments m = moments_of(Matrix::Identity(3, 3), 30);
  EXPECT_THROW(frontier_coefficients(Vector::Constant(3, 0.4), m, Regularizer::identity(3)), DegenerateEstimateError);
  Vector near = Vector::Constant(3, 0.4);
  near(1) += 1e-9;
  EXPECT_THROW(frontier_coefficients(near, m, Regularizer::identity(3)), DegenerateEstimateError);
  near(1) += 1e-3;
  EXPECT_NO_THROW(frontier_coefficients(near, m, Regularizer::identity(3)));
}

TEST(FrontierCoefficients, ConstraintIdentity) {
  Gen g(1);
  for (int k = 0; k < 30; ++k) {
    const int p = g.integer(2, 14);
    const Vector r = g.vector(p);
    const SampleMoments m = moments_of(g.spd(p), 3 * p);
    const FrontierCoefficients f = frontier_coefficients(r, m, Regularizer::from_matrix(g.spd(p, 0.2), "q"));
    EXPECT_GE(f.d, 0.0);
    for (double mu0 : {0.0, 1.0, 5.0}) {
      const FrontierPoint pt = frontier_point(f, mu0, m);
      EXPECT_NEAR(pt.weights.dot(r), mu0, 1e-9 * std::max(1.0, mu0));
      EXPECT_NEAR(pt.weights.sum(), 1.0, 1e-9);
    }
  }
}

TEST(FrontierPoint, ZeroRegularizerCorrection) {
  Gen g(2);
  const Matrix sh = g.spd(4);
  const Matrix s = g.spd(4);
  const SampleMoments m = moments_of(sh, 16);
  const Vector r = g.vector(4);
  const FrontierCoefficients f = frontier_coefficients(r, m, Regularizer::zero(4));
  EXPECT_NEAR(f.correction, 0.75, 1e-12);
  const FrontierPoint pt = frontier_point(f, 0.7, m, &s);
  EXPECT_NEAR(pt.sigma_hat_sq, pt.weights.dot(sh * pt.weights) / (0.75 * 0.75), 1e-12);
  EXPECT_NEAR(pt.sigma_hat, std::sqrt(pt.sigma_hat_sq), 1e-15);
  ASSERT_TRUE(pt.sigma_true.has_value());
  EXPECT_NEAR(*pt.sigma_true, std::sqrt(pt.weights.dot(s * pt.weights)), 1e-12);
  EXPECT_FALSE(frontier_point(f, 0.7, m).sigma_true.has_value());
}

TEST(FrontierPoint, MinimumVarianceAtRatio) {
  const SampleMoments m = moments_of(Matrix::Identity(2, 2), 10);
  const FrontierCoefficients f = frontier_coefficients(kR2, m, Regularizer::zero(2));
  const double star = f.a / f.c;
  EXPECT_NEAR(star, 0.15, 1e-15);
  const double v0 = frontier_point(f, star, m).sigma_hat_sq;
  for (double eps : {-0.1, -1e-3, 1e-3, 0.1}) {
    EXPECT_GT(frontier_point(f, star + eps, m).sigma_hat_sq, v0);
  }
  // quadratic: (C mu0^2 - 2 A mu0 + B) / D scaled by 1/corr^2
  const double corr = f.correction;
  for (double mu0 : {0.0, 0.4, 2.0}) {
    const double expected = (f.c * mu0 * mu0 - 2.0 * f.a * mu0 + f.b) / f.d / (corr * corr);
    EXPECT_NEAR(frontier_point(f, mu0, m).sigma_hat_sq, expected, 1e-10 * expected);
  }
}

TEST(AssumptionDiagnostics, Extremes) {
  const Matrix sigma = Matrix::Identity(2, 2);
  const AssumptionDiagnostics ortho =
      assumption_diagnostics((Vector(2) << 1.0, -1.0).finished(), sigma, Regularizer::identity(2), 0.5);
  EXPECT_NEAR(ortho.rho, 0.0, 1e-15);
  const AssumptionDiagnostics ones = assumption_diagnostics(Vector::Ones(2), sigma, Regularizer::identity(2), 0.5);
  EXPECT_NEAR(ones.rho, 1.0, 1e-14);
}

TEST(AssumptionDiagnostics, MarketStyleResidualDecomposition) {
  Gen g(3);
  const int p = 12;
  // orthonormal frame whose first three columns are 1/sqrt(p), xi, r0
  Matrix seed = g.gaussian(p, p);
  seed.col(0).setOnes();
  const Matrix frame = Eigen::HouseholderQR<Matrix>(seed).householderQ();
  const Vector xi = frame.col(1);
  const Vector r0 = frame.col(2);
  const Vector ones = Vector::Ones(p);
  // Sigma has xi as an eigenvector with a large eigenvalue; Q = 0.5 I keeps it one of M^{-1}
  Matrix rest = g.spd(p);
  const Matrix proj = Matrix::Identity(p, p) - xi * xi.transpose();
  rest = proj * rest * proj;
  const Matrix sigma = 0.5 * (rest + rest.transpose()) + 40.0 * xi * xi.transpose() + 0.2 * Matrix::Identity(p, p);
  const Regularizer reg = Regularizer::identity(p, 0.5);
  const double c = 0.3;
  const double s0 = solve_s0(sigma, reg, c);
  const Matrix m_inv = sigma / (1.0 + s0) + reg.matrix;
  const double lambda1 = xi.dot(m_inv * xi);
  ASSERT_LT((m_inv * xi - lambda1 * xi).norm(), 1e-10);
  const Matrix omega = sharpe_rmt::testing::lu_inverse(m_inv) - xi * xi.transpose() / lambda1;

  const double a2 = 2.5;
  const double a3 = 1.7;
  const Vector r = a2 * xi + a3 * r0;
  const AssumptionDiagnostics d = assumption_diagnostics(r, sigma, reg, c);
  EXPECT_NEAR(d.a_r1, a3 * r0.dot(omega * ones), 1e-10);
  EXPECT_NEAR(d.a_11, ones.dot(omega * ones), 1e-10);
  EXPECT_NEAR(d.a_rr, a3 * a3 * r0.dot(omega * r0) + a2 * a2 / lambda1, 1e-10);
  const double ratio = a3 * a3 * std::pow(r0.dot(omega * ones), 2) /
                       (a3 * a3 * r0.dot(omega * r0) * ones.dot(omega * ones) + a2 * a2 * ones.dot(omega * ones) / lambda1);
  EXPECT_NEAR(d.rho, ratio, 1e-10);
  EXPECT_GE(d.rho, 0.0);
  EXPECT_LT(d.rho, 1.0);
}
