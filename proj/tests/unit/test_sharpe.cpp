#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "helpers.hpp"
#include "oracles.hpp"
#include "sharpe_rmt/errors.hpp"
#include "sharpe_rmt/rng.hpp"
#include "sharpe_rmt/sharpe.hpp"
#include "sharpe_rmt/simgen.hpp"

using namespace sharpe_rmt;
using sharpe_rmt::testing::Gen;
using sharpe_rmt::testing::moments_of;

TEST(SrOracle, TruthPluggedInGivesMaximum) {
  Gen g(1);
  const Matrix sigma = g.spd(8);
  const Vector mu = g.vector(8);
  const SharpeEstimate e = sr_oracle(mu, moments_of(sigma, 80), Regularizer::zero(8), sigma);
  EXPECT_NEAR(e.value, sr_max(mu, sigma), 1e-12);
  EXPECT_EQ(e.mode, SharpeMode::oracle);
}

TEST(SrOracle, ScalarCaseIsRegularizerInvariant) {
  const Matrix s = Matrix::Constant(1, 1, 0.04);
  const Vector mu = Vector::Constant(1, 0.1);
  for (double q : {0.0, 0.3, 10.0}) {
    const Regularizer reg = q == 0.0 ? Regularizer::zero(1) : Regularizer::identity(1, q);
    EXPECT_NEAR(sr_oracle(mu, moments_of(s, 10), reg, s).value, 0.5, 1e-15) << q;
  }
}

TEST(SrOracle, MatchesLuOracle) {
  Gen g(2);
  for (int k = 0; k < 20; ++k) {
    const int p = g.integer(2, 12);
    const Matrix sh = g.spd(p);
    const Matrix s = g.spd(p);
    const Matrix q = g.spd(p, 0.2);
    const Vector mu = g.vector(p);
    const SharpeEstimate e = sr_oracle(mu, moments_of(sh, 5 * p), Regularizer::from_matrix(q, "q"), s);
    EXPECT_NEAR(e.value, sharpe_rmt::testing::oracle_sharpe(mu, mu, sh, q, s), 1e-10);
    EXPECT_NEAR(e.value, e.numerator / e.denominator, 1e-12 * std::abs(e.value));
  }
}

TEST(SrOracle, InvariantUnderReturnRescaling) {
  Gen g(3);
  const Matrix sh = g.spd(6);
  const Matrix s = g.spd(6);
  const Matrix q = g.spd(6, 0.5);
  const Vector mu = g.vector(6);
  const double base = sr_oracle(mu, moments_of(sh, 30), Regularizer::from_matrix(q, "q"), s).value;
  // returns scaled by a: Sigma, Sigma_hat, Q by a^2 and mu by a
  for (double a : {1e-2, 0.7, 50.0}) {
    const double lam = a * a;
    const Matrix sq = lam * q;
    const double scaled =
        sr_oracle(a * mu, moments_of(lam * sh, 30), Regularizer::from_matrix(sq, "q"), lam * s).value;
    EXPECT_NEAR(scaled, base, 1e-10 * std::abs(base)) << lam;
  }
}

TEST(SrOracle, ZeroMeanRejected) {
  const Matrix s = Matrix::Identity(3, 3);
  EXPECT_THROW(sr_oracle(Vector::Zero(3), moments_of(s, 30), Regularizer::identity(3), s), DegenerateEstimateError);
}

TEST(SrHatKnownMu, ZeroRegularizerIdentity) {
  Gen g(4);
  for (int k = 0; k < 20; ++k) {
    const int p = g.integer(2, 20);
    const Eigen::Index n = p + g.integer(1, 60);
    const Matrix sh = g.spd(p);
    const Vector mu = g.vector(p);
    const SampleMoments m = moments_of(sh, n);
    const SharpeEstimate e = sr_hat_known_mu(mu, m, Regularizer::zero(p));
    const double direct = (1.0 - m.c) * std::sqrt(mu.dot(sharpe_rmt::testing::lu_inverse(sh) * mu));
    EXPECT_NEAR(e.value, direct, 1e-10 * direct);
    EXPECT_NEAR(e.correction, 1.0 - m.c, 1e-12);
  }
}

TEST(SrHatKnownMu, LargeRegularizerLimit) {
  Gen g(5);
  const Matrix s = g.spd(5);
  const Vector mu = g.vector(5);
  const SharpeEstimate e = sr_hat_known_mu(mu, moments_of(s, 50), Regularizer::identity(5, 1e8));
  const double limit = mu.squaredNorm() / std::sqrt(mu.dot(s * mu));
  EXPECT_NEAR(e.value, limit, 1e-6 * limit);
}

TEST(SrHatKnownMu, CorrectionMatchesOracle) {
  Gen g(6);
  const Matrix sh = g.spd(9);
  const Matrix q = g.spd(9, 0.3);
  const SharpeEstimate e = sr_hat_known_mu(g.vector(9), moments_of(sh, 20), Regularizer::from_matrix(q, "q"));
  EXPECT_NEAR(e.correction, sharpe_rmt::testing::oracle_correction(sh, q, 9.0 / 20.0), 1e-12);
  EXPECT_EQ(e.mode, SharpeMode::hat_known_mu);
}

TEST(SrHatKnownMu, NonPositiveCorrectionRejected) {
  const Vector y = Vector::Ones(2);
  EXPECT_THROW(sr_hat_from_solution(y, y, Matrix::Identity(2, 2), 0.0), DegenerateEstimateError);
}

TEST(GHatIdentity, QuadraticFormsSplit) {
  Gen g(7);
  for (int k = 0; k < 50; ++k) {
    const int p = g.integer(2, 15);
    const Matrix sh = g.spd(p);
    const Matrix q = g.spd(p, 0.1);
    const Vector mu = g.vector(p);
    const RidgeSystem sys(sh, q);
    const Vector y = sys.solve(mu);
    const double lhs = y.dot(sh * y);
    const double rhs = mu.dot(y) - y.dot(q * y);
    EXPECT_NEAR(lhs, rhs, 1e-10 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(SrHatUnknownMu, ZeroRegularizerBias) {
  Gen g(8);
  const int p = 6;
  const Eigen::Index n = 24;
  const Matrix sh = g.spd(p);
  const SampleMoments m = moments_of(sh, n, MeanSource::sample, g.vector(p));
  const SharpeEstimate e = sr_hat_unknown_mu(m, Regularizer::zero(p));
  EXPECT_NEAR(e.bias, m.c / (1.0 - m.c), 1e-12);
  EXPECT_EQ(e.mode, SharpeMode::hat_unknown_mu);
}

TEST(SrHatUnknownMu, ZeroSignalPoint) {
  const int p = 4;
  const Eigen::Index n = 20;
  const Matrix sh = Matrix::Identity(p, p);
  // K = I/2, t = p/2 = 2, t/(n-t) = 1/9; need mu_hat' K mu_hat = 1/9
  Vector mu_hat = Vector::Zero(p);
  mu_hat(0) = std::sqrt(2.0 / 9.0);
  const SampleMoments m = moments_of(sh, n, MeanSource::sample, mu_hat);
  const SharpeEstimate e = sr_hat_unknown_mu(m, Regularizer::identity(p));
  EXPECT_NEAR(e.value, 0.0, 1e-14);
}

TEST(SrHatUnknownMu, RequiresSampleMean) {
  const SampleMoments m = moments_of(Matrix::Identity(3, 3), 30, MeanSource::known, Vector::Ones(3));
  EXPECT_THROW(sr_hat_unknown_mu(m, Regularizer::identity(3)), std::invalid_argument);
}

TEST(SrHatUnknownMu, TooFewObservationsRejected) {
  const SampleMoments m = moments_of(Matrix::Identity(3, 3), 3, MeanSource::sample, Vector::Ones(3));
  EXPECT_THROW(sr_hat_unknown_mu(m, Regularizer::zero(3)), DegenerateEstimateError);
}

TEST(SrOracleUnknownMu, Cases) {
  Gen g(9);
  const Matrix s = g.spd(5);
  const Vector mu = g.vector(5);
  const SampleMoments m = moments_of(s, 50, MeanSource::sample, mu);
  EXPECT_NEAR(sr_oracle_unknown_mu(m, Regularizer::zero(5), s, mu).value, sr_max(mu, s), 1e-12);

  const Matrix id = Matrix::Identity(2, 2);
  const Vector a = (Vector(2) << 1.0, 0.0).finished();
  const Vector b = (Vector(2) << 0.0, 1.0).finished();
  const SampleMoments mo = moments_of(id, 20, MeanSource::sample, a);
  EXPECT_EQ(sr_oracle_unknown_mu(mo, Regularizer::identity(2), id, b).value, 0.0);
}

TEST(SrGmv, IsotropicAndZeroRegularizer) {
  const int p = 9;
  const Matrix id = Matrix::Identity(p, p);
  const SampleMoments m = moments_of(id, 30);
  const SharpeEstimate o = sr_gmv(m, Regularizer::zero(p), &id);
  EXPECT_NEAR(o.value, 3.0, 1e-14);
  EXPECT_EQ(o.mode, SharpeMode::gmv_oracle);

  Gen g(10);
  const Matrix sh = g.spd(p);
  const SampleMoments m2 = moments_of(sh, 30);
  const SharpeEstimate h = sr_gmv(m2, Regularizer::zero(p));
  const Vector ones = Vector::Ones(p);
  EXPECT_NEAR(h.value, (1.0 - m2.c) * std::sqrt(ones.dot(sharpe_rmt::testing::lu_inverse(sh) * ones)), 1e-10);
  EXPECT_EQ(h.mode, SharpeMode::gmv_hat);
}

TEST(SrGmv, OutOfSampleVarianceOfNormalizedWeights) {
  Gen g(11);
  const int p = 7;
  const Matrix sh = g.spd(p);
  const Matrix s = g.spd(p);
  const Matrix q = g.spd(p, 0.4);
  const SampleMoments m = moments_of(sh, 40);
  const PortfolioWeights w = gmv_weights(m, Regularizer::from_matrix(q, "q"));
  const Matrix k = sharpe_rmt::testing::lu_inverse(sh + q);
  const Vector ones = Vector::Ones(p);
  const double c1 = ones.dot(k * ones);
  const double expected = ones.dot(k * s * k * ones) / (c1 * c1);
  EXPECT_NEAR(w.w.dot(s * w.w), expected, 1e-12 * expected);
}

TEST(SrMax, Values) {
  Vector mu = Vector::Zero(5);
  mu(0) = 2.0;
  mu(3) = 1.0;
  EXPECT_NEAR(sr_max(mu, Matrix::Identity(5, 5)), 2.2360679774997896964, 1e-15);
  EXPECT_EQ(sr_max(Vector::Zero(3), Matrix::Identity(3, 3)), 0.0);
  EXPECT_THROW(sr_max(Vector::Ones(2), Matrix::Ones(2, 2)), SingularSystemError);
}

TEST(SrMax, DesignMeanHasUnitNorm) {
  DesignSpec spec;
  spec.p = 50;
  spec.q_grid = {1.0};
  spec.seed = 3;
  const Design d = build_design(spec);
  EXPECT_NEAR(d.mu.squaredNorm(), 1.0, 1e-14);
  const double direct = std::sqrt(d.mu.dot(sharpe_rmt::testing::lu_inverse(d.sigma) * d.mu));
  EXPECT_NEAR(sr_max(d.mu, d.sigma), direct, 1e-12);
}

TEST(SrLimit, Values) {
  EXPECT_NEAR(sr_limit_unknown(1.0, 1.0), 0.70710678118654752, 1e-15);
  EXPECT_NEAR(sr_limit_unknown(1.3, 1e-12), 1.3, 1e-9);
  EXPECT_EQ(sr_limit_unknown(0.0, 0.5), 0.0);
}

TEST(TStatistics, RankOneMatchesVectorEstimator) {
  Gen g(12);
  const int p = 6;
  const Matrix sh = g.spd(p);
  const Matrix s = g.spd(p);
  const Vector mu = g.vector(p);
  const SampleMoments m = moments_of(sh, 30);
  const Regularizer reg = Regularizer::identity(p, 0.8);
  const TStatistics t = t_statistics(mu * mu.transpose(), m, reg, &s);
  const SharpeEstimate h = sr_hat_known_mu(mu, m, reg);
  const SharpeEstimate o = sr_oracle(mu, m, reg, s);
  EXPECT_NEAR(t.t1 / std::sqrt(t.t2_hat), h.value, 1e-10);
  EXPECT_NEAR(t.t1 / std::sqrt(t.t2), o.value, 1e-10);
  EXPECT_NEAR(sr_hat_general(mu * mu.transpose(), m, reg), h.value, 1e-10);
  EXPECT_TRUE(std::isnan(t_statistics(mu * mu.transpose(), m, reg).t2));
}

TEST(TStatistics, RejectsNonPsdDirection) {
  Matrix a = Matrix::Identity(3, 3);
  a(2, 2) = -1.0;
  EXPECT_THROW(t_statistics(a, moments_of(Matrix::Identity(3, 3), 30), Regularizer::identity(3)),
               std::invalid_argument);
}
