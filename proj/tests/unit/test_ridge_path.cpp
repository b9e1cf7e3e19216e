#include <gtest/gtest.h>

#include "generators.hpp"
#include "sharpe_rmt/errors.hpp"
#include "sharpe_rmt/linalg.hpp"
#include "sharpe_rmt/ridge_path.hpp"

using namespace sharpe_rmt;
using sharpe_rmt::testing::Gen;

TEST(RidgePath, MatchesGenericSolveForDenseAndDiagonalBases) {
  Gen g(1);
  for (int k = 0; k < 12; ++k) {
    const int p = g.integer(2, 25);
    const Matrix sh = g.spd(p);
    const Matrix offset = k % 3 == 0 ? Matrix(Matrix::Zero(p, p)) : g.spd(p, 0.05);
    const Matrix base = k % 2 == 0 ? g.diag_positive(p, 0.5, 3.0) : g.spd(p, 0.3);
    const RidgePath path(sh, offset, base);
    const Vector b = g.vector(p);
    const double c = g.uniform(0.1, 0.9);
    for (double q : {0.2, 1.0, 4.5}) {
      const RidgeSystem sys(sh, offset + q * base);
      const Vector direct = sys.solve(b);
      EXPECT_LT((path.solve(q, b) - direct).cwiseAbs().maxCoeff(), 1e-10 * std::max(1.0, direct.norm()));
      EXPECT_NEAR(path.trace_sigma_hat(q), sys.trace_sigma_hat(), 1e-10 * p);
      EXPECT_NEAR(path.correction(q, c), sys.correction(c), 1e-12);
    }
  }
}

TEST(RidgePath, SingularSampleCovarianceIsFineWithPositiveBase) {
  Gen g(2);
  const Matrix sh = g.psd_rank(10, 4);
  const RidgePath path(sh, Matrix::Zero(10, 10), Matrix::Identity(10, 10));
  const Vector b = g.vector(10);
  const RidgeSystem sys(sh, 0.7 * Matrix::Identity(10, 10));
  EXPECT_LT((path.solve(0.7, b) - sys.solve(b)).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_THROW(path.check(0.0), SingularSystemError);
  EXPECT_NO_THROW(path.check(0.7));
}

TEST(RidgePath, NonPositiveBaseRejected) {
  const Matrix base = Matrix::Zero(3, 3);
  EXPECT_THROW(RidgePath(Matrix::Identity(3, 3), Matrix::Zero(3, 3), base), SingularSystemError);
}
