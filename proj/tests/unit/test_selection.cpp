#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "generators.hpp"
#include "helpers.hpp"
#include "sharpe_rmt/errors.hpp"
#include "sharpe_rmt/selection.hpp"
#include "sharpe_rmt/sharpe.hpp"

using namespace sharpe_rmt;
using sharpe_rmt::testing::Gen;
using sharpe_rmt::testing::moments_of;

TEST(Selection, SingleCandidate) {
  const SampleMoments m = moments_of(Matrix::Identity(3, 3), 30);
  const CandidateSet set = CandidateSet::scaled_base({0.5}, Matrix::Identity(3, 3), "I");
  SelectionInputs in;
  in.mu = Vector::Ones(3);
  const SelectionResult r = select(m, set, SelectionCriterion::max_sr_known, in);
  EXPECT_EQ(r.chosen_index, 0u);
  EXPECT_EQ(r.chosen.label, "q=0.5*I");
  ASSERT_EQ(r.scores.size(), 1u);
  EXPECT_TRUE(r.scores[0].valid);
}

TEST(Selection, InvalidCandidateRecorded) {
  const SampleMoments m = moments_of(Vector::Ones(3) * Vector::Ones(3).transpose(), 30);
  Matrix corner = Matrix::Zero(3, 3);
  corner(2, 2) = 1.0;
  const Regularizer rank_deficient = Regularizer::from_matrix(corner, "corner");
  const CandidateSet set = CandidateSet::explicit_list({rank_deficient, Regularizer::identity(3)});
  const SelectionResult r = select(m, set, SelectionCriterion::max_inv_vol_gmv);
  EXPECT_FALSE(r.scores[0].valid);
  EXPECT_TRUE(std::isnan(r.scores[0].score));
  EXPECT_FALSE(r.scores[0].error.empty());
  EXPECT_EQ(r.chosen_index, 1u);
  const std::string csv = score_table_csv(r);
  EXPECT_NE(csv.find("label,score,valid,chosen\n"), std::string::npos);

  const CandidateSet bad = CandidateSet::explicit_list({rank_deficient});
  EXPECT_THROW(select(m, bad, SelectionCriterion::max_inv_vol_gmv), DegenerateEstimateError);
}

TEST(Selection, MatchesBruteForceArgmax) {
  Gen g(5);
  for (int k = 0; k < 20; ++k) {
    const int p = g.integer(3, 12);
    const SampleMoments m = moments_of(g.spd(p), 3 * p);
    const Vector mu = g.vector(p);
    std::vector<double> scales;
    for (int i = 0; i < 8; ++i) scales.push_back(g.uniform(0.01, 10.0));
    const CandidateSet set = CandidateSet::scaled_base(scales, g.diag_positive(p, 0.5, 2.0), "D");
    SelectionInputs in;
    in.mu = mu;
    const SelectionResult r = select(m, set, SelectionCriterion::max_sr_known, in);
    std::size_t best = 0;
    double best_v = -1e300;
    for (std::size_t i = 0; i < set.size(); ++i) {
      const double v = sr_hat_known_mu(mu, m, set.candidates[i]).value;
      if (v > best_v) {
        best_v = v;
        best = i;
      }
    }
    EXPECT_EQ(r.chosen_index, best);
  }
}

TEST(Selection, PermutationInvariantChoice) {
  Gen g(6);
  const int p = 8;
  const SampleMoments m = moments_of(g.spd(p), 30);
  std::vector<Regularizer> regs;
  for (int i = 0; i < 6; ++i) regs.push_back(Regularizer::from_matrix(g.spd(p, 0.2), "R" + std::to_string(i)));
  const SelectionResult a = select(m, CandidateSet::explicit_list(regs), SelectionCriterion::max_inv_vol_gmv);
  std::vector<Regularizer> shuffled(regs.rbegin(), regs.rend());
  std::swap(shuffled[0], shuffled[3]);
  const SelectionResult b = select(m, CandidateSet::explicit_list(shuffled), SelectionCriterion::max_inv_vol_gmv);
  EXPECT_EQ(a.chosen.label, b.chosen.label);
}

TEST(Selection, FrontierCriterionMinimizes) {
  Gen g(7);
  const int p = 6;
  const SampleMoments m = moments_of(g.spd(p), 30);
  SelectionInputs in;
  in.r = g.vector(p);
  in.mu0 = 0.5;
  const CandidateSet set = CandidateSet::scaled_base({0.1, 1.0, 10.0}, Matrix::Identity(p, p), "I");
  const SelectionResult r = select(m, set, SelectionCriterion::min_frontier_var, in);
  for (const CandidateScore& s : r.scores) EXPECT_LE(r.scores[r.chosen_index].score, s.score);
}

TEST(Selection, CandidateValidation) {
  EXPECT_THROW(CandidateSet::explicit_list({}).validate(), std::invalid_argument);
  EXPECT_THROW(CandidateSet::explicit_list({Regularizer::identity(2), Regularizer::identity(2)}).validate(),
               std::invalid_argument);
  EXPECT_THROW(CandidateSet::explicit_list({Regularizer::identity(2), Regularizer::identity(3, 2.0)}).validate(),
               std::invalid_argument);
  EXPECT_THROW(parse_criterion("best"), std::invalid_argument);
  const SampleMoments m = moments_of(Matrix::Identity(2, 2), 20);
  EXPECT_THROW(select(m, CandidateSet::scaled_base({1.0}, Matrix::Identity(2, 2), "I"),
                      SelectionCriterion::max_sr_known),
               std::invalid_argument);
}
