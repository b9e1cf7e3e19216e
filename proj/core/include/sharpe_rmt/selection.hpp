#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sharpe_rmt/moments.hpp"

namespace sharpe_rmt {

enum class CandidateKind { scaled_base, explicit_list };

struct CandidateSet {
  std::vector<Regularizer> candidates;
  CandidateKind kind = CandidateKind::explicit_list;

  // q * base for each q, sorted ascending
  static CandidateSet scaled_base(std::vector<double> scales, const Matrix& base, const std::string& base_name);
  static CandidateSet explicit_list(std::vector<Regularizer> candidates);
  void validate() const;
  std::size_t size() const { return candidates.size(); }
};

enum class SelectionCriterion { max_sr_known, max_sr_unknown, max_inv_vol_gmv, min_frontier_var };

const char* to_string(SelectionCriterion c);
SelectionCriterion parse_criterion(const std::string& s);

struct CandidateScore {
  std::string label;
  double score = 0.0;  // NaN when invalid
  bool valid = true;
  std::string error;
};

struct SelectionResult {
  std::size_t chosen_index = 0;
  Regularizer chosen;
  std::vector<CandidateScore> scores;
  SelectionCriterion criterion = SelectionCriterion::max_sr_known;
};

struct SelectionInputs {
  std::optional<Vector> mu;   // max_sr_known
  std::optional<Vector> r;    // min_frontier_var
  std::optional<double> mu0;  // min_frontier_var
};

// Candidates whose system is singular or whose estimate is degenerate score worst and are
// recorded as invalid. Throws DegenerateEstimateError if no candidate is valid.
SelectionResult select(const SampleMoments& moments, const CandidateSet& candidates, SelectionCriterion criterion,
                       const SelectionInputs& inputs = {});

// Estimated score of a single regularizer under `criterion` (higher is better except min_frontier_var).
double candidate_score(const SampleMoments& moments, const Regularizer& reg, SelectionCriterion criterion,
                       const SelectionInputs& inputs);

// label,score,valid,chosen
std::string score_table_csv(const SelectionResult& result);

}  // namespace sharpe_rmt
