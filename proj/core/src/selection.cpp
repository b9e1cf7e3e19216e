#include "sharpe_rmt/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <utility>

#include "sharpe_rmt/errors.hpp"
#include "sharpe_rmt/frontier.hpp"
#include "sharpe_rmt/sharpe.hpp"
#include "sharpe_rmt/table_io.hpp"

namespace sharpe_rmt {

CandidateSet CandidateSet::scaled_base(std::vector<double> scales, const Matrix& base, const std::string& base_name) {
  std::sort(scales.begin(), scales.end());
  CandidateSet out;
  out.kind = CandidateKind::scaled_base;
  for (double q : scales) out.candidates.push_back(Regularizer::scaled(q, base, base_name));
  out.validate();
  return out;
}

CandidateSet CandidateSet::explicit_list(std::vector<Regularizer> candidates) {
  CandidateSet out;
  out.kind = CandidateKind::explicit_list;
  out.candidates = std::move(candidates);
  out.validate();
  return out;
}

void CandidateSet::validate() const {
  if (candidates.empty()) throw std::invalid_argument("candidate set is empty");
  std::set<std::string> labels;
  for (const auto& c : candidates) {
    if (!labels.insert(c.label).second) throw std::invalid_argument("duplicate candidate label '" + c.label + "'");
    if (c.dim() != candidates.front().dim()) throw std::invalid_argument("candidates have different dimensions");
  }
  if (kind == CandidateKind::scaled_base) {
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      if (!(candidates[i].scale.value_or(0.0) > candidates[i - 1].scale.value_or(0.0))) {
        throw std::invalid_argument("scaled candidates must have strictly increasing q");
      }
    }
  }
}

const char* to_string(SelectionCriterion c) {
  switch (c) {
    case SelectionCriterion::max_sr_known: return "max_sr_known";
    case SelectionCriterion::max_sr_unknown: return "max_sr_unknown";
    case SelectionCriterion::max_inv_vol_gmv: return "max_inv_vol_gmv";
    case SelectionCriterion::min_frontier_var: return "min_frontier_var";
  }
  return "?";
}

SelectionCriterion parse_criterion(const std::string& s) {
  for (auto c : {SelectionCriterion::max_sr_known, SelectionCriterion::max_sr_unknown,
                 SelectionCriterion::max_inv_vol_gmv, SelectionCriterion::min_frontier_var}) {
    if (s == to_string(c)) return c;
  }
  throw std::invalid_argument("unknown selection criterion '" + s + "'");
}

double candidate_score(const SampleMoments& moments, const Regularizer& reg, SelectionCriterion criterion,
                       const SelectionInputs& inputs) {
  const RidgeSystem system(moments.sigma_hat, reg.matrix, default_solve_mode(reg));
  switch (criterion) {
    case SelectionCriterion::max_sr_known:
      return sr_hat_known_mu(*inputs.mu, moments, system).value;
    case SelectionCriterion::max_sr_unknown:
      return sr_hat_unknown_mu(moments, system).value;
    case SelectionCriterion::max_inv_vol_gmv:
      return sr_gmv(moments, system).value;
    case SelectionCriterion::min_frontier_var: {
      const FrontierCoefficients coeffs = frontier_coefficients(*inputs.r, moments, system);
      return frontier_point(coeffs, *inputs.mu0, moments).sigma_hat_sq;
    }
  }
  throw std::invalid_argument("unknown criterion");
}

SelectionResult select(const SampleMoments& moments, const CandidateSet& candidates, SelectionCriterion criterion,
                       const SelectionInputs& inputs) {
  candidates.validate();
  if (criterion == SelectionCriterion::max_sr_known && !inputs.mu) {
    throw std::invalid_argument("max_sr_known selection needs mu");
  }
  if (criterion == SelectionCriterion::min_frontier_var && (!inputs.r || !inputs.mu0)) {
    throw std::invalid_argument("min_frontier_var selection needs r and mu0");
  }
  const bool minimize = criterion == SelectionCriterion::min_frontier_var;

  SelectionResult out;
  out.criterion = criterion;
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Regularizer& reg = candidates.candidates[i];
    CandidateScore s;
    s.label = reg.label;
    try {
      s.score = candidate_score(moments, reg, criterion, inputs);
      if (!std::isfinite(s.score)) throw DegenerateEstimateError("non-finite score");
    } catch (const SingularSystemError& e) {
      s.valid = false;
      s.error = e.what();
    } catch (const DegenerateEstimateError& e) {
      s.valid = false;
      s.error = e.what();
    }
    if (!s.valid) s.score = std::numeric_limits<double>::quiet_NaN();
    if (s.valid) {
      const double cur = best ? out.scores[*best].score : 0.0;
      if (!best || (minimize ? s.score < cur : s.score > cur)) best = i;
    }
    out.scores.push_back(std::move(s));
  }
  if (!best) throw DegenerateEstimateError("select: every candidate is invalid");
  out.chosen_index = *best;
  out.chosen = candidates.candidates[*best];
  return out;
}

std::string score_table_csv(const SelectionResult& result) {
  CsvTable table({"label", "score", "valid", "chosen"});
  for (std::size_t i = 0; i < result.scores.size(); ++i) {
    const auto& s = result.scores[i];
    table.add({s.label, format_double(s.score), s.valid ? "1" : "0", i == result.chosen_index ? "1" : "0"});
  }
  return table.str();
}

}  // namespace sharpe_rmt
