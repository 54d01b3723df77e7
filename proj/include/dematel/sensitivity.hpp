#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dematel/engine.hpp"
#include "dematel/model.hpp"

namespace dematel {

struct PerturbationSpec {
  double flip_probability = 0.0;  // per-cell chance of moving, in [0, 1]
  int magnitude = 1;              // step size, clamped into the 0-4 scale
  std::uint64_t seed = 0;
  std::size_t trials = 1;
};

struct StabilityReport {
  std::vector<std::string> codes;         // criteria order of the analysis
  std::vector<double> cause_probability;  // per criterion, over successful trials
  std::size_t trials_run = 0;
  std::size_t degenerate_trials = 0;      // trials whose pipeline errored
};

// Moves each off-diagonal cell by +/-magnitude with probability
// flip_probability, clamped to the 0-4 scale; the diagonal is untouched.
// Deterministic: draws are keyed on (seed, trial_index, expert_id, row, col),
// so the result is independent of evaluation order.
ExpertResponse perturb_response(const ExpertResponse& resp, const PerturbationSpec& spec,
                                std::size_t trial_index);

// Runs the full pipeline on `trials` perturbed panels and reports, per
// criterion, the fraction of successful trials that put it in the Cause
// group. Degenerate trials are counted separately, never retried, and do not
// enter the denominator. The report is bitwise identical for a given
// (panel, spec) regardless of thread count.
StabilityReport monte_carlo_stability(std::span<const ExpertResponse> responses,
                                      const CriteriaSet& cs, const PerturbationSpec& spec,
                                      const PipelineOptions& options = {},
                                      unsigned threads = 0);

}  // namespace dematel
