#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dematel/model.hpp"

namespace dematel {

// Normalization divisor choice. RowColMax (the default) divides by the larger
// of the maximum row sum and maximum column sum; RowMax uses rows only.
enum class NormMode : std::uint8_t { RowColMax, RowMax };

struct PipelineOptions {
  NormMode norm_mode = NormMode::RowColMax;
  std::optional<double> alpha_override;                     // cut threshold override, >= 0
  std::optional<std::pair<double, double>> strength_bounds; // (moderate, strong) lower bounds
};

// Arithmetic mean of the panel's integer scores, cell by cell. Sums are exact
// integers, so each entry is (sum of P scores)/P to the last bit.
DirectRelationMatrix aggregate_responses(std::span<const ExpertResponse> responses,
                                         const CriteriaSet& cs);

NormalizedMatrix normalize_drm(const DirectRelationMatrix& drm,
                               NormMode mode = NormMode::RowColMax);

// T = X(I - X)^-1. Raises ConvergenceFailureError when I - X is singular or
// the result is not entrywise >= X (for nonnegative X that is exactly the
// spectral-radius >= 1 case, where the power series diverges).
TotalRelationMatrix compute_trm(const NormalizedMatrix& nrm);

// Grand mean of all n^2 total-relation entries.
double compute_threshold(const TotalRelationMatrix& trm);

std::vector<ProminenceRecord> compute_prominence(const TotalRelationMatrix& trm,
                                                 const CriteriaSet& cs);

// Entries below alpha become zero; entries >= alpha survive unchanged,
// diagonal included.
DenseMatrix apply_alpha_cut(const TotalRelationMatrix& trm, double alpha);

// One edge per surviving cell. Strength defaults to tertile classes over the
// surviving weights; ties at a boundary take the stronger class. Explicit
// bounds (moderate, strong) override the tertiles.
std::vector<Edge> build_digraph(const DenseMatrix& alpha_cut, const CriteriaSet& cs,
                                std::optional<std::pair<double, double>> strength_bounds = {});

AnalysisResult run_pipeline(std::span<const ExpertResponse> responses, const CriteriaSet& cs,
                            const PipelineOptions& options = {});
AnalysisResult run_pipeline(const DirectRelationMatrix& drm, const CriteriaSet& cs,
                            const PipelineOptions& options = {});

}  // namespace dematel
