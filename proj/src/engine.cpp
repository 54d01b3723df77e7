#include "dematel/engine.hpp"

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "dematel/kernels.hpp"
#include "dematel/matrix.hpp"

namespace dematel {

namespace {
// Slack for the entrywise T >= X convergence check; absorbs inversion
// round-off without masking a genuinely divergent series.
constexpr double kDominanceSlack = 1e-12;
}  // namespace

DirectRelationMatrix aggregate_responses(std::span<const ExpertResponse> responses,
                                         const CriteriaSet& cs) {
  if (responses.empty()) throw EmptyPanelError();
  const std::size_t n = cs.size();
  for (const auto& resp : responses) validate_expert_response(resp, cs);

  // Integer cell sums divided once at the end: the mean of P in-scale scores
  // is exact to the last bit, so a parsed decimal like 2.9 matches bitwise.
  std::vector<std::int64_t> sums(n * n, 0);
  for (const auto& resp : responses) {
    const auto& scores = resp.scores();
    for (std::size_t k = 0; k < n * n; ++k) sums[k] += scores[k];
  }
  DenseMatrix values(n, n);
  const double panel = static_cast<double>(responses.size());
  for (std::size_t k = 0; k < n * n; ++k) {
    values.data()[k] = static_cast<double>(sums[k]) / panel;
  }
  return DirectRelationMatrix(std::move(values));
}

NormalizedMatrix normalize_drm(const DirectRelationMatrix& drm, NormMode mode) {
  const std::size_t n = drm.size();
  const DenseMatrix& v = drm.values();

  // Marginals accumulate sequentially on purpose: the divisor is a published
  // quantity and must not move with the SIMD backend's reduction order.
  double max_row = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double rs = 0.0;
    for (std::size_t j = 0; j < n; ++j) rs += v(i, j);
    max_row = std::max(max_row, rs);
  }
  double s = max_row;
  if (mode == NormMode::RowColMax) {
    for (std::size_t j = 0; j < n; ++j) {
      double col = 0.0;
      for (std::size_t i = 0; i < n; ++i) col += v(i, j);
      s = std::max(s, col);
    }
  }
  if (s == 0.0) throw DegenerateMatrixError();

  DenseMatrix scaled = v;
  kernels::active().divide(scaled.data().data(), s, n * n);
  return NormalizedMatrix(std::move(scaled), s);
}

TotalRelationMatrix compute_trm(const NormalizedMatrix& nrm) {
  const DenseMatrix& x = nrm.values();
  const std::size_t n = nrm.size();

  DenseMatrix i_minus_x = DenseMatrix::identity(n);
  kernels::active().axpy(i_minus_x.data().data(), -1.0, x.data().data(), n * n);

  DenseMatrix t;
  try {
    t = mat_mul(x, mat_invert(i_minus_x));
  } catch (const SingularMatrixError& e) {
    throw ConvergenceFailureError(e.what());
  }

  // For a nonnegative X, (I - X)^-1 is nonnegative exactly when the spectral
  // radius is below 1; the telltale of crossing that line is the "inverse"
  // dropping total influence below direct influence somewhere.
  for (std::size_t k = 0; k < n * n; ++k) {
    if (!(t.data()[k] >= x.data()[k] - kDominanceSlack)) {
      throw ConvergenceFailureError(
          "total influence fell below direct influence (spectral radius >= 1)");
    }
  }
  return TotalRelationMatrix(std::move(t));
}

double compute_threshold(const TotalRelationMatrix& trm) {
  // Grand mean as the sequential sum of per-row sums: the same partials that
  // define the D scores, so mean(T) == sum(D)/n^2 holds to the last bit.
  const auto& ops = kernels::active();
  const std::size_t n = trm.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += ops.sum(trm.values().row(i), n);
  return total / static_cast<double>(n * n);
}

std::vector<ProminenceRecord> compute_prominence(const TotalRelationMatrix& trm,
                                                 const CriteriaSet& cs) {
  if (trm.size() != cs.size()) {
    throw DimensionMismatchError("total-relation matrix vs criteria set", cs.size(), trm.size());
  }
  const auto& ops = kernels::active();
  const std::size_t n = trm.size();
  const DenseMatrix& t = trm.values();

  std::vector<double> received(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) ops.add(received.data(), t.row(i), n);

  std::vector<ProminenceRecord> records;
  records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ProminenceRecord rec;
    rec.criterion = cs.at(i);
    rec.d = ops.sum(t.row(i), n);
    rec.r = received[i];
    rec.prominence = rec.d + rec.r;
    rec.relation = rec.d - rec.r;
    rec.group = group_of(rec.relation);
    records.push_back(std::move(rec));
  }
  return records;
}

DenseMatrix apply_alpha_cut(const TotalRelationMatrix& trm, double alpha) {
  const std::size_t n = trm.size();
  DenseMatrix cut(n, n);
  kernels::active().cut_below(cut.data().data(), trm.values().data().data(), alpha, n * n);
  return cut;
}

std::vector<Edge> build_digraph(const DenseMatrix& alpha_cut, const CriteriaSet& cs,
                                std::optional<std::pair<double, double>> strength_bounds) {
  if (!alpha_cut.square() || alpha_cut.rows() != cs.size()) {
    throw DimensionMismatchError("alpha-cut matrix vs criteria set", cs.size(), alpha_cut.rows());
  }
  const std::size_t n = cs.size();

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (double w = alpha_cut(i, j); w != 0.0) {
        edges.push_back({cs.at(i), cs.at(j), w, Strength::Weak});
      }
    }
  }
  if (edges.empty()) return edges;

  double moderate_from = 0.0;
  double strong_from = 0.0;
  if (strength_bounds) {
    moderate_from = strength_bounds->first;
    strong_from = strength_bounds->second;
  } else {
    // Tertiles of the surviving weights; a weight sitting exactly on a
    // boundary takes the stronger class.
    std::vector<double> sorted;
    sorted.reserve(edges.size());
    for (const auto& e : edges) sorted.push_back(e.weight);
    std::sort(sorted.begin(), sorted.end());
    moderate_from = sorted[sorted.size() / 3];
    strong_from = sorted[2 * sorted.size() / 3];
  }
  for (auto& e : edges) {
    e.strength = e.weight >= strong_from   ? Strength::Strong
                 : e.weight >= moderate_from ? Strength::Moderate
                                             : Strength::Weak;
  }
  return edges;
}

AnalysisResult run_pipeline(const DirectRelationMatrix& drm, const CriteriaSet& cs,
                            const PipelineOptions& options) {
  if (drm.size() != cs.size()) {
    throw DimensionMismatchError("direct-relation matrix vs criteria set", cs.size(), drm.size());
  }
  NormalizedMatrix nrm = normalize_drm(drm, options.norm_mode);
  TotalRelationMatrix trm = compute_trm(nrm);
  double alpha = compute_threshold(trm);
  double cut_threshold = options.alpha_override.value_or(alpha);
  DenseMatrix alpha_cut = apply_alpha_cut(trm, cut_threshold);
  std::vector<ProminenceRecord> records = compute_prominence(trm, cs);
  std::vector<Edge> edges = build_digraph(alpha_cut, cs, options.strength_bounds);
  return AnalysisResult{drm,
                        std::move(nrm),
                        std::move(trm),
                        alpha,
                        cut_threshold,
                        std::move(alpha_cut),
                        std::move(records),
                        std::move(edges)};
}

AnalysisResult run_pipeline(std::span<const ExpertResponse> responses, const CriteriaSet& cs,
                            const PipelineOptions& options) {
  return run_pipeline(aggregate_responses(responses, cs), cs, options);
}

}  // namespace dematel
