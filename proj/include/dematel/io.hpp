#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dematel/model.hpp"
#include "dematel/sensitivity.hpp"

namespace dematel::io {

// Criteria manifest: one `code,name` line per criterion, ordered, no header.
CriteriaSet parse_criteria_manifest(std::string_view text);
std::string write_criteria_manifest(const CriteriaSet& cs);

// Long-format survey: header `expert_id,from,to,score`, one row per
// off-diagonal cell per expert; every off-diagonal cell must appear exactly
// once per expert. Diagonals are implicitly zero.
std::vector<ExpertResponse> parse_survey_csv(std::string_view text, const CriteriaSet& cs);
std::string write_survey_csv(std::span<const ExpertResponse> responses, const CriteriaSet& cs);

// n x n numeric CSV with a criterion-code header row and column, both in
// manifest order.
DirectRelationMatrix parse_drm_csv(std::string_view text, const CriteriaSet& cs);
std::string write_drm_csv(const DirectRelationMatrix& drm, const CriteriaSet& cs);

// Full analysis as one JSON document: criteria, s, the four matrices at full
// precision, alpha, per-criterion records and edges (full precision plus
// 4-decimal display strings).
std::string write_report_json(const AnalysisResult& result, const CriteriaSet& cs);

struct ReportDocument {
  CriteriaSet criteria;
  AnalysisResult result;
};
ReportDocument parse_report_json(std::string_view text);

// Influence digraph in DOT: one node per criterion labeled "code: name" and
// colored by group, edges styled solid/dashed/dotted for
// strong/moderate/weak with the weight as label.
std::string write_dot(std::span<const Edge> edges, const CriteriaSet& cs,
                      std::span<const ProminenceRecord> records);

// `code,prominence,relation,group` rows behind the cause-effect scatter plot.
// Prominence is written at 5 decimals and relation at 7, trailing zeros
// trimmed, matching the published table's display precision.
std::string write_scatter_csv(std::span<const ProminenceRecord> records);

// `code,cause_probability` rows of a stability report.
std::string write_stability_csv(const StabilityReport& report);

// 4-decimal display string, rounding half away from zero: the convention the
// published tables use.
std::string display_4dp(double value);

}  // namespace dematel::io
