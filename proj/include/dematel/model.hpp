#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dematel/errors.hpp"
#include "dematel/matrix.hpp"

namespace dematel {

// Influence scores run 0 (no influence) to 4 (very high influence). The
// numeric codes are authoritative; scale labels are display-only.
inline constexpr int kMinScore = 0;
inline constexpr int kMaxScore = 4;

struct Criterion {
  std::string code;
  std::string name;

  friend bool operator==(const Criterion&, const Criterion&) = default;
};

// Ordered list of criteria. The order is positional and fixed: row/column i
// of every matrix in an analysis refers to criterion i. Never sorted.
class CriteriaSet {
 public:
  explicit CriteriaSet(std::vector<Criterion> criteria);

  std::size_t size() const { return criteria_.size(); }
  const Criterion& at(std::size_t i) const { return criteria_[i]; }
  const std::vector<Criterion>& criteria() const { return criteria_; }

  std::optional<std::size_t> index_of(const std::string& code) const;

  friend bool operator==(const CriteriaSet&, const CriteriaSet&) = default;

 private:
  std::vector<Criterion> criteria_;
};

// One expert's n x n integer influence grid, row i = influence of criterion i
// on each column criterion. Diagonal is zero by construction wherever the
// response is built from per-cell input.
class ExpertResponse {
 public:
  ExpertResponse(std::string expert_id, std::size_t n, std::vector<int> scores);

  const std::string& expert_id() const { return expert_id_; }
  std::size_t size() const { return n_; }
  int score(std::size_t i, std::size_t j) const { return scores_[i * n_ + j]; }
  const std::vector<int>& scores() const { return scores_; }

  ExpertResponse with_score(std::size_t i, std::size_t j, int value) const;

  friend bool operator==(const ExpertResponse&, const ExpertResponse&) = default;

 private:
  std::string expert_id_;
  std::size_t n_ = 0;
  std::vector<int> scores_;
};

// The validation gate: checks dimension against the criteria set, every entry
// in {0..4}, and a zero diagonal. Returns the response unchanged; validating
// an already validated response is a no-op.
ExpertResponse validate_expert_response(ExpertResponse resp, const CriteriaSet& cs);

// Mean-aggregated influence matrix. Entries in [0, 4], diagonal exactly zero.
class DirectRelationMatrix {
 public:
  explicit DirectRelationMatrix(DenseMatrix values);

  std::size_t size() const { return values_.rows(); }
  const DenseMatrix& values() const { return values_; }

  friend bool operator==(const DirectRelationMatrix&, const DirectRelationMatrix&) = default;

 private:
  DenseMatrix values_;
};

// Direct-relation matrix scaled by the divisor s, entries in [0, 1] with a
// zero diagonal. Which marginal achieves s depends on the normalization mode.
class NormalizedMatrix {
 public:
  NormalizedMatrix(DenseMatrix values, double s);

  std::size_t size() const { return values_.rows(); }
  const DenseMatrix& values() const { return values_; }
  double s() const { return s_; }

  friend bool operator==(const NormalizedMatrix&, const NormalizedMatrix&) = default;

 private:
  DenseMatrix values_;
  double s_ = 0.0;
};

// X(I - X)^-1: direct plus all indirect influence, entrywise >= X >= 0.
class TotalRelationMatrix {
 public:
  explicit TotalRelationMatrix(DenseMatrix values);

  std::size_t size() const { return values_.rows(); }
  const DenseMatrix& values() const { return values_; }

  friend bool operator==(const TotalRelationMatrix&, const TotalRelationMatrix&) = default;

 private:
  DenseMatrix values_;
};

enum class Group : std::uint8_t { Cause, Effect };

// Effect iff relation < 0; a relation of exactly zero is Cause.
inline Group group_of(double relation) {
  return relation < 0.0 ? Group::Effect : Group::Cause;
}

struct ProminenceRecord {
  Criterion criterion;
  double d = 0.0;          // row sum of T: influence dispatched
  double r = 0.0;          // column sum of T: influence received
  double prominence = 0.0; // d + r
  double relation = 0.0;   // d - r
  Group group = Group::Cause;

  friend bool operator==(const ProminenceRecord&, const ProminenceRecord&) = default;
};

enum class Strength : std::uint8_t { Strong, Moderate, Weak };

struct Edge {
  Criterion from;
  Criterion to;
  double weight = 0.0;
  Strength strength = Strength::Weak;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct AnalysisResult {
  DirectRelationMatrix drm;
  NormalizedMatrix nrm;
  TotalRelationMatrix trm;
  double alpha = 0.0;          // grand mean of the total-relation entries
  double cut_threshold = 0.0;  // alpha, unless overridden
  DenseMatrix alpha_cut;       // T with entries below cut_threshold zeroed
  std::vector<ProminenceRecord> records;
  std::vector<Edge> edges;
};

const char* to_string(Group g);
const char* to_string(Strength s);

}  // namespace dematel
