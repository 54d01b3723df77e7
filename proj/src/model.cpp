#include "dematel/model.hpp"

#include <unordered_set>
#include <utility>

namespace dematel {

CriteriaSet::CriteriaSet(std::vector<Criterion> criteria) : criteria_(std::move(criteria)) {
  if (criteria_.size() < 2) {
    throw DimensionMismatchError("criteria set needs at least two entries", 2, criteria_.size());
  }
  std::unordered_set<std::string> seen;
  for (const auto& c : criteria_) {
    if (!seen.insert(c.code).second) throw DuplicateCodeError(c.code);
  }
}

std::optional<std::size_t> CriteriaSet::index_of(const std::string& code) const {
  for (std::size_t i = 0; i < criteria_.size(); ++i) {
    if (criteria_[i].code == code) return i;
  }
  return std::nullopt;
}

ExpertResponse::ExpertResponse(std::string expert_id, std::size_t n, std::vector<int> scores)
    : expert_id_(std::move(expert_id)), n_(n), scores_(std::move(scores)) {
  if (scores_.size() != n_ * n_) {
    throw DimensionMismatchError("expert response grid", n_ * n_, scores_.size());
  }
}

ExpertResponse ExpertResponse::with_score(std::size_t i, std::size_t j, int value) const {
  ExpertResponse copy = *this;
  copy.scores_[i * n_ + j] = value;
  return copy;
}

ExpertResponse validate_expert_response(ExpertResponse resp, const CriteriaSet& cs) {
  if (resp.size() != cs.size()) {
    throw DimensionMismatchError("expert response vs criteria set", cs.size(), resp.size());
  }
  const std::size_t n = resp.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      int v = resp.score(i, j);
      if (v < kMinScore || v > kMaxScore) throw OutOfScaleError(i, j, v);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (resp.score(i, i) != 0) throw NonzeroDiagonalError(i);
  }
  return resp;
}

namespace {

// Shared structural checks for the three matrix stages: square, at least 2x2.
void require_square(const DenseMatrix& m, const char* what) {
  if (!m.square()) throw DimensionMismatchError(what, m.rows(), m.cols());
  if (m.rows() < 2) throw DimensionMismatchError(what, 2, m.rows());
}

}  // namespace

DirectRelationMatrix::DirectRelationMatrix(DenseMatrix values) : values_(std::move(values)) {
  require_square(values_, "direct-relation matrix");
  const std::size_t n = values_.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double v = values_(i, j);
      if (!(v >= 0.0 && v <= static_cast<double>(kMaxScore))) throw OutOfRangeError(i, j, v);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (values_(i, i) != 0.0) throw NonzeroDiagonalError(i);
  }
}

NormalizedMatrix::NormalizedMatrix(DenseMatrix values, double s)
    : values_(std::move(values)), s_(s) {
  require_square(values_, "normalized matrix");
  if (!(s_ > 0.0)) throw DegenerateMatrixError();
  const std::size_t n = values_.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double v = values_(i, j);
      if (!(v >= 0.0 && v <= 1.0)) throw OutOfRangeError(i, j, v);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (values_(i, i) != 0.0) throw NonzeroDiagonalError(i);
  }
}

TotalRelationMatrix::TotalRelationMatrix(DenseMatrix values) : values_(std::move(values)) {
  require_square(values_, "total-relation matrix");
}

const char* to_string(Group g) { return g == Group::Cause ? "cause" : "effect"; }

const char* to_string(Strength s) {
  switch (s) {
    case Strength::Strong: return "strong";
    case Strength::Moderate: return "moderate";
    default: return "weak";
  }
}

}  // namespace dematel
