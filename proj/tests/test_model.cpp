#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "dematel/model.hpp"

#include "test_support.hpp"

using namespace dematel;

namespace {

ExpertResponse make_response(std::size_t n, int fill = 1) {
  std::vector<int> scores(n * n, fill);
  for (std::size_t i = 0; i < n; ++i) scores[i * n + i] = 0;
  return ExpertResponse("E", n, std::move(scores));
}

}  // namespace

TEST_CASE("criteria set requires at least two unique codes") {
  CHECK_THROWS_AS(CriteriaSet(std::vector<Criterion>{{"C1", "only one"}}),
                  DimensionMismatchError);
  CHECK_THROWS_AS(CriteriaSet(std::vector<Criterion>{{"C1", "a"}, {"C1", "b"}}),
                  DuplicateCodeError);

  CriteriaSet cs({{"C1", "a"}, {"C2", "b"}});
  CHECK(cs.size() == 2);
  CHECK(cs.index_of("C2") == 1);
  CHECK(!cs.index_of("C9").has_value());
}

TEST_CASE("expert response grid must match its declared size") {
  CHECK_THROWS_AS(ExpertResponse("E", 3, std::vector<int>(8, 0)), DimensionMismatchError);
  ExpertResponse r("E", 2, {0, 3, 1, 0});
  CHECK(r.score(0, 1) == 3);
  CHECK(r.with_score(0, 1, 4).score(0, 1) == 4);
  CHECK(r.score(0, 1) == 3);  // with_score copies
}

TEST_CASE("validation accepts an in-scale zero-diagonal response and is idempotent") {
  auto cs = test_support::make_criteria(4);
  ExpertResponse r = make_response(4, 3);
  ExpertResponse once = validate_expert_response(r, cs);
  CHECK(once == r);
  CHECK(validate_expert_response(once, cs) == r);
}

TEST_CASE("validation rejects wrong dimension, off-scale scores, nonzero diagonal") {
  auto cs = test_support::make_criteria(4);

  CHECK_THROWS_AS(validate_expert_response(make_response(3), cs), DimensionMismatchError);

  CHECK_THROWS_AS(validate_expert_response(make_response(4).with_score(1, 2, 5), cs),
                  OutOfScaleError);
  CHECK_THROWS_AS(validate_expert_response(make_response(4).with_score(1, 2, -1), cs),
                  OutOfScaleError);
  try {
    validate_expert_response(make_response(4).with_score(1, 2, 5), cs);
  } catch (const OutOfScaleError& e) {
    CHECK(e.row == 1);
    CHECK(e.col == 2);
    CHECK(e.value == 5);
  }

  CHECK_THROWS_AS(validate_expert_response(make_response(4).with_score(2, 2, 1), cs),
                  NonzeroDiagonalError);
  try {
    validate_expert_response(make_response(4).with_score(2, 2, 1), cs);
  } catch (const NonzeroDiagonalError& e) {
    CHECK(e.index == 2);
  }
}

TEST_CASE("validation flags the violation wherever it lands on a random grid") {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 50; ++iter) {
    std::size_t n = 2 + rng() % 11;
    auto cs = test_support::make_criteria(n);
    auto panel = test_support::make_random_panel(rng, n, 1);
    CHECK_NOTHROW(validate_expert_response(panel[0], cs));

    std::size_t i = rng() % n;
    std::size_t j = rng() % n;
    if (i == j) {
      CHECK_THROWS_AS(validate_expert_response(panel[0].with_score(i, i, 2), cs),
                      NonzeroDiagonalError);
    } else {
      int bad = rng() % 2 == 0 ? 5 + static_cast<int>(rng() % 5) : -1 - static_cast<int>(rng() % 5);
      CHECK_THROWS_AS(validate_expert_response(panel[0].with_score(i, j, bad), cs),
                      OutOfScaleError);
    }
  }
}

TEST_CASE("direct-relation matrix enforces range and zero diagonal") {
  DenseMatrix ok(2, 2, {0.0, 2.9, 3.6, 0.0});
  CHECK_NOTHROW(DirectRelationMatrix{ok});

  DenseMatrix high(2, 2, {0.0, 4.5, 1.0, 0.0});
  CHECK_THROWS_AS(DirectRelationMatrix{high}, OutOfRangeError);

  DenseMatrix negative(2, 2, {0.0, -0.1, 1.0, 0.0});
  CHECK_THROWS_AS(DirectRelationMatrix{negative}, OutOfRangeError);

  DenseMatrix diag(2, 2, {0.5, 1.0, 1.0, 0.0});
  CHECK_THROWS_AS(DirectRelationMatrix{diag}, NonzeroDiagonalError);

  CHECK_THROWS_AS(DirectRelationMatrix(DenseMatrix(2, 3)), DimensionMismatchError);
}

TEST_CASE("normalized matrix enforces unit range, zero diagonal, positive divisor") {
  DenseMatrix ok(2, 2, {0.0, 0.3, 0.9, 0.0});
  CHECK_NOTHROW(NormalizedMatrix(ok, 10.0));
  CHECK(NormalizedMatrix(ok, 10.0).s() == 10.0);

  CHECK_THROWS_AS(NormalizedMatrix(ok, 0.0), DegenerateMatrixError);
  CHECK_THROWS_AS(NormalizedMatrix(ok, -1.0), DegenerateMatrixError);

  DenseMatrix high(2, 2, {0.0, 1.2, 0.9, 0.0});
  CHECK_THROWS_AS(NormalizedMatrix(high, 10.0), OutOfRangeError);

  DenseMatrix diag(2, 2, {0.1, 0.3, 0.9, 0.0});
  CHECK_THROWS_AS(NormalizedMatrix(diag, 10.0), NonzeroDiagonalError);
}

TEST_CASE("group assignment: negative relation is effect, zero and positive are cause") {
  CHECK(group_of(0.5) == Group::Cause);
  CHECK(group_of(0.0) == Group::Cause);
  CHECK(group_of(-1e-300) == Group::Effect);
  CHECK(group_of(-2.0) == Group::Effect);
}

TEST_CASE("enum names used by serializers") {
  CHECK(std::string(to_string(Group::Cause)) == "cause");
  CHECK(std::string(to_string(Group::Effect)) == "effect");
  CHECK(std::string(to_string(Strength::Strong)) == "strong");
  CHECK(std::string(to_string(Strength::Moderate)) == "moderate");
  CHECK(std::string(to_string(Strength::Weak)) == "weak");
}
