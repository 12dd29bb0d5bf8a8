#include <doctest.h>

#include "fairpca/constraint.hpp"
#include "fairpca/errors.hpp"
#include "helpers.hpp"

using namespace fairpca;

namespace {

Dataset toy(const std::vector<std::vector<int>>& attrs, Index n) {
  Dataset d;
  d.X = testutil::random_matrix(3, n, 77);
  d.attributes = attrs;
  ensure_names(d);
  return d;
}

}  // namespace

TEST_CASE("binary attribute gives one centered column") {
  const Dataset d = toy({{0, 0, 1, 1}}, 4);
  const ConstraintMatrix cm = build_constraint_matrix(d, {0});
  REQUIRE(cm.Z.cols() == 1);
  REQUIRE(cm.Z.rows() == 4);
  CHECK(cm.Z(0, 0) == doctest::Approx(-0.5));
  CHECK(cm.Z(1, 0) == doctest::Approx(-0.5));
  CHECK(cm.Z(2, 0) == doctest::Approx(0.5));
  CHECK(cm.Z(3, 0) == doctest::Approx(0.5));
  CHECK(std::abs(cm.Z.col(0).sum()) < 1e-14);
}

TEST_CASE("three groups give three centered one-hot columns") {
  const Dataset d = toy({{0, 1, 2, 0, 1, 2}}, 6);
  const ConstraintMatrix cm = build_constraint_matrix(d, {0});
  REQUIRE(cm.Z.cols() == 3);
  for (Index j = 0; j < 3; ++j) CHECK(std::abs(cm.Z.col(j).sum()) < 1e-14);
  // Uncentered entries are one-hot: the centered column j is 1{g=j} - 1/3.
  CHECK(cm.Z(0, 0) == doctest::Approx(2.0 / 3.0));
  CHECK(cm.Z(1, 0) == doctest::Approx(-1.0 / 3.0));
  // Columns sum to the zero vector across j (one-hot rows sum to 1).
  CHECK((cm.Z.rowwise().sum()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("group codes need not be contiguous") {
  const Dataset d = toy({{5, 5, 9, 9}}, 4);
  const ConstraintMatrix cm = build_constraint_matrix(d, {0});
  REQUIRE(cm.Z.cols() == 1);
  CHECK(cm.Z(2, 0) == doctest::Approx(0.5));  // higher code becomes group 1
}

TEST_CASE("two attributes stack their columns") {
  const Dataset d = toy({{0, 0, 1, 1}, {0, 1, 0, 1}}, 4);
  const ConstraintMatrix cm = build_constraint_matrix(d, {0, 1});
  CHECK(cm.Z.cols() == 2);
  CHECK(cm.omitted_attributes.empty());
}

TEST_CASE("degenerate attribute is omitted with a warning") {
  const Dataset d = toy({{0, 0, 0, 0}, {0, 1, 0, 1}}, 4);
  const ConstraintMatrix cm = build_constraint_matrix(d, {0, 1});
  CHECK(cm.Z.cols() == 1);
  REQUIRE(cm.omitted_attributes.size() == 1);
  CHECK(cm.omitted_attributes[0] == 0);
  CHECK(cm.warnings.size() == 1);
}

TEST_CASE("all attributes degenerate yields an empty matrix") {
  const Dataset d = toy({{3, 3, 3, 3}}, 4);
  const ConstraintMatrix cm = build_constraint_matrix(d, {0});
  CHECK(cm.Z.cols() == 0);
  CHECK(cm.Z.rows() == 4);
}

TEST_CASE("binary attribute without collapsing spans the same line") {
  const Dataset d = toy({{0, 1, 0, 1, 1}}, 5);
  const ConstraintMatrix one = build_constraint_matrix(d, {0}, true);
  const ConstraintMatrix two = build_constraint_matrix(d, {0}, false);
  REQUIRE(one.Z.cols() == 1);
  REQUIRE(two.Z.cols() == 2);
  // Both columns of the expanded variant are multiples of the single one.
  for (Index j = 0; j < 2; ++j) {
    const Vector a = two.Z.col(j);
    const Vector b = one.Z.col(0);
    const double scale = a.dot(b) / b.squaredNorm();
    CHECK((a - scale * b).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("constraint matrix rejects bad attribute indices") {
  const Dataset d = toy({{0, 1, 0, 1}}, 4);
  CHECK_THROWS_AS(build_constraint_matrix(d, {1}), InvalidInput);
  CHECK_THROWS_AS(build_constraint_matrix(d, {-1}), InvalidInput);
}
