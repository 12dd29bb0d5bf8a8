#include <doctest.h>

#include <cmath>

#include "fairpca/errors.hpp"
#include "fairpca/logreg.hpp"
#include "fairpca/rng.hpp"
#include "helpers.hpp"

using namespace fairpca;
using testutil::random_matrix;

namespace {

struct Problem {
  Matrix X;
  std::vector<int> y;
};

Problem separable_problem(Index d, Index n, std::uint64_t seed) {
  Rng rng(seed);
  Problem p;
  p.X.resize(d, n);
  p.y.resize(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const int label = i % 2;
    for (Index r = 0; r < d; ++r) p.X(r, i) = rng.gauss();
    p.X(0, i) += label == 1 ? 2.0 : -2.0;
    p.y[static_cast<size_t>(i)] = label;
  }
  return p;
}

}  // namespace

TEST_CASE("gradient matches central finite differences") {
  const Problem p = separable_problem(4, 30, 91);
  const double reg = 0.01;
  Rng rng(92);
  for (int trial = 0; trial < 5; ++trial) {
    Vector w(4);
    for (Index i = 0; i < 4; ++i) w(i) = rng.gauss();
    const double b = rng.gauss();

    Vector gw;
    double gb;
    logreg_gradient(p.X, p.y, reg, w, b, gw, gb);

    const double h = 1e-6;
    for (Index i = 0; i < 4; ++i) {
      Vector wp = w, wm = w;
      wp(i) += h;
      wm(i) -= h;
      const double fd = (logreg_objective(p.X, p.y, reg, wp, b) -
                         logreg_objective(p.X, p.y, reg, wm, b)) /
                        (2.0 * h);
      CHECK(gw(i) == doctest::Approx(fd).epsilon(1e-5));
    }
    const double fdb = (logreg_objective(p.X, p.y, reg, w, b + h) -
                        logreg_objective(p.X, p.y, reg, w, b - h)) /
                       (2.0 * h);
    CHECK(gb == doctest::Approx(fdb).epsilon(1e-5));
  }
}

TEST_CASE("training reaches a small gradient and separates the data") {
  const Problem p = separable_problem(3, 100, 93);
  const LinearClassifier clf = train_logreg(p.X, p.y, 0.01);
  Vector gw;
  double gb;
  logreg_gradient(p.X, p.y, 0.01, clf.weights, clf.bias, gw, gb);
  const double gnorm = std::sqrt(gw.squaredNorm() + gb * gb);
  CHECK(gnorm <= 1e-6);
  CHECK(accuracy(predict(clf, p.X), p.y) > 0.95);
}

TEST_CASE("loss history is non-increasing") {
  const Problem p = separable_problem(5, 60, 94);
  const LinearClassifier clf = train_logreg(p.X, p.y, 0.01);
  REQUIRE(clf.loss_history.size() > 1);
  for (size_t i = 1; i < clf.loss_history.size(); ++i)
    CHECK(clf.loss_history[i] <= clf.loss_history[i - 1] + 1e-15);
}

TEST_CASE("perturbed starts converge to the same optimum") {
  const Problem p = separable_problem(3, 50, 95);
  const double reg = 0.05;
  const LinearClassifier base = train_logreg(p.X, p.y, reg);
  Rng rng(96);
  for (int trial = 0; trial < 3; ++trial) {
    Vector w0(3);
    for (Index i = 0; i < 3; ++i) w0(i) = 1e-3 * rng.gauss();
    const LinearClassifier other =
        train_logreg_from(p.X, p.y, reg, w0, 1e-3 * rng.gauss());
    CHECK((other.weights - base.weights).cwiseAbs().maxCoeff() < 1e-4);
    CHECK(std::abs(other.bias - base.bias) < 1e-4);
  }
}

TEST_CASE("regularization shrinks the weights") {
  const Problem p = separable_problem(3, 80, 97);
  const LinearClassifier weak = train_logreg(p.X, p.y, 1e-4);
  const LinearClassifier strong = train_logreg(p.X, p.y, 10.0);
  CHECK(strong.weights.norm() < weak.weights.norm());
}

TEST_CASE("bias is unregularized") {
  // With constant features, the optimum matches the base rate through the
  // bias alone no matter how hard the weights are penalized.
  Matrix X = Matrix::Zero(2, 10);
  std::vector<int> y{1, 1, 1, 1, 1, 1, 1, 0, 0, 0};
  const LinearClassifier clf = train_logreg(X, y, 100.0);
  CHECK(clf.weights.cwiseAbs().maxCoeff() < 1e-8);
  // sigmoid(bias) = 0.7 at the optimum.
  CHECK(1.0 / (1.0 + std::exp(-clf.bias)) == doctest::Approx(0.7).epsilon(1e-4));
}

TEST_CASE("constant embedding predicts the majority class") {
  Matrix X = Matrix::Zero(3, 9);
  std::vector<int> y{1, 1, 1, 1, 1, 0, 0, 0, 0};
  const LinearClassifier clf = train_logreg(X, y, 0.01);
  const std::vector<int> pred = predict(clf, X);
  for (int v : pred) CHECK(v == 1);
  CHECK(accuracy(pred, y) == doctest::Approx(5.0 / 9.0));
}

TEST_CASE("single-class targets are rejected") {
  Matrix X = random_matrix(2, 6, 98);
  std::vector<int> y(6, 1);
  CHECK_THROWS_AS(train_logreg(X, y, 0.01), DegenerateInput);
  y.assign(6, 0);
  CHECK_THROWS_AS(train_logreg(X, y, 0.01), DegenerateInput);
}

TEST_CASE("input validation") {
  Matrix X = random_matrix(2, 4, 99);
  std::vector<int> y{0, 1, 0, 1};
  CHECK_THROWS_AS(train_logreg(X, y, 0.0), InvalidInput);
  CHECK_THROWS_AS(train_logreg(X, {0, 1}, 0.01), DimensionError);
  std::vector<int> bad{0, 1, 2, 1};
  CHECK_THROWS_AS(train_logreg(X, bad, 0.01), InvalidInput);
}

TEST_CASE("training is bitwise deterministic") {
  const Problem p = separable_problem(4, 40, 100);
  const LinearClassifier a = train_logreg(p.X, p.y, 0.01);
  const LinearClassifier b = train_logreg(p.X, p.y, 0.01);
  CHECK((a.weights.array() == b.weights.array()).all());
  CHECK(a.bias == b.bias);
}
