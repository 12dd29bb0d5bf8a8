#include "fairpca/logreg.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "fairpca/errors.hpp"

namespace fairpca {

namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) {
  if (z > 0.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

// Logistic sigma(z), stable on both tails.
double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void check_inputs(const Matrix& features, const std::vector<int>& targets,
                  double reg) {
  if (static_cast<Index>(targets.size()) != features.cols())
    throw DimensionError("logreg: target count " + std::to_string(targets.size()) +
                         " does not match " + std::to_string(features.cols()) +
                         " columns");
  if (features.cols() == 0) throw InvalidInput("logreg: no datapoints");
  if (!features.allFinite()) throw InvalidInput("logreg: non-finite features");
  if (!(reg > 0.0)) throw InvalidInput("logreg: reg must be > 0");
  for (int y : targets)
    if (y != 0 && y != 1) throw InvalidInput("logreg: targets must be 0/1");
}

}  // namespace

double logreg_objective(const Matrix& features, const std::vector<int>& targets,
                        double reg, const Vector& w, double b) {
  const Index n = features.cols();
  const Vector scores = features.transpose() * w + Vector::Constant(n, b);
  double loss = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double t = targets[static_cast<size_t>(i)] == 1 ? 1.0 : -1.0;
    loss += softplus(-t * scores(i));
  }
  return loss / static_cast<double>(n) + reg * w.squaredNorm();
}

void logreg_gradient(const Matrix& features, const std::vector<int>& targets,
                     double reg, const Vector& w, double b, Vector& grad_w,
                     double& grad_b) {
  const Index n = features.cols();
  const Vector scores = features.transpose() * w + Vector::Constant(n, b);
  Vector coef(n);
  for (Index i = 0; i < n; ++i) {
    const double t = targets[static_cast<size_t>(i)] == 1 ? 1.0 : -1.0;
    coef(i) = -t * sigmoid(-t * scores(i));
  }
  grad_w = features * coef / static_cast<double>(n) + 2.0 * reg * w;
  grad_b = coef.sum() / static_cast<double>(n);
}

LinearClassifier train_logreg_from(const Matrix& features,
                                   const std::vector<int>& targets, double reg,
                                   const Vector& w0, double b0) {
  check_inputs(features, targets, reg);
  const bool has0 = std::find(targets.begin(), targets.end(), 0) != targets.end();
  const bool has1 = std::find(targets.begin(), targets.end(), 1) != targets.end();
  if (!has0 || !has1)
    throw DegenerateInput("logreg: both classes must be present");
  if (w0.size() != features.rows())
    throw DimensionError("logreg: start point has wrong dimension");

  const Index d = features.rows();
  const Index p = d + 1;  // bias appended as the last coordinate
  const int history = 10;
  const int max_iters = 10000;
  const double grad_tol = 1e-6;

  auto objective = [&](const Vector& theta) {
    return logreg_objective(features, targets, reg, theta.head(d), theta(d));
  };
  auto gradient = [&](const Vector& theta) {
    Vector gw;
    double gb;
    logreg_gradient(features, targets, reg, theta.head(d), theta(d), gw, gb);
    Vector g(p);
    g.head(d) = gw;
    g(d) = gb;
    return g;
  };

  Vector theta(p);
  theta.head(d) = w0;
  theta(d) = b0;

  LinearClassifier clf;
  clf.reg_strength = reg;

  double f = objective(theta);
  Vector g = gradient(theta);
  clf.loss_history.push_back(f);

  std::deque<Vector> s_hist, y_hist;
  std::deque<double> rho_hist;

  for (int iter = 0; iter < max_iters && g.norm() > grad_tol; ++iter) {
    // Two-loop recursion for the L-BFGS direction.
    Vector q = g;
    std::vector<double> alpha(s_hist.size());
    for (size_t i = s_hist.size(); i-- > 0;) {
      alpha[i] = rho_hist[i] * s_hist[i].dot(q);
      q -= alpha[i] * y_hist[i];
    }
    if (!s_hist.empty()) {
      const Vector& sl = s_hist.back();
      const Vector& yl = y_hist.back();
      q *= sl.dot(yl) / yl.dot(yl);
    }
    for (size_t i = 0; i < s_hist.size(); ++i) {
      const double beta = rho_hist[i] * y_hist[i].dot(q);
      q += (alpha[i] - beta) * s_hist[i];
    }
    Vector dir = -q;

    double gd = g.dot(dir);
    if (gd >= 0.0) {  // fall back to steepest descent if curvature went bad
      dir = -g;
      gd = -g.squaredNorm();
    }

    // Armijo backtracking.
    double step = 1.0;
    const double c1 = 1e-4;
    double f_new = f;
    Vector theta_new = theta;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      theta_new = theta + step * dir;
      f_new = objective(theta_new);
      if (std::isfinite(f_new) && f_new <= f + c1 * step * gd) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no progress possible at machine precision

    const Vector g_new = gradient(theta_new);
    const Vector s = theta_new - theta;
    const Vector y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-12) {
      s_hist.push_back(s);
      y_hist.push_back(y);
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > history) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    theta = theta_new;
    f = f_new;
    g = g_new;
    clf.loss_history.push_back(f);
  }

  clf.weights = theta.head(d);
  clf.bias = theta(d);
  return clf;
}

LinearClassifier train_logreg(const Matrix& features,
                              const std::vector<int>& targets, double reg) {
  check_inputs(features, targets, reg);
  return train_logreg_from(features, targets, reg,
                           Vector::Zero(features.rows()), 0.0);
}

Vector decision_values(const LinearClassifier& clf, const Matrix& features) {
  if (features.rows() != clf.weights.size())
    throw DimensionError("decision_values: feature dimension mismatch");
  return features.transpose() * clf.weights +
         Vector::Constant(features.cols(), clf.bias);
}

std::vector<int> predict(const LinearClassifier& clf, const Matrix& features) {
  const Vector s = decision_values(clf, features);
  std::vector<int> out(static_cast<size_t>(s.size()));
  for (Index i = 0; i < s.size(); ++i) out[static_cast<size_t>(i)] = s(i) > 0.0 ? 1 : 0;
  return out;
}

double accuracy(const std::vector<int>& predictions, const std::vector<int>& truth) {
  if (predictions.size() != truth.size() || predictions.empty())
    throw InvalidInput("accuracy: size mismatch or empty input");
  size_t hit = 0;
  for (size_t i = 0; i < truth.size(); ++i)
    if (predictions[i] == truth[i]) ++hit;
  return static_cast<double>(hit) / static_cast<double>(truth.size());
}

}  // namespace fairpca
