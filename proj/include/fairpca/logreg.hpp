#pragma once

#include <vector>

#include "fairpca/types.hpp"

namespace fairpca {

struct LinearClassifier {
  Vector weights;
  double bias = 0.0;
  double reg_strength = 0.0;
  // Objective value after each accepted optimizer step; non-increasing.
  std::vector<double> loss_history;
};

// Average logistic loss plus an L2 penalty on the weights only:
//   f(w, b) = (1/n) sum_i log(1 + exp(-t_i (w.x_i + b))) + reg * |w|^2
// with t_i = 2 y_i - 1. Matches the usual 1/(2*n*reg) inverse-regularization
// convention. features is k x n (columns are points).
double logreg_objective(const Matrix& features, const std::vector<int>& targets,
                        double reg, const Vector& w, double b);

// Gradient of logreg_objective, split into the weight part and the bias part.
void logreg_gradient(const Matrix& features, const std::vector<int>& targets,
                     double reg, const Vector& w, double b, Vector& grad_w,
                     double& grad_b);

// Deterministic L-BFGS with backtracking line search from the given start,
// run until the gradient norm drops below 1e-6 or 10000 iterations pass.
// Both classes must be present (DegenerateInput otherwise); reg must be > 0.
LinearClassifier train_logreg_from(const Matrix& features,
                                   const std::vector<int>& targets, double reg,
                                   const Vector& w0, double b0);

// Same, started from zero parameters.
LinearClassifier train_logreg(const Matrix& features,
                              const std::vector<int>& targets,
                              double reg = 0.01);

Vector decision_values(const LinearClassifier& clf, const Matrix& features);

// Predicted class per column: 1 where the decision value is > 0, else 0.
std::vector<int> predict(const LinearClassifier& clf, const Matrix& features);

double accuracy(const std::vector<int>& predictions, const std::vector<int>& truth);

}  // namespace fairpca
