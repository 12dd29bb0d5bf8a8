#pragma once

#include <optional>
#include <vector>

#include "fairpca/dataset.hpp"
#include "fairpca/types.hpp"

namespace fairpca {

enum class Method { standard, fair, fair_s };

struct FitOptions {
  bool center = false;                  // subtract the training mean first
  std::vector<int> attributes;          // protected attributes constrained
  bool eo_mode = false;                 // fit on the positive-label subset
  bool eo_constraint_only = false;      // with eo_mode: constraint from the
                                        // positives, objective over all points
  double fair_s_fraction = 1.0;         // f in (0, 1] for Method::fair_s
  Index fair_s_l = 0;                   // l actually used, filled by the fit
};

struct ProjectionModel {
  Matrix U;  // d x k, orthonormal columns
  Method method = Method::standard;
  Index k = 0;
  FitOptions options;
  std::optional<Vector> train_mean;  // present iff options.center

  Index dim() const { return U.rows(); }
};

// Plain PCA: top-k eigenvectors of X X^T (optionally after centering).
ProjectionModel fit_standard_pca(const Dataset& data, Index k, bool center = false);

// Group-fair PCA. The projection U maximizes trace(U^T X X^T U) over
// orthonormal U whose embedding gives every group of every listed attribute
// the same mean: U = R * Lambda with R a nullspace basis of Z^T X^T and
// Lambda the top-k eigenvectors of R^T X X^T R. k may not exceed the
// nullspace dimension (at least d - (#groups - 1) summed over attributes);
// DimensionError reports the achievable maximum. With eo_mode the procedure
// uses only datapoints labeled 1, equalizing opportunity rather than
// demographics; eo_constraint_only keeps the variance objective on the full
// sample while the mean constraint still comes from the positives.
ProjectionModel fit_fair_pca(const Dataset& data, Index k,
                             const std::vector<int>& attributes,
                             bool eo_mode = false, bool center = false,
                             bool eo_constraint_only = false);

// Two-group variant that additionally aligns group covariances. After the
// mean-constraint step, Q collects the l eigenvectors of R^T (S0 - S1) R
// with the smallest |eigenvalue| (S_g the group covariances), and the final
// projection is U = R Q V with V the top-k eigenvectors of (RQ)^T X X^T (RQ).
// l = max(k, floor(f * d)), clamped to the available dimensions; f = 1
// reproduces fit_fair_pca exactly.
ProjectionModel fit_fair_pca_s(const Dataset& data, Index k, int attribute,
                               double f, bool center = false);

// Embed new points: U^T (x - mean) columnwise. DimensionError on a feature
// count mismatch.
Matrix transform(const ProjectionModel& model, const Matrix& X_new);

// Interpolation between a fair and a standard projection of the same data:
// the embedding stacks U_fair^T x on top of lambda * U_std^T x, giving 2k
// output dimensions. lambda = 0 is purely fair, large lambda effectively
// standard; a downstream learner sees both views.
struct TradeoffModel {
  ProjectionModel fair;
  ProjectionModel standard;
  double lambda = 0.0;
};

Matrix tradeoff_transform(const TradeoffModel& model, const Matrix& X_new);

// The default interpolation grid (i/10)^3 for i = 0..10: cubic spacing puts
// most of the resolution near the fair end where the metrics move fastest.
std::vector<double> default_lambda_grid();

}  // namespace fairpca
