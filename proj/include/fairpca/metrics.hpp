#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fairpca/dataset.hpp"
#include "fairpca/kernel.hpp"
#include "fairpca/logreg.hpp"
#include "fairpca/projection.hpp"
#include "fairpca/types.hpp"

namespace fairpca {

// Fraction trace(U^T X X^T U) / trace(X X^T) in [0, 1] for orthonormal U.
// X must carry nonzero total variance (DegenerateInput otherwise).
double explained_variance(const Matrix& U, const Matrix& X);

// Bandwidth gamma = 1 / (2 * median^2) over the pairwise euclidean distances
// of the pooled sample (all unordered pairs; even counts average the two
// central order statistics). A zero median falls back to gamma = 1.
double median_heuristic_gamma(const Matrix& pooled);

struct MmdOptions {
  // Fixed gaussian bandwidth; nullopt applies the median heuristic to the
  // pooled sample A|B.
  std::optional<double> gamma;
  // V-statistic (biased, includes self-pairs, always >= 0) instead of the
  // default unbiased U-statistic, which can dip slightly below zero.
  bool biased = false;
};

// Squared maximum mean discrepancy between the column samples of A and B
// under a gaussian kernel. Unbiased variant needs >= 2 columns per side.
double mmd2(const Matrix& A, const Matrix& B, const MmdOptions& opts = {});

// Test error of a trained group probe: 1 - accuracy of clf predicting the
// group code on the embedding. 0.5 means a balanced two-group sample is
// linearly inseparable.
double linear_inseparability(const Matrix& embedding,
                             const std::vector<int>& groups,
                             const LinearClassifier& clf);

struct FairnessGaps {
  std::optional<double> delta_dp;  // |P(pred=1 | g=0) - P(pred=1 | g=1)|
  std::optional<double> delta_eo;  // same, restricted to label-1 points
  std::vector<std::string> warnings;
};

// Demographic-parity and equal-opportunity gaps for a binary attribute.
// A side with no datapoints (or no positives, for delta_eo) leaves the
// corresponding field unset with a warning rather than failing.
FairnessGaps fairness_gaps(const std::vector<int>& predictions,
                           const std::vector<int>& groups,
                           const std::optional<std::vector<int>>& labels);

// Degree-2 polynomial feature map per column: the k raw coordinates followed
// by all products e_i * e_j for i <= j. Used for the quadratic probe.
Matrix quadratic_expansion(const Matrix& E);

struct EvalReport {
  std::optional<double> explained_var_fraction;  // linear models only
  double mmd2 = 0.0;                             // clamped at 0
  std::optional<double> linear_insep;
  std::optional<double> quadratic_insep;         // when the quadratic probe ran
  std::optional<double> downstream_accuracy;     // when labels exist
  std::optional<double> delta_dp;
  std::optional<double> delta_eo;
  std::vector<std::string> warnings;
};

struct EvalOptions {
  double downstream_reg = 0.01;
  double probe_reg = 0.01;
  std::optional<double> mmd_gamma;  // nullopt: median heuristic on the test embedding
  bool quadratic_probe = false;
  int attribute = 0;  // attribute used for grouping in the metrics
};

using AnyModel = std::variant<ProjectionModel, KernelModel, TradeoffModel>;

// Full report card for a fitted model: probes and the downstream classifier
// are trained on the train-split embedding, every metric is computed on the
// test split. The grouping attribute must be binary for the probe and gap
// metrics. Explained variance is only defined for plain projections.
EvalReport evaluate(const AnyModel& model, const Dataset& train,
                    const Dataset& test, const EvalOptions& opts = {});

// CSV rendering of reports; the header lists
// model,split,lambda,explained_var_fraction,mmd2,linear_insep,
// quadratic_insep,downstream_accuracy,delta_dp,delta_eo
// and unset fields render as empty cells.
std::string eval_csv_header();
std::string eval_csv_row(const std::string& model_tag, const std::string& split_tag,
                         std::optional<double> lambda, const EvalReport& report);

}  // namespace fairpca
