#include "fairpca/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "fairpca/errors.hpp"

namespace fairpca {

double explained_variance(const Matrix& U, const Matrix& X) {
  if (U.rows() != X.rows())
    throw DimensionError("explained_variance: U and X row counts differ");
  if (X.cols() == 0) throw InvalidInput("explained_variance: empty sample");
  if (!U.allFinite() || !X.allFinite())
    throw InvalidInput("explained_variance: non-finite entries");
  const double total = X.squaredNorm();  // trace(X X^T)
  if (total <= 0.0)
    throw DegenerateInput("explained_variance: data has zero total variance");
  const double captured = (U.transpose() * X).squaredNorm();
  return captured / total;
}

double median_heuristic_gamma(const Matrix& pooled) {
  const Index n = pooled.cols();
  if (n < 2) throw InvalidInput("median_heuristic_gamma: need >= 2 points");
  std::vector<double> dist;
  dist.reserve(static_cast<size_t>(n) * static_cast<size_t>(n - 1) / 2);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      dist.push_back((pooled.col(i) - pooled.col(j)).norm());
  std::sort(dist.begin(), dist.end());
  const size_t m = dist.size();
  double med;
  if (m % 2 == 1) {
    med = dist[m / 2];
  } else {
    med = 0.5 * (dist[m / 2 - 1] + dist[m / 2]);
  }
  if (med <= 0.0) return 1.0;  // all points identical
  return 1.0 / (2.0 * med * med);
}

double mmd2(const Matrix& A, const Matrix& B, const MmdOptions& opts) {
  if (A.rows() != B.rows())
    throw DimensionError("mmd2: feature dimensions differ");
  if (A.cols() == 0 || B.cols() == 0) throw InvalidInput("mmd2: empty sample");
  if (!A.allFinite() || !B.allFinite())
    throw InvalidInput("mmd2: non-finite entries");
  const Index na = A.cols(), nb = B.cols();
  if (!opts.biased && (na < 2 || nb < 2))
    throw InvalidInput("mmd2: unbiased estimator needs >= 2 points per side");

  double gamma;
  if (opts.gamma) {
    gamma = *opts.gamma;
    if (!(gamma > 0.0)) throw InvalidInput("mmd2: gamma must be > 0");
  } else {
    Matrix pooled(A.rows(), na + nb);
    pooled.leftCols(na) = A;
    pooled.rightCols(nb) = B;
    gamma = median_heuristic_gamma(pooled);
  }

  KernelSpec spec;
  spec.kind = KernelSpec::Kind::gaussian;
  spec.gamma = gamma;
  const Matrix Kaa = gram(spec, A, A);
  const Matrix Kbb = gram(spec, B, B);
  const Matrix Kab = gram(spec, A, B);

  const double cross = 2.0 * Kab.sum() / (static_cast<double>(na) * static_cast<double>(nb));
  if (opts.biased) {
    return Kaa.sum() / (static_cast<double>(na) * static_cast<double>(na)) +
           Kbb.sum() / (static_cast<double>(nb) * static_cast<double>(nb)) - cross;
  }
  const double aa = (Kaa.sum() - Kaa.trace()) /
                    (static_cast<double>(na) * static_cast<double>(na - 1));
  const double bb = (Kbb.sum() - Kbb.trace()) /
                    (static_cast<double>(nb) * static_cast<double>(nb - 1));
  return aa + bb - cross;
}

double linear_inseparability(const Matrix& embedding,
                             const std::vector<int>& groups,
                             const LinearClassifier& clf) {
  if (static_cast<Index>(groups.size()) != embedding.cols())
    throw DimensionError("linear_inseparability: group count mismatch");
  const std::vector<int> pred = predict(clf, embedding);
  return 1.0 - accuracy(pred, groups);
}

FairnessGaps fairness_gaps(const std::vector<int>& predictions,
                           const std::vector<int>& groups,
                           const std::optional<std::vector<int>>& labels) {
  if (predictions.size() != groups.size() || predictions.empty())
    throw InvalidInput("fairness_gaps: size mismatch or empty input");
  if (labels && labels->size() != predictions.size())
    throw InvalidInput("fairness_gaps: label size mismatch");
  for (int g : groups)
    if (g != 0 && g != 1)
      throw InvalidInput("fairness_gaps: attribute must be binary");

  FairnessGaps out;
  long cnt[2] = {0, 0}, pos[2] = {0, 0};
  long ycnt[2] = {0, 0}, ypos[2] = {0, 0};
  for (size_t i = 0; i < predictions.size(); ++i) {
    const int g = groups[i];
    ++cnt[g];
    if (predictions[i] == 1) ++pos[g];
    if (labels && (*labels)[i] == 1) {
      ++ycnt[g];
      if (predictions[i] == 1) ++ypos[g];
    }
  }
  if (cnt[0] > 0 && cnt[1] > 0) {
    out.delta_dp = std::abs(static_cast<double>(pos[0]) / static_cast<double>(cnt[0]) -
                            static_cast<double>(pos[1]) / static_cast<double>(cnt[1]));
  } else {
    out.warnings.push_back("fairness_gaps: a group is empty, delta_dp unset");
  }
  if (labels) {
    if (ycnt[0] > 0 && ycnt[1] > 0) {
      out.delta_eo = std::abs(static_cast<double>(ypos[0]) / static_cast<double>(ycnt[0]) -
                              static_cast<double>(ypos[1]) / static_cast<double>(ycnt[1]));
    } else {
      out.warnings.push_back("fairness_gaps: a group has no positives, delta_eo unset");
    }
  }
  return out;
}

Matrix quadratic_expansion(const Matrix& E) {
  const Index k = E.rows(), n = E.cols();
  if (k == 0 || n == 0) throw InvalidInput("quadratic_expansion: empty input");
  const Index out_rows = k + k * (k + 1) / 2;
  Matrix out(out_rows, n);
  out.topRows(k) = E;
  Index r = k;
  for (Index i = 0; i < k; ++i)
    for (Index j = i; j < k; ++j) {
      out.row(r) = E.row(i).cwiseProduct(E.row(j));
      ++r;
    }
  return out;
}

namespace {

Matrix embed(const AnyModel& model, const Matrix& X) {
  if (std::holds_alternative<ProjectionModel>(model))
    return transform(std::get<ProjectionModel>(model), X);
  if (std::holds_alternative<KernelModel>(model))
    return kernel_transform(std::get<KernelModel>(model), X);
  return tradeoff_transform(std::get<TradeoffModel>(model), X);
}

std::vector<int> binary_groups(const Dataset& data, int attribute) {
  if (attribute < 0 ||
      static_cast<size_t>(attribute) >= data.attributes.size())
    throw InvalidInput("evaluate: attribute index out of range");
  const auto& g = data.attributes[static_cast<size_t>(attribute)];
  for (int v : g)
    if (v != 0 && v != 1)
      throw InvalidInput("evaluate: metrics need a binary attribute (codes 0/1)");
  return g;
}

}  // namespace

EvalReport evaluate(const AnyModel& model, const Dataset& train,
                    const Dataset& test, const EvalOptions& opts) {
  train.validate();
  test.validate();
  if (train.size() < 2 || test.size() < 2)
    throw InvalidInput("evaluate: need >= 2 points per split");

  EvalReport report;
  const Matrix train_emb = embed(model, train.X);
  const Matrix test_emb = embed(model, test.X);

  if (std::holds_alternative<ProjectionModel>(model)) {
    const ProjectionModel& pm = std::get<ProjectionModel>(model);
    Matrix Xt = test.X;
    if (pm.train_mean) Xt.colwise() -= *pm.train_mean;
    report.explained_var_fraction = explained_variance(pm.U, Xt);
  }

  const std::vector<int> gtrain = binary_groups(train, opts.attribute);
  const std::vector<int> gtest = binary_groups(test, opts.attribute);

  // MMD between the two group clouds of the test embedding.
  {
    std::vector<Index> i0, i1;
    for (Index i = 0; i < test_emb.cols(); ++i)
      (gtest[static_cast<size_t>(i)] == 0 ? i0 : i1).push_back(i);
    if (i0.size() >= 2 && i1.size() >= 2) {
      Matrix E0(test_emb.rows(), static_cast<Index>(i0.size()));
      Matrix E1(test_emb.rows(), static_cast<Index>(i1.size()));
      for (size_t j = 0; j < i0.size(); ++j) E0.col(static_cast<Index>(j)) = test_emb.col(i0[j]);
      for (size_t j = 0; j < i1.size(); ++j) E1.col(static_cast<Index>(j)) = test_emb.col(i1[j]);
      MmdOptions mo;
      mo.gamma = opts.mmd_gamma;
      report.mmd2 = std::max(0.0, mmd2(E0, E1, mo));
    } else {
      report.warnings.push_back("evaluate: a group has < 2 test points, mmd2 = 0");
    }
  }

  // Group probe: can a linear classifier recover the attribute?
  {
    const bool tr0 = std::find(gtrain.begin(), gtrain.end(), 0) != gtrain.end();
    const bool tr1 = std::find(gtrain.begin(), gtrain.end(), 1) != gtrain.end();
    if (tr0 && tr1) {
      LinearClassifier probe = train_logreg(train_emb, gtrain, opts.probe_reg);
      report.linear_insep = linear_inseparability(test_emb, gtest, probe);
      if (opts.quadratic_probe) {
        LinearClassifier q = train_logreg(quadratic_expansion(train_emb), gtrain,
                                          opts.probe_reg);
        report.quadratic_insep =
            linear_inseparability(quadratic_expansion(test_emb), gtest, q);
      }
    } else {
      report.warnings.push_back("evaluate: train split misses a group, probes skipped");
    }
  }

  // Downstream task: label prediction on the embedding.
  if (train.labels && test.labels) {
    const bool c0 = std::find(train.labels->begin(), train.labels->end(), 0) !=
                    train.labels->end();
    const bool c1 = std::find(train.labels->begin(), train.labels->end(), 1) !=
                    train.labels->end();
    if (c0 && c1) {
      LinearClassifier clf =
          train_logreg(train_emb, *train.labels, opts.downstream_reg);
      const std::vector<int> pred = predict(clf, test_emb);
      report.downstream_accuracy = accuracy(pred, *test.labels);
      FairnessGaps gaps = fairness_gaps(pred, gtest, *test.labels);
      report.delta_dp = gaps.delta_dp;
      report.delta_eo = gaps.delta_eo;
      for (auto& w : gaps.warnings) report.warnings.push_back(w);
    } else {
      report.warnings.push_back(
          "evaluate: train split misses a label class, downstream metrics skipped");
    }
  }

  return report;
}

namespace {

std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? fmt_num(*v) : std::string();
}

}  // namespace

std::string eval_csv_header() {
  return "model,split,lambda,explained_var_fraction,mmd2,linear_insep,"
         "quadratic_insep,downstream_accuracy,delta_dp,delta_eo";
}

std::string eval_csv_row(const std::string& model_tag, const std::string& split_tag,
                         std::optional<double> lambda, const EvalReport& report) {
  std::string row = model_tag + "," + split_tag + "," + fmt_opt(lambda);
  row += "," + fmt_opt(report.explained_var_fraction);
  row += "," + fmt_num(report.mmd2);
  row += "," + fmt_opt(report.linear_insep);
  row += "," + fmt_opt(report.quadratic_insep);
  row += "," + fmt_opt(report.downstream_accuracy);
  row += "," + fmt_opt(report.delta_dp);
  row += "," + fmt_opt(report.delta_eo);
  return row;
}

}  // namespace fairpca
