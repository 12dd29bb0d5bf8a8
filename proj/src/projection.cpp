#include "fairpca/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "fairpca/constraint.hpp"
#include "fairpca/errors.hpp"
#include "fairpca/linalg.hpp"

namespace fairpca {

namespace {

Vector column_mean(const Matrix& X) { return X.rowwise().mean(); }

Matrix centered(const Matrix& X, const Vector& mu) {
  return X.colwise() - mu;
}

std::vector<Index> positive_indices(const Dataset& data) {
  if (!data.labels)
    throw InvalidInput("fit: eo mode requires labels");
  std::vector<Index> idx;
  for (Index i = 0; i < data.size(); ++i)
    if ((*data.labels)[static_cast<size_t>(i)] == 1) idx.push_back(i);
  return idx;
}

void check_eo_groups(const Dataset& pos, const std::vector<int>& attributes) {
  for (int a : attributes) {
    std::vector<int> counts;
    for (int v : pos.attributes[static_cast<size_t>(a)]) {
      if (v >= static_cast<int>(counts.size())) counts.resize(static_cast<size_t>(v) + 1, 0);
      ++counts[static_cast<size_t>(v)];
    }
    int nonempty = 0;
    bool thin = false;
    for (int c : counts) {
      if (c > 0) ++nonempty;
      if (c == 1) thin = true;
    }
    if (nonempty < 2 || thin)
      throw InvalidInput(
          "fit: eo mode needs at least two positives per group of attribute " +
          std::to_string(a));
  }
}

void require_nondegenerate(const Dataset& data, const std::vector<int>& attributes) {
  for (int a : attributes) {
    if (a < 0 || static_cast<size_t>(a) >= data.attributes.size())
      throw InvalidInput("fit: attribute index " + std::to_string(a) + " out of range");
    if (group_count(data, a) < 2)
      throw DegenerateAttribute("fit: attribute " + std::to_string(a) +
                                " has a single value");
  }
}

struct FitInputs {
  Matrix X_obj;         // columns entering the variance objective
  Matrix X_constraint;  // columns entering the mean constraint
  Dataset constraint_data;
  std::optional<Vector> mean;
};

FitInputs prepare(const Dataset& data, const FitOptions& opt) {
  data.validate();
  if (data.size() < 2) throw InvalidInput("fit: need at least 2 datapoints");

  FitInputs in;
  Matrix X = data.X;
  if (opt.center) {
    in.mean = column_mean(X);
    X = centered(X, *in.mean);
  }

  if (opt.eo_mode) {
    const std::vector<Index> pos = positive_indices(data);
    Dataset posset = subset(data, pos);
    check_eo_groups(posset, opt.attributes);
    Matrix Xp(X.rows(), static_cast<Index>(pos.size()));
    for (size_t j = 0; j < pos.size(); ++j) Xp.col(static_cast<Index>(j)) = X.col(pos[j]);
    in.X_constraint = Xp;
    in.X_obj = opt.eo_constraint_only ? X : Xp;
    in.constraint_data = std::move(posset);
  } else {
    in.X_obj = X;
    in.X_constraint = X;
    in.constraint_data = data;
  }
  return in;
}

// Nullspace basis of Z^T X^T for the given attributes; identity when the
// constraint is empty.
Matrix constraint_nullspace(const Matrix& X, const Dataset& cdata,
                            const std::vector<int>& attributes) {
  const Index d = X.rows();
  if (attributes.empty()) return Matrix::Identity(d, d);
  ConstraintMatrix cm = build_constraint_matrix(cdata, attributes);
  if (cm.Z.cols() == 0) return Matrix::Identity(d, d);
  const Matrix M = cm.Z.transpose() * X.transpose();  // c x d
  return nullspace_basis(M);
}

void check_k(Index k, Index s, const char* what) {
  if (k < 1) throw DimensionError(std::string(what) + ": k must be >= 1");
  if (k > s)
    throw DimensionError(std::string(what) + ": k=" + std::to_string(k) +
                         " exceeds the achievable maximum " + std::to_string(s));
}

}  // namespace

ProjectionModel fit_standard_pca(const Dataset& data, Index k, bool center) {
  FitOptions opt;
  opt.center = center;
  FitInputs in = prepare(data, opt);
  check_k(k, in.X_obj.rows(), "fit_standard_pca");

  const Matrix S = in.X_obj * in.X_obj.transpose();
  EigResult eig = sym_eig_topk(S, k);

  ProjectionModel model;
  model.U = eig.vectors;
  model.method = Method::standard;
  model.k = k;
  model.options = opt;
  model.train_mean = in.mean;
  return model;
}

ProjectionModel fit_fair_pca(const Dataset& data, Index k,
                             const std::vector<int>& attributes,
                             bool eo_mode, bool center, bool eo_constraint_only) {
  if (attributes.empty())
    throw InvalidInput("fit_fair_pca: need at least one protected attribute");
  require_nondegenerate(data, attributes);
  FitOptions opt;
  opt.center = center;
  opt.attributes = attributes;
  opt.eo_mode = eo_mode;
  opt.eo_constraint_only = eo_constraint_only;
  FitInputs in = prepare(data, opt);

  const Matrix R = constraint_nullspace(in.X_constraint, in.constraint_data, attributes);
  check_k(k, R.cols(), "fit_fair_pca");

  const Matrix XR = in.X_obj.transpose() * R;  // n x s
  const Matrix S = XR.transpose() * XR;        // R^T X X^T R
  EigResult eig = sym_eig_topk(S, k);

  ProjectionModel model;
  model.U = R * eig.vectors;
  model.method = Method::fair;
  model.k = k;
  model.options = opt;
  model.train_mean = in.mean;
  return model;
}

ProjectionModel fit_fair_pca_s(const Dataset& data, Index k, int attribute,
                               double f, bool center) {
  if (!(f > 0.0) || f > 1.0)
    throw InvalidInput("fit_fair_pca_s: f must lie in (0, 1]");
  require_nondegenerate(data, {attribute});
  if (group_count(data, attribute) != 2)
    throw InvalidInput("fit_fair_pca_s: attribute must have exactly two groups");

  FitOptions opt;
  opt.center = center;
  opt.attributes = {attribute};
  opt.fair_s_fraction = f;
  FitInputs in = prepare(data, opt);

  const Index d = in.X_obj.rows();
  const Matrix R = constraint_nullspace(in.X_constraint, in.constraint_data, {attribute});
  const Index s = R.cols();
  check_k(k, s, "fit_fair_pca_s");

  // Group covariances of the (possibly centered) data, population normalization.
  const auto& codes = data.attributes[static_cast<size_t>(attribute)];
  std::vector<int> present;
  for (int v : codes)
    if (std::find(present.begin(), present.end(), v) == present.end())
      present.push_back(v);
  std::sort(present.begin(), present.end());

  Matrix diff = Matrix::Zero(d, d);
  for (int which = 0; which < 2; ++which) {
    std::vector<Index> idx;
    for (Index i = 0; i < in.X_obj.cols(); ++i)
      if (codes[static_cast<size_t>(i)] == present[static_cast<size_t>(which)])
        idx.push_back(i);
    Matrix Xg(d, static_cast<Index>(idx.size()));
    for (size_t j = 0; j < idx.size(); ++j) Xg.col(static_cast<Index>(j)) = in.X_obj.col(idx[j]);
    const Vector mu = column_mean(Xg);
    const Matrix Xc = centered(Xg, mu);
    const Matrix Sg = (Xc * Xc.transpose()) / static_cast<double>(idx.size());
    diff += (which == 0 ? 1.0 : -1.0) * Sg;
  }

  Index l = std::max(k, static_cast<Index>(std::floor(f * static_cast<double>(d))));
  l = std::min({l, d - 1, s});

  // Eigenvectors of R^T (S0 - S1) R closest to zero; ties resolved by the
  // signed value, then the solver index.
  const Matrix D = R.transpose() * diff * R;
  EigResult dg = sym_eig_topk(0.5 * (D + D.transpose()), s);
  std::vector<Index> order(static_cast<size_t>(s));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    const double ma = std::abs(dg.values(a)), mb = std::abs(dg.values(b));
    if (ma != mb) return ma < mb;
    return dg.values(a) < dg.values(b);
  });
  Matrix Q(s, l);
  for (Index j = 0; j < l; ++j) Q.col(j) = dg.vectors.col(order[static_cast<size_t>(j)]);

  const Matrix RQ = R * Q;  // d x l
  const Matrix XRQ = in.X_obj.transpose() * RQ;
  EigResult top = sym_eig_topk(XRQ.transpose() * XRQ, k);

  ProjectionModel model;
  model.U = RQ * top.vectors;
  model.method = Method::fair_s;
  model.k = k;
  opt.fair_s_l = l;
  model.options = opt;
  model.train_mean = in.mean;
  return model;
}

Matrix transform(const ProjectionModel& model, const Matrix& X_new) {
  if (X_new.rows() != model.U.rows())
    throw DimensionError("transform: model expects " + std::to_string(model.U.rows()) +
                         " features, got " + std::to_string(X_new.rows()));
  if (!X_new.allFinite()) throw InvalidInput("transform: non-finite entries");
  if (model.train_mean)
    return model.U.transpose() * centered(X_new, *model.train_mean);
  return model.U.transpose() * X_new;
}

Matrix tradeoff_transform(const TradeoffModel& model, const Matrix& X_new) {
  if (model.lambda < 0.0)
    throw InvalidInput("tradeoff_transform: lambda must be >= 0");
  if (model.fair.k != model.standard.k ||
      model.fair.U.rows() != model.standard.U.rows())
    throw DimensionError("tradeoff_transform: mismatched component models");
  const Matrix top = transform(model.fair, X_new);
  const Matrix bottom = transform(model.standard, X_new);
  Matrix out(top.rows() + bottom.rows(), X_new.cols());
  out.topRows(top.rows()) = top;
  out.bottomRows(bottom.rows()) = model.lambda * bottom;
  return out;
}

std::vector<double> default_lambda_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) {
    const double t = static_cast<double>(i) / 10.0;
    grid.push_back(t * t * t);
  }
  return grid;
}

}  // namespace fairpca
