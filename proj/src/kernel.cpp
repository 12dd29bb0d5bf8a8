#include "fairpca/kernel.hpp"

#include <cmath>
#include <string>

#include "fairpca/constraint.hpp"
#include "fairpca/errors.hpp"
#include "fairpca/linalg.hpp"

namespace fairpca {

double auto_gamma(const Matrix& X) {
  if (X.size() == 0) throw InvalidInput("auto_gamma: empty matrix");
  if (!X.allFinite()) throw InvalidInput("auto_gamma: non-finite entries");
  const double n = static_cast<double>(X.size());
  const double mean = X.sum() / n;
  const double var = (X.array() - mean).square().sum() / n;
  if (var <= 0.0)
    throw DegenerateInput("auto_gamma: data has zero variance");
  return 1.0 / (static_cast<double>(X.rows()) * var);
}

Matrix gram(const KernelSpec& spec, const Matrix& A, const Matrix& B) {
  if (A.rows() != B.rows())
    throw DimensionError("gram: feature dimensions differ (" +
                         std::to_string(A.rows()) + " vs " +
                         std::to_string(B.rows()) + ")");
  if (A.size() == 0 || B.size() == 0) throw InvalidInput("gram: empty input");
  if (!A.allFinite() || !B.allFinite())
    throw InvalidInput("gram: non-finite entries");

  if (spec.kind == KernelSpec::Kind::linear) return A.transpose() * B;

  const double gamma = spec.gamma ? *spec.gamma : auto_gamma(A);
  if (!(gamma > 0.0)) throw InvalidInput("gram: gamma must be > 0");

  // |a-b|^2 = |a|^2 + |b|^2 - 2 a.b, clamped at 0 against roundoff.
  const Vector a2 = A.colwise().squaredNorm();
  const Vector b2 = B.colwise().squaredNorm();
  Matrix D = (-2.0 * (A.transpose() * B)).eval();
  D.colwise() += a2;
  D.rowwise() += b2.transpose();
  return (-gamma * D.cwiseMax(0.0)).array().exp().matrix();
}

KernelModel fit_fair_kernel_pca(const Dataset& data, Index k,
                                const std::vector<int>& attributes,
                                const KernelSpec& spec, double jitter) {
  data.validate();
  const Index n = data.size();
  if (n < 2) throw InvalidInput("fit_fair_kernel_pca: need at least 2 points");
  if (jitter < 0.0)
    throw InvalidInput("fit_fair_kernel_pca: jitter must be >= 0");
  for (int a : attributes)
    if (a < 0 || static_cast<size_t>(a) >= data.attributes.size())
      throw InvalidInput("fit_fair_kernel_pca: attribute index " +
                         std::to_string(a) + " out of range");

  KernelModel model;
  model.spec = spec;
  if (spec.kind == KernelSpec::Kind::gaussian && !spec.gamma)
    model.spec.gamma = auto_gamma(data.X);

  const Matrix K = gram(model.spec, data.X, data.X);

  // Degenerate attributes contribute no columns; an empty Z leaves R = I and
  // the fit reduces to standard kernel PCA.
  ConstraintMatrix cm = build_constraint_matrix(data, attributes);
  Matrix R;
  if (cm.Z.cols() == 0) {
    R = Matrix::Identity(n, n);
  } else {
    R = nullspace_basis(cm.Z.transpose() * K);
  }
  const Index s = R.cols();
  if (k < 1) throw DimensionError("fit_fair_kernel_pca: k must be >= 1");
  if (k > s)
    throw DimensionError("fit_fair_kernel_pca: k=" + std::to_string(k) +
                         " exceeds the achievable maximum " + std::to_string(s));

  const Matrix KR = K * R;                       // n x s
  const Matrix A = KR.transpose() * KR;          // R^T K K R
  const Matrix B = R.transpose() * KR;           // R^T K R
  EigResult eig = gen_sym_eig_topk(A, B, k, jitter);

  model.coeffs = eig.vectors;
  model.R = R;
  model.train_X = data.X;
  model.k = k;
  model.jitter = jitter;
  model.attributes = attributes;
  // Same expression kernel_transform uses, so re-embedding the training
  // matrix reproduces these values bitwise.
  model.train_embedding = model.coeffs.transpose() * (R.transpose() * K);
  return model;
}

Matrix kernel_transform(const KernelModel& model, const Matrix& X_new) {
  if (X_new.rows() != model.train_X.rows())
    throw DimensionError("kernel_transform: model expects " +
                         std::to_string(model.train_X.rows()) +
                         " features, got " + std::to_string(X_new.rows()));
  if (!X_new.allFinite())
    throw InvalidInput("kernel_transform: non-finite entries");
  const Matrix Khat = gram(model.spec, model.train_X, X_new);  // n x m
  return model.coeffs.transpose() * (model.R.transpose() * Khat);
}

}  // namespace fairpca
