#pragma once

#include <optional>
#include <vector>

#include "fairpca/dataset.hpp"
#include "fairpca/types.hpp"

namespace fairpca {

struct KernelSpec {
  enum class Kind { gaussian, linear };
  Kind kind = Kind::gaussian;
  // Bandwidth for the gaussian kernel, k(a,b) = exp(-gamma * |a-b|^2).
  // nullopt means "resolve from the training data" via auto_gamma.
  std::optional<double> gamma;
};

// 1 / (d * Var(X)) with Var the population variance of all d*n entries of X
// pooled together. Zero variance throws DegenerateInput.
double auto_gamma(const Matrix& X);

// Gram matrix k(a_i, b_j) between the columns of A and B. For a gaussian
// spec without a gamma, the bandwidth is resolved from A (the side playing
// the role of training data).
Matrix gram(const KernelSpec& spec, const Matrix& A, const Matrix& B);

struct KernelModel {
  Matrix coeffs;           // s x k, eigenvector block (B-orthonormal)
  Matrix R;                // n x s nullspace basis of Z^T K
  Matrix train_X;          // d x n, needed to evaluate kernels at new points
  Matrix train_embedding;  // k x n
  KernelSpec spec;         // gamma resolved
  Index k = 0;
  double jitter = 1e-5;
  std::vector<int> attributes;
};

// Kernelized fair PCA. With K the training gram matrix and Z the constraint
// matrix, R spans the nullspace of Z^T K; the coefficient block solves the
// generalized problem (R^T K K R) w = mu (R^T K R) w, with jitter * I added
// to the right-hand side before factorizing, and the embedding of the
// training points is coeffs^T R^T K. An empty constraint (all attributes
// degenerate) degrades to standard kernel PCA over the uncentered gram
// matrix. k may not exceed the nullspace dimension.
KernelModel fit_fair_kernel_pca(const Dataset& data, Index k,
                                const std::vector<int>& attributes,
                                const KernelSpec& spec = {},
                                double jitter = 1e-5);

// Embed new points: coeffs^T R^T K_hat with K_hat the train-vs-new gram
// matrix. Applying it to the training matrix reproduces train_embedding.
Matrix kernel_transform(const KernelModel& model, const Matrix& X_new);

}  // namespace fairpca
