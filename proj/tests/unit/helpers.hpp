#pragma once

#include <vector>

#include "fairpca/dataset.hpp"
#include "fairpca/rng.hpp"
#include "fairpca/types.hpp"

namespace testutil {

using fairpca::Dataset;
using fairpca::Index;
using fairpca::Matrix;
using fairpca::Rng;
using fairpca::Vector;

inline Matrix random_matrix(Index r, Index c, std::uint64_t seed) {
  Rng rng(seed);
  Matrix M(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) M(i, j) = rng.gauss();
  return M;
}

inline Matrix random_symmetric(Index d, std::uint64_t seed) {
  const Matrix M = random_matrix(d, d, seed);
  return 0.5 * (M + M.transpose());
}

inline double orthonormality_defect(const Matrix& U) {
  return (U.transpose() * U - Matrix::Identity(U.cols(), U.cols()))
      .cwiseAbs()
      .maxCoeff();
}

// Random dataset with the requested number of nonempty groups on one
// attribute. Groups are assigned round-robin so none is empty.
inline Dataset random_dataset(Index d, Index n, int groups, std::uint64_t seed) {
  Dataset data;
  data.X = random_matrix(d, n, seed);
  std::vector<int> g(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i) g[static_cast<size_t>(i)] = static_cast<int>(i % groups);
  data.attributes.push_back(std::move(g));
  fairpca::ensure_names(data);
  return data;
}

// Largest absolute difference between the group means of an embedding.
inline double group_mean_gap(const Matrix& emb, const std::vector<int>& groups) {
  int gmax = 0;
  for (int v : groups) gmax = std::max(gmax, v);
  double worst = 0.0;
  Vector overall = emb.rowwise().mean();
  for (int g = 0; g <= gmax; ++g) {
    Vector sum = Vector::Zero(emb.rows());
    Index cnt = 0;
    for (Index i = 0; i < emb.cols(); ++i)
      if (groups[static_cast<size_t>(i)] == g) {
        sum += emb.col(i);
        ++cnt;
      }
    if (cnt == 0) continue;
    worst = std::max(worst, ((sum / static_cast<double>(cnt)) - overall).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace testutil
