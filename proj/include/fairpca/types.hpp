#pragma once

#include <Eigen/Dense>

namespace fairpca {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Eigenpairs sorted by non-increasing eigenvalue; vectors.col(i) belongs to values(i).
struct EigResult {
  Vector values;
  Matrix vectors;
};

}  // namespace fairpca
