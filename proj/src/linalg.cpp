#include "fairpca/linalg.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "fairpca/errors.hpp"

namespace fairpca {

namespace detail {

void canonicalize_signs(Matrix& V) {
  for (Index j = 0; j < V.cols(); ++j) {
    Index pivot = 0;
    double best = -1.0;
    for (Index i = 0; i < V.rows(); ++i) {
      const double a = std::abs(V(i, j));
      if (a > best) {  // strict: ties keep the lowest index
        best = a;
        pivot = i;
      }
    }
    if (V.rows() > 0 && V(pivot, j) < 0.0) V.col(j) = -V.col(j);
  }
}

namespace {

// Shared by the plain and generalized paths; input assumed symmetric.
EigResult sym_eig_topk_nochecks(const Matrix& A, Index k) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(A);
  if (es.info() != Eigen::Success)
    throw NumericalError("sym_eig_topk: eigendecomposition did not converge");

  const Index d = A.rows();
  std::vector<Index> order(static_cast<size_t>(d));
  std::iota(order.begin(), order.end(), Index{0});
  // Solver output is ascending; stable sort keeps the lower solver index
  // first among equal eigenvalues.
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return es.eigenvalues()(a) > es.eigenvalues()(b);
  });

  EigResult out;
  out.values.resize(k);
  out.vectors.resize(d, k);
  for (Index i = 0; i < k; ++i) {
    out.values(i) = es.eigenvalues()(order[static_cast<size_t>(i)]);
    out.vectors.col(i) = es.eigenvectors().col(order[static_cast<size_t>(i)]);
  }
  canonicalize_signs(out.vectors);
  return out;
}

}  // namespace
}  // namespace detail

EigResult sym_eig_topk(const Matrix& A, Index k) {
  if (A.rows() != A.cols())
    throw DimensionError("sym_eig_topk: matrix must be square, got " +
                         std::to_string(A.rows()) + "x" + std::to_string(A.cols()));
  if (A.rows() == 0) throw InvalidInput("sym_eig_topk: empty matrix");
  if (!A.allFinite()) throw InvalidInput("sym_eig_topk: non-finite entries");
  if (k < 1 || k > A.rows())
    throw DimensionError("sym_eig_topk: k=" + std::to_string(k) +
                         " out of range [1, " + std::to_string(A.rows()) + "]");
  const Matrix As = 0.5 * (A + A.transpose());
  return detail::sym_eig_topk_nochecks(As, k);
}

Matrix nullspace_basis(const Matrix& M, double rel_tol) {
  if (M.rows() == 0 || M.cols() == 0)
    throw InvalidInput("nullspace_basis: empty matrix");
  if (!(rel_tol > 0.0)) throw InvalidInput("nullspace_basis: rel_tol must be > 0");
  if (!M.allFinite()) throw InvalidInput("nullspace_basis: non-finite entries");

  const Index d = M.cols();
  // Full right-singular basis. Jacobi iterates on the short side, so feed the
  // transpose when M is wide; matrixU of M^T equals matrixV of M.
  Matrix V;
  Vector sv;
  if (M.rows() >= M.cols()) {
    Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullV);
    V = svd.matrixV();
    sv = svd.singularValues();
  } else {
    Eigen::JacobiSVD<Matrix> svd(M.transpose(), Eigen::ComputeFullU);
    V = svd.matrixU();
    sv = svd.singularValues();
  }

  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  Index rank = 0;
  if (smax > 0.0) {
    for (Index i = 0; i < sv.size(); ++i)
      if (sv(i) > rel_tol * smax) ++rank;
  }
  Matrix basis = V.rightCols(d - rank).eval();
  detail::canonicalize_signs(basis);
  return basis;
}

EigResult gen_sym_eig_topk(const Matrix& A, const Matrix& B, Index k, double jitter) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
    throw DimensionError("gen_sym_eig_topk: A and B must be square with equal size");
  if (A.rows() == 0) throw InvalidInput("gen_sym_eig_topk: empty matrices");
  if (!A.allFinite() || !B.allFinite())
    throw InvalidInput("gen_sym_eig_topk: non-finite entries");
  if (k < 1 || k > A.rows())
    throw DimensionError("gen_sym_eig_topk: k=" + std::to_string(k) +
                         " out of range [1, " + std::to_string(A.rows()) + "]");
  if (jitter < 0.0) throw InvalidInput("gen_sym_eig_topk: jitter must be >= 0");

  const Matrix As = 0.5 * (A + A.transpose());
  Matrix Bj = 0.5 * (B + B.transpose());
  Bj.diagonal().array() += jitter;

  Eigen::LLT<Matrix> llt(Bj);
  if (llt.info() != Eigen::Success)
    throw NumericalError(
        "gen_sym_eig_topk: B is not positive definite (jitter=" +
        std::to_string(jitter) + ")");

  // C = L^{-1} As L^{-T}; with As symmetric this is L^{-1} (L^{-1} As)^T.
  const Matrix L = llt.matrixL();
  Matrix C = L.triangularView<Eigen::Lower>().solve(As);
  C = L.triangularView<Eigen::Lower>().solve(C.transpose().eval());
  C = 0.5 * (C + C.transpose()).eval();

  EigResult reduced = detail::sym_eig_topk_nochecks(C, k);
  Matrix vectors =
      L.transpose().triangularView<Eigen::Upper>().solve(reduced.vectors);
  detail::canonicalize_signs(vectors);
  return {reduced.values, vectors};
}

}  // namespace fairpca
