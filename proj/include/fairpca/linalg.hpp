#pragma once

#include "fairpca/types.hpp"

namespace fairpca {

// Top-k eigenpairs of a symmetric matrix, eigenvalues non-increasing.
//
// A is symmetrized as (A + A^T)/2 before the decomposition, so slightly
// asymmetric inputs (roundoff from products like R^T M R) are accepted.
// Ties between equal eigenvalues keep the lower solver index first, and each
// eigenvector is sign-normalized so its largest-magnitude entry (lowest index
// on ties) is non-negative. Deterministic for identical input bytes.
EigResult sym_eig_topk(const Matrix& A, Index k);

// Orthonormal basis of the (right) nullspace of M as columns, via SVD.
//
// A right-singular vector belongs to the nullspace iff its singular value
// sigma satisfies sigma <= rel_tol * sigma_max; if sigma_max == 0 every
// direction does and the basis has full dimension M.cols(). Columns carry the
// same sign convention as sym_eig_topk. The result can have zero columns.
Matrix nullspace_basis(const Matrix& M, double rel_tol = 1e-10);

// Top-k eigenpairs of the pencil A v = lambda B v with A, B symmetric and B
// positive definite after adding jitter * I.
//
// Solved by Cholesky reduction: B + jitter*I = L L^T, then a symmetric
// eigendecomposition of L^{-1} A L^{-T}. Returned vectors are B-orthonormal,
// i.e. v_i^T (B + jitter*I) v_j = delta_ij. Throws NumericalError when the
// factorization fails even with the jitter applied.
EigResult gen_sym_eig_topk(const Matrix& A, const Matrix& B, Index k,
                           double jitter = 1e-5);

namespace detail {

// Flip column signs in place: largest-|entry| component (lowest index wins
// ties) becomes non-negative.
void canonicalize_signs(Matrix& V);

}  // namespace detail

}  // namespace fairpca
