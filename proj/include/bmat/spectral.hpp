#pragma once

#include "bmat/core.hpp"

namespace bmat {

/// Monic characteristic polynomial coefficients c_0..c_n with c_0 = 1:
/// det(xI - A) = sum_k c_k x^{n-k}.
struct CharPoly {
    std::vector<Complex> coeffs;
};

/// Faddeev-LeVerrier recursion; exact in exact arithmetic.
CharPoly char_poly(const ComplexMatrix& A);

/// prod_{k != j} (lambda_k - lambda_j) over ordered pairs of eigenvalues.
/// Nonzero iff the eigenvalues are distinct. n = 1 gives the empty product 1.
Complex discriminant(const ComplexMatrix& A);

/// log |discriminant| accumulated in log space; -inf on a repeated eigenvalue.
/// Used for the distinctness certificate when the product underflows.
double log_abs_discriminant(const std::vector<Complex>& eigs);

/// Minimum pairwise eigenvalue distance; +inf for n < 2 (vacuously distinct).
double min_eig_gap(const ComplexMatrix& A);

/// n^2 x n matrix [vec(I) vec(A) ... vec(A^{n-1})], column-major vec.
ComplexMatrix krylov_matrix(const ComplexMatrix& A);

/// A is 1-regular (nonderogatory) iff its Krylov matrix has full column rank.
/// Columns are rescaled by powers of max(1, ||A||) before the rank test.
bool is_one_regular(const ComplexMatrix& A, const ToleranceConfig& cfg);

/// Clusters eigenvalues at radius cluster_tol * (1 + ||A||) (single linkage)
/// and checks geometric = algebraic multiplicity per cluster via the rank of
/// A - mu I at the cluster mean. Callers analysing defective matrices should
/// set cluster_tol above the expected eigenvalue splay (~eps_machine^{1/k} for
/// a size-k Jordan block); the default handles k <= 2.
bool is_diagonalizable(const ComplexMatrix& A, const ToleranceConfig& cfg);

/// Single-linkage clustering of points at the given radius; returns groups of
/// indices, each sorted, groups ordered by their smallest member.
std::vector<std::vector<int>> cluster_points(const std::vector<Complex>& pts, double radius);

}  // namespace bmat
