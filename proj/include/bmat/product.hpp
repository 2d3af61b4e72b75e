#pragma once

#include "bmat/core.hpp"

namespace bmat {

enum class ProductKind { Hermitian, SkewHermitian };

/// Signature of a Hermitian form: m_minus negative and m_plus positive eigenvalues.
struct Inertia {
    int m_minus = 0;
    int m_plus = 0;
};

/// The scalar product [x,y] = x^H B y together with the facts about B that
/// were verified at construction. Treat as immutable; rebuild via make_product.
struct IndefiniteProduct {
    ComplexMatrix B;
    ProductKind kind = ProductKind::Hermitian;
    bool is_unitary = false;   ///< B^H B = I within eq_tol scale
    Inertia inertia;           ///< meaningful for the Hermitian kind only
    ComplexMatrix B_inv;       ///< cached inverse; adjoint() is called in inner loops
    double norm_B = 0.0;
    ToleranceConfig cfg;       ///< tolerances the product was verified under

    Eigen::Index size() const { return B.rows(); }
};

/// Validates B (square, finite, nonsingular, Hermitian or skew-Hermitian
/// within eq_tol * ||B||) and caches its inverse, norm, kind and inertia.
/// Throws UnsupportedFormError / SingularMatrixError / DimensionError.
IndefiniteProduct make_product(const ComplexMatrix& B, const ToleranceConfig& cfg = {});

/// The adjoint of A with respect to [.,.]: B^{-1} A^H B.
ComplexMatrix adjoint(const ComplexMatrix& A, const IndefiniteProduct& P);

/// Q with Q^H B Q = diag(-I_{m-}, I_{m+}), negative directions first.
/// Hermitian kind only; the congruence residual is re-checked after construction.
ComplexMatrix sylvester_congruence(const IndefiniteProduct& P);

/// For skew-Hermitian B, the Hermitian product with matrix iB. Membership in
/// all four structure classes is the same for B and iB.
IndefiniteProduct hermitize(const IndefiniteProduct& P);

}  // namespace bmat
