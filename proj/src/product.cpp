#include "bmat/product.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace bmat {

IndefiniteProduct make_product(const ComplexMatrix& B, const ToleranceConfig& cfg) {
    cfg.validate();
    if (B.rows() == 0 || B.rows() != B.cols())
        throw DimensionError("make_product: B must be square and nonempty");
    if (!all_finite(B))
        throw DimensionError("make_product: B has non-finite entries");

    IndefiniteProduct P;
    P.B = B;
    P.cfg = cfg;
    P.norm_B = two_norm(B);
    if (P.norm_B == 0.0)
        throw SingularMatrixError("make_product: B is zero");

    double herm_res = two_norm(ComplexMatrix(B - B.adjoint()));
    double skew_res = two_norm(ComplexMatrix(B + B.adjoint()));
    if (herm_res <= cfg.eq_tol * P.norm_B)
        P.kind = ProductKind::Hermitian;
    else if (skew_res <= cfg.eq_tol * P.norm_B)
        P.kind = ProductKind::SkewHermitian;
    else
        throw UnsupportedFormError("make_product: B is neither Hermitian nor skew-Hermitian within tolerance");

    // Nonsingularity and inertia from the Hermitian representative H:
    // H = B for the Hermitian kind, H = iB for the skew kind.
    ComplexMatrix H = (P.kind == ProductKind::Hermitian) ? B : ComplexMatrix(Complex(0, 1) * B);
    H = 0.5 * (H + H.adjoint());  // strip the antihermitian rounding residue
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(H);
    if (es.info() != Eigen::Success)
        throw Error("make_product: eigensolver failed on the Hermitian representative");
    const Eigen::VectorXd& ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (std::abs(ev(i)) <= cfg.rank_tol * P.norm_B)
            throw SingularMatrixError("make_product: B is numerically singular (degenerate form)");
        if (ev(i) < 0) ++P.inertia.m_minus; else ++P.inertia.m_plus;
    }
    if (P.kind == ProductKind::SkewHermitian)
        P.inertia = Inertia{};  // signature is a property of the hermitized form

    P.is_unitary = two_norm(ComplexMatrix(B.adjoint() * B - ComplexMatrix::Identity(B.rows(), B.cols())))
                   <= cfg.eq_tol * (1.0 + P.norm_B * P.norm_B);
    P.B_inv = solve(B, ComplexMatrix::Identity(B.rows(), B.cols()), cfg);
    return P;
}

ComplexMatrix adjoint(const ComplexMatrix& A, const IndefiniteProduct& P) {
    if (A.rows() != A.cols() || A.rows() != P.size())
        throw DimensionError("adjoint: A must be square and match the product size");
    return P.B_inv * A.adjoint() * P.B;
}

ComplexMatrix sylvester_congruence(const IndefiniteProduct& P) {
    if (P.kind != ProductKind::Hermitian)
        throw UnsupportedFormError("sylvester_congruence: Hermitian kind required (hermitize first)");
    const Eigen::Index n = P.size();
    ComplexMatrix H = 0.5 * (P.B + P.B.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(H);
    if (es.info() != Eigen::Success)
        throw Error("sylvester_congruence: eigensolver failed");
    // Ascending eigenvalues put every negative direction before the positive ones.
    Eigen::VectorXd scale(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double a = std::abs(es.eigenvalues()(i));
        if (a <= P.cfg.rank_tol * P.norm_B)
            throw SingularMatrixError("sylvester_congruence: degenerate form");
        scale(i) = 1.0 / std::sqrt(a);
    }
    ComplexMatrix Q = es.eigenvectors() * scale.asDiagonal();

    ComplexMatrix D = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        D(i, i) = es.eigenvalues()(i) < 0 ? -1.0 : 1.0;
    if (two_norm(ComplexMatrix(Q.adjoint() * P.B * Q - D)) > P.cfg.eq_tol * std::max(1.0, P.norm_B))
        throw StructureError("sylvester_congruence: congruence residual check failed");
    return Q;
}

IndefiniteProduct hermitize(const IndefiniteProduct& P) {
    if (P.kind != ProductKind::SkewHermitian)
        throw UnsupportedFormError("hermitize: skew-Hermitian kind required");
    return make_product(ComplexMatrix(Complex(0, 1) * P.B), P.cfg);
}

}  // namespace bmat
