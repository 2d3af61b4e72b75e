#pragma once

#include "bmat/classes.hpp"
#include "bmat/core.hpp"
#include "bmat/densify_jl.hpp"
#include "bmat/product.hpp"

#include <vector>

namespace bmat {

/// A = S - i * K_H with S and K_H selfadjoint and commuting (when A is normal).
struct NormalSplit {
    ComplexMatrix S;
    ComplexMatrix K_H;
    double commutator = 0.0;  ///< ||S K_H - K_H S||_2
};

/// Splits a B-normal matrix into commuting selfadjoint parts. The commutator
/// bound eq_tol * (1 + ||S||)(1 + ||K_H||) is verified, not assumed.
NormalSplit normal_split(const ComplexMatrix& A, const IndefiniteProduct& P,
                         const ToleranceConfig& cfg);

/// The least-squares fit cannot express M as a polynomial in S, so M lies
/// outside the centralizer of the 1-regular S (or upstream certification lied).
class NotInCentralizerError : public StructureError {
  public:
    NotInCentralizerError(const std::string& msg, double residual_seen)
        : StructureError(msg), residual(residual_seen) {}
    double residual = 0.0;
};

struct PolynomialFit {
    std::vector<Complex> coeffs;  ///< c_0 .. c_{n-1}, M ~ sum c_k S^k
    double residual = 0.0;        ///< ||p(S) - M||_2
    double commutator = 0.0;      ///< ||S M - M S||_2
    double krylov_cond = 0.0;     ///< conditioning of the scaled power basis
};

/// Fits M as a polynomial of degree < n in S. S must be 1-regular so that its
/// centralizer is exactly the polynomials in S; least squares over the scaled
/// Krylov basis. Throws NotInCentralizerError when the residual exceeds
/// rank_tol * (1 + ||M||) * min(krylov_cond, 1e6).
PolynomialFit fit_polynomial(const ComplexMatrix& S, const ComplexMatrix& M,
                             const ToleranceConfig& cfg);

/// Horner evaluation of c_0 I + c_1 X + ... at a matrix argument.
ComplexMatrix eval_polynomial(const std::vector<Complex>& coeffs, const ComplexMatrix& X);

/// (p(F) + p(F)^*) / 2. For selfadjoint F this equals the polynomial with
/// coefficients Re(c_k) applied to F, so it is selfadjoint and commutes with F.
ComplexMatrix realify_polynomial(const std::vector<Complex>& coeffs, const ComplexMatrix& F,
                                 const IndefiniteProduct& P);

/// Density of diagonalizable matrices in N(B) for unitary Hermitian B:
/// split A = S - i K_H, pick a 1-regular selfadjoint S_c = S + c E with
/// |c| <= eps / (4 ||E||) and K_H in its centralizer, fit K_H = p(S_c), then
/// delta-halve F = densify_J(S_c, delta) until ||S - F|| < eps/2 and
/// ||K_H - r(F)|| < eps/2, and return F - i r(F) with full certificates.
DensifyResult densify_N_unitary(const ComplexMatrix& A, const IndefiniteProduct& P, double eps,
                                const ToleranceConfig& cfg, int threads = 1);

/// General entry point: skew-Hermitian B is hermitized (membership in all four
/// classes coincides for B and iB), non-unitary B goes through the Sylvester
/// congruence with the inner budget deflated by cond(Q), and the result is
/// re-certified against the original pair. Throws DensifyFailure with the best
/// candidate when no certificate holds.
DensifyResult densify_N(const ComplexMatrix& A, const IndefiniteProduct& P, double eps,
                        const ToleranceConfig& cfg, int threads = 1);

}  // namespace bmat
