#pragma once

#include "bmat/core.hpp"
#include "bmat/densify_jl.hpp"
#include "bmat/product.hpp"

namespace bmat {

/// Parameters of the Moebius map between selfadjoint matrices and the
/// automorphism group: w nonreal, |alpha| = 1.
struct CayleyParams {
    Complex w = Complex(0.0, 1.0);
    Complex alpha = Complex(1.0, 0.0);

    void validate(const ToleranceConfig& cfg) const;
};

/// U = alpha (A - conj(w) I)(A - w I)^{-1}; maps selfadjoint A (w not an
/// eigenvalue) into the automorphism group of B. The two resolvent factors
/// commute, so U is computed as a single linear solve.
ComplexMatrix cayley_to_unitary(const ComplexMatrix& A, const IndefiniteProduct& P,
                                const CayleyParams& prm, const ToleranceConfig& cfg);

/// Inverse map: A = (w U - conj(w) alpha I)(U - alpha I)^{-1}; needs alpha
/// outside the spectrum of U.
ComplexMatrix cayley_to_selfadjoint(const ComplexMatrix& U, const IndefiniteProduct& P,
                                    const CayleyParams& prm, const ToleranceConfig& cfg);

/// Unit-modulus alpha maximising the distance to the spectrum of U over a
/// fixed 720-point grid; ties broken by the first maximiser. Deterministic.
Complex pick_alpha(const ComplexMatrix& U);

/// Perturbs an automorphism-group member within eps to one with distinct
/// eigenvalues, staying in the group: pull back to a selfadjoint matrix,
/// densify it with a halving budget, push forward, certify.
DensifyResult densify_G(const ComplexMatrix& G, const IndefiniteProduct& P, double eps,
                        const ToleranceConfig& cfg);

}  // namespace bmat
