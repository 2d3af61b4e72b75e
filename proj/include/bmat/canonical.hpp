#pragma once

#include "bmat/core.hpp"
#include "bmat/product.hpp"

#include <vector>

namespace bmat {

/// One Jordan block of the pair form. Real-eigenvalue blocks carry a sign
/// eta = +-1; nonreal blocks represent the conjugate pair
/// J_k(lambda) + J_k(conj lambda) (size = 2k) and carry no sign.
struct CanonicalBlock {
    int size = 0;          ///< p for real blocks, 2*ktilde for nonreal pairs
    Complex eigenvalue;    ///< real-part-only for real blocks; Im > 0 representative otherwise
    bool real_eigenvalue = true;
    int eta = 0;           ///< +-1 for real blocks, 0 for pairs
};

/// T^{-1} A T = J (Jordan), T^H B T = the sign-decorated reversal pattern:
/// eta_k R_p per real block, R_{2k} per nonreal pair. Blocks are ordered:
/// real eigenvalues ascending, then pairs by (Re, Im) of the upper
/// representative; within a cluster descending size, then eta +1 first.
struct CanonicalPairForm {
    ComplexMatrix T;
    ComplexMatrix J;
    std::vector<CanonicalBlock> blocks;
    double residual_A = 0.0;  ///< ||T^{-1} A T - J||
    double residual_B = 0.0;  ///< ||T^H B T - B_canonical||
    double cond_T = 0.0;

    /// The target form of B: direct sum of eta_k R_p and R_{2k} blocks.
    ComplexMatrix target_B() const;
    std::vector<int> block_sizes() const;
    std::vector<int> etas() const;  ///< real blocks only, in block order
};

/// Jordan chains of a selfadjoint matrix, B-normalised so that the pair
/// (A, B) is carried to the canonical pair form. Output is certified:
/// residual_A <= cluster_tol * (1+||A||) * cond(T) and
/// residual_B <= cluster_tol * ||B|| * cond(T)^2, else StructureError.
/// Eigenvalues closer than cluster_tol * (1+||A||) are treated as one; pick
/// cluster_tol above the expected splay (~eps^(1/k) for size-k blocks).
CanonicalPairForm canonical_pair_form(const ComplexMatrix& A, const IndefiniteProduct& P,
                                      const ToleranceConfig& cfg);

/// A 1-regular selfadjoint C commuting with A: distinct integers on the real
/// blocks of A's canonical form, k + i on the k-th nonreal pair, transported
/// back through T. Certified (commutation, class residual, 1-regularity).
ComplexMatrix commuting_one_regular(const ComplexMatrix& A, const IndefiniteProduct& P,
                                    const ToleranceConfig& cfg);

/// J_n(lambda): lambda on the diagonal, ones on the superdiagonal.
ComplexMatrix jordan_block(Eigen::Index n, Complex lambda);

/// Reversal matrix R_n (ones on the antidiagonal).
ComplexMatrix reverse_identity(Eigen::Index n);

}  // namespace bmat
