#pragma once

#include "bmat/classes.hpp"
#include "bmat/core.hpp"
#include "bmat/product.hpp"

#include <array>
#include <utility>

namespace bmat {

/// A certified perturbation: the matrix, how far it moved, the residual of the
/// structure equation it must satisfy, and the distinctness evidence.
struct DensifyResult {
    ComplexMatrix perturbed;
    double distance = 0.0;          ///< ||A - perturbed||_2
    double class_residual = 0.0;    ///< residual of the relevant structure equation
    double discriminant_mag = 0.0;  ///< |prod_{k != j} (lambda_k - lambda_j)|, may underflow to 0
    double log_discriminant = 0.0;  ///< log of the same product, safe for large n
    double min_gap = 0.0;           ///< smallest pairwise eigenvalue distance
    Complex c_used = 0.0;           ///< accepted perturbation coefficient
};

/// Search budget exhausted; carries the best candidate seen and the stage name.
class DensifyFailure : public ConvergenceError {
  public:
    DensifyFailure(const std::string& msg, DensifyResult best_seen)
        : ConvergenceError(msg), best(std::move(best_seen)) {}
    DensifyResult best;
};

/// A selfadjoint matrix with n distinct real eigenvalues 1..n, built from the
/// Sylvester basis of B: E = Q diag(1..n) Q^{-1} with Q^H B Q = diag(+-1).
/// Hermitian kind required (hermitize first; the classes coincide).
ComplexMatrix distinct_element_J(const IndefiniteProduct& P);

/// i * distinct_element_J: skewadjoint with distinct eigenvalues i, 2i, ..., ni.
ComplexMatrix distinct_element_L(const IndefiniteProduct& P);

/// Perturbs a selfadjoint A within ||.||_2 distance eps to a selfadjoint matrix
/// with distinct eigenvalues (hence diagonalizable). Deterministic halving
/// search over the coefficient, at most 64 trials; throws DensifyFailure with
/// the best candidate if none certifies. threads > 1 evaluates candidate
/// batches in parallel with first-index selection (bit-identical results).
DensifyResult densify_J(const ComplexMatrix& A, const IndefiniteProduct& P, double eps,
                        const ToleranceConfig& cfg, int threads = 1);

/// Skewadjoint counterpart of densify_J.
DensifyResult densify_L(const ComplexMatrix& A, const IndefiniteProduct& P, double eps,
                        const ToleranceConfig& cfg, int threads = 1);

/// Writes A in the named class (J or L) as X + Y with both summands in the
/// class and each certified to have distinct eigenvalues.
std::pair<ComplexMatrix, ComplexMatrix> sum_of_two(const ComplexMatrix& A,
                                                   const IndefiniteProduct& P,
                                                   StructureClass which,
                                                   const ToleranceConfig& cfg);

/// Splits any square A into four diagonalizable matrices, two selfadjoint and
/// two skewadjoint, via the Toeplitz decomposition of A.
std::array<ComplexMatrix, 4> sum_of_four(const ComplexMatrix& A, const IndefiniteProduct& P,
                                         const ToleranceConfig& cfg);

namespace detail {
/// Fixed low-discrepancy jitter in (0.5, 1]: frac((m+1) * phi) mapped affinely.
double jitter(int m);

struct AssessedCandidate {
    DensifyResult res;
    bool ok = false;
};

/// Certificates for a perturbation candidate against the named class:
/// distance to ref, structure residual, min gap above gap_tol, log-discriminant
/// above n(n-1) log(gap_tol), diagonalizability. Shared by all densifiers.
AssessedCandidate assess(const ComplexMatrix& ref, ComplexMatrix cand, Complex c,
                         const IndefiniteProduct& P, StructureClass which,
                         const ToleranceConfig& cfg);
}  // namespace detail

}  // namespace bmat
