#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace bmat {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Numerical contract shared by every operation in the library.
/// All thresholds are relative; each operation documents the scale factor
/// it multiplies them by.
struct ToleranceConfig {
    double eq_tol = 1e-10;      ///< residual threshold for structure equations
    double rank_tol = 1e-8;     ///< relative singular-value cutoff for rank decisions
    double gap_tol = 1e-8;      ///< smallest eigenvalue separation counted as distinct
    double cluster_tol = 1e-6;  ///< eigenvalue clustering radius for Jordan analysis

    /// Throws Error if any threshold is negative or non-finite.
    void validate() const;
};

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Shape mismatch, empty input, or non-finite entries.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// Matrix numerically singular where an inverse (or a nondegenerate form) is required.
class SingularMatrixError : public Error {
  public:
    using Error::Error;
};

/// B is not Hermitian or skew-Hermitian within tolerance, or the wrong kind
/// of product was passed to a kind-restricted operation.
class UnsupportedFormError : public Error {
  public:
    using Error::Error;
};

/// Input fails a documented precondition (wrong class membership, bad parameter).
class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// Iterative search exhausted its trial budget.
class ConvergenceError : public Error {
  public:
    using Error::Error;
};

/// Structure recovery produced inconsistent or degenerate data
/// (non-monotone chain ranks, degenerate pairings, failed residual checks).
class StructureError : public Error {
  public:
    using Error::Error;
};

/// Malformed file or JSON payload.
class IoError : public Error {
  public:
    using Error::Error;
};

/// Largest singular value. Throws DimensionError on empty input.
double two_norm(const ComplexMatrix& A);

/// Solves A X = Y for square A via SVD. Throws SingularMatrixError when the
/// smallest singular value of A is at most rank_tol times the largest.
ComplexMatrix solve(const ComplexMatrix& A, const ComplexMatrix& Y,
                    const ToleranceConfig& cfg = {});

/// Eigenvalues with algebraic multiplicity, in solver order.
std::vector<Complex> eigenvalues(const ComplexMatrix& A);

/// sigma_max / sigma_min; +inf when sigma_min underflows to zero.
double cond_2(const ComplexMatrix& A);

/// Number of singular values exceeding rank_tol * sigma_max.
Eigen::Index numerical_rank(const ComplexMatrix& A, double rank_tol);

/// True when every entry is finite.
bool all_finite(const ComplexMatrix& A);

}  // namespace bmat
