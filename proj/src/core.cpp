#include "bmat/core.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <limits>

namespace bmat {

void ToleranceConfig::validate() const {
    for (double t : {eq_tol, rank_tol, gap_tol, cluster_tol})
        if (!(t >= 0.0) || !std::isfinite(t))
            throw Error("ToleranceConfig: thresholds must be finite and nonnegative");
}

bool all_finite(const ComplexMatrix& A) {
    return A.allFinite();
}

double two_norm(const ComplexMatrix& A) {
    if (A.rows() == 0 || A.cols() == 0)
        throw DimensionError("two_norm: empty matrix");
    Eigen::JacobiSVD<ComplexMatrix> svd(A);
    return svd.singularValues()(0);
}

ComplexMatrix solve(const ComplexMatrix& A, const ComplexMatrix& Y, const ToleranceConfig& cfg) {
    cfg.validate();
    if (A.rows() == 0 || A.rows() != A.cols())
        throw DimensionError("solve: A must be square and nonempty");
    if (A.rows() != Y.rows())
        throw DimensionError("solve: row count of Y does not match A");
    Eigen::JacobiSVD<ComplexMatrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(0) == 0.0 || sv(sv.size() - 1) <= cfg.rank_tol * sv(0))
        throw SingularMatrixError("solve: matrix numerically singular");
    return svd.solve(Y);
}

std::vector<Complex> eigenvalues(const ComplexMatrix& A) {
    if (A.rows() == 0 || A.rows() != A.cols())
        throw DimensionError("eigenvalues: matrix must be square and nonempty");
    if (!all_finite(A))
        throw DimensionError("eigenvalues: non-finite entries");
    Eigen::ComplexEigenSolver<ComplexMatrix> es(A, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw Error("eigenvalues: eigensolver did not converge");
    const ComplexVector& v = es.eigenvalues();
    return std::vector<Complex>(v.data(), v.data() + v.size());
}

double cond_2(const ComplexMatrix& A) {
    if (A.rows() == 0 || A.cols() == 0)
        throw DimensionError("cond_2: empty matrix");
    Eigen::JacobiSVD<ComplexMatrix> svd(A);
    const auto& sv = svd.singularValues();
    double smin = sv(sv.size() - 1);
    if (smin == 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / smin;
}

Eigen::Index numerical_rank(const ComplexMatrix& A, double rank_tol) {
    if (A.rows() == 0 || A.cols() == 0)
        throw DimensionError("numerical_rank: empty matrix");
    Eigen::JacobiSVD<ComplexMatrix> svd(A);
    const auto& sv = svd.singularValues();
    if (sv(0) == 0.0) return 0;
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > rank_tol * sv(0)) ++r;
    return r;
}

}  // namespace bmat
