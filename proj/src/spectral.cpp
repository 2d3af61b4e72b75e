#include "bmat/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bmat {

CharPoly char_poly(const ComplexMatrix& A) {
    if (A.rows() == 0 || A.rows() != A.cols())
        throw DimensionError("char_poly: matrix must be square and nonempty");
    const Eigen::Index n = A.rows();
    CharPoly p;
    p.coeffs.assign(static_cast<size_t>(n) + 1, Complex(0.0));
    p.coeffs[0] = 1.0;
    ComplexMatrix M = ComplexMatrix::Identity(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        ComplexMatrix AM = A * M;
        Complex c = -AM.trace() / static_cast<double>(k);
        p.coeffs[static_cast<size_t>(k)] = c;
        M = AM + c * ComplexMatrix::Identity(n, n);
    }
    return p;
}

Complex discriminant(const ComplexMatrix& A) {
    std::vector<Complex> ev = eigenvalues(A);
    Complex d = 1.0;
    for (size_t k = 0; k < ev.size(); ++k)
        for (size_t j = 0; j < ev.size(); ++j)
            if (k != j) d *= ev[k] - ev[j];
    return d;
}

double log_abs_discriminant(const std::vector<Complex>& eigs) {
    double acc = 0.0;
    for (size_t k = 0; k < eigs.size(); ++k)
        for (size_t j = 0; j < eigs.size(); ++j)
            if (k != j) {
                double d = std::abs(eigs[k] - eigs[j]);
                if (d == 0.0) return -std::numeric_limits<double>::infinity();
                acc += std::log(d);
            }
    return acc;
}

double min_eig_gap(const ComplexMatrix& A) {
    std::vector<Complex> ev = eigenvalues(A);
    if (ev.size() < 2) return std::numeric_limits<double>::infinity();
    double g = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < ev.size(); ++k)
        for (size_t j = k + 1; j < ev.size(); ++j)
            g = std::min(g, std::abs(ev[k] - ev[j]));
    return g;
}

ComplexMatrix krylov_matrix(const ComplexMatrix& A) {
    if (A.rows() == 0 || A.rows() != A.cols())
        throw DimensionError("krylov_matrix: matrix must be square and nonempty");
    const Eigen::Index n = A.rows();
    ComplexMatrix M(n * n, n);
    ComplexMatrix P = ComplexMatrix::Identity(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        M.col(k) = Eigen::Map<const ComplexVector>(P.data(), n * n);
        if (k + 1 < n) P = A * P;
    }
    return M;
}

bool is_one_regular(const ComplexMatrix& A, const ToleranceConfig& cfg) {
    cfg.validate();
    if (A.rows() == 0 || A.rows() != A.cols())
        throw DimensionError("is_one_regular: matrix must be square and nonempty");
    const Eigen::Index n = A.rows();
    double s = two_norm(A);
    if (s < 1e-300) return n == 1;  // A = 0: Krylov space is span(I)
    s = std::max(1.0, s);
    // powers of A/s keep every column at comparable scale for the rank test
    ComplexMatrix M(n * n, n);
    ComplexMatrix P = ComplexMatrix::Identity(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        M.col(k) = Eigen::Map<const ComplexVector>(P.data(), n * n);
        if (k + 1 < n) P = (A / s) * P;
    }
    return numerical_rank(M, cfg.rank_tol) == n;
}

std::vector<std::vector<int>> cluster_points(const std::vector<Complex>& pts, double radius) {
    const int n = static_cast<int>(pts.size());
    std::vector<int> label(n, -1);
    std::vector<std::vector<int>> groups;
    for (int i = 0; i < n; ++i) {
        if (label[i] >= 0) continue;
        int g = static_cast<int>(groups.size());
        groups.push_back({});
        std::vector<int> stack{i};
        label[i] = g;
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            groups[g].push_back(a);
            for (int b = 0; b < n; ++b)
                if (label[b] < 0 && std::abs(pts[a] - pts[b]) <= radius) {
                    label[b] = g;
                    stack.push_back(b);
                }
        }
        std::sort(groups[g].begin(), groups[g].end());
    }
    return groups;
}

bool is_diagonalizable(const ComplexMatrix& A, const ToleranceConfig& cfg) {
    cfg.validate();
    if (A.rows() == 0 || A.rows() != A.cols())
        throw DimensionError("is_diagonalizable: matrix must be square and nonempty");
    const Eigen::Index n = A.rows();
    if (n == 1) return true;
    std::vector<Complex> ev = eigenvalues(A);
    const double nA = two_norm(A);
    const double radius = cfg.cluster_tol * (1.0 + nA);
    // null directions of A - mu I are judged against the scale of A itself,
    // not of the shifted matrix (which is all noise when A ~ mu I)
    const double cutoff = cfg.rank_tol * std::max(1.0, nA);
    for (const auto& cluster : cluster_points(ev, radius)) {
        Complex mu = 0.0;
        for (int idx : cluster) mu += ev[static_cast<size_t>(idx)];
        mu /= static_cast<double>(cluster.size());
        ComplexMatrix shifted = A - mu * ComplexMatrix::Identity(n, n);
        Eigen::JacobiSVD<ComplexMatrix> svd(shifted);
        Eigen::Index gm = 0;
        for (Eigen::Index i = 0; i < n; ++i)
            if (svd.singularValues()(i) <= cutoff) ++gm;
        if (gm != static_cast<Eigen::Index>(cluster.size())) return false;
    }
    return true;
}

}  // namespace bmat
