#pragma once

// Reference implementations used to cross-check library results. Each one
// recomputes its quantity through a different route than the library path it
// checks; clarity beats speed here.

#include <bmat/core.hpp>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

using bmat::Complex;
using bmat::ComplexMatrix;

// Trace-recursion characteristic polynomial, ascending coefficients with
// coeffs[n] = 1.
inline std::vector<Complex> char_poly(const ComplexMatrix& A) {
    const Eigen::Index n = A.rows();
    std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
    c[static_cast<std::size_t>(n)] = 1.0;
    ComplexMatrix M = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        M = A * M + c[static_cast<std::size_t>(n - k + 1)] * ComplexMatrix::Identity(n, n);
        c[static_cast<std::size_t>(n - k)] = -(A * M).trace() / static_cast<double>(k);
    }
    return c;
}

// Determinant of the Sylvester matrix of a monic p and its derivative. For
// monic p this equals prod_i p'(lambda_i), the same signed double product of
// root differences the library reports as the discriminant.
inline Complex resultant_discriminant(const std::vector<Complex>& p) {
    const int n = static_cast<int>(p.size()) - 1;
    std::vector<Complex> dp(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k)
        dp[static_cast<std::size_t>(k - 1)] = static_cast<double>(k) * p[static_cast<std::size_t>(k)];
    const int m = n - 1;
    ComplexMatrix S = ComplexMatrix::Zero(n + m, n + m);
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) S(r, r + k) = p[static_cast<std::size_t>(n - k)];
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) S(m + r, r + k) = dp[static_cast<std::size_t>(m - k)];
    return S.determinant();
}

inline Complex discriminant(const ComplexMatrix& A) {
    return resultant_discriminant(char_poly(A));
}

inline Eigen::Index svd_rank(const ComplexMatrix& A, double tol) {
    Eigen::JacobiSVD<ComplexMatrix> svd(A);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    Eigen::Index r = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k)
        if (s(k) > tol * s(0)) ++r;
    return r;
}

// Jordan-structure route to nonderogatority: cluster the eigenvalues
// transitively, then demand geometric multiplicity n - rank(A - mu I) == 1
// for every cluster.
inline bool one_regular(const ComplexMatrix& A, double radius, double rank_tol) {
    const Eigen::Index n = A.rows();
    Eigen::ComplexEigenSolver<ComplexMatrix> es(A, /*computeEigenvectors=*/false);
    std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::vector<bool> used(ev.size(), false);
    for (std::size_t i = 0; i < ev.size(); ++i) {
        if (used[i]) continue;
        std::vector<std::size_t> members{i};
        used[i] = true;
        for (std::size_t q = 0; q < members.size(); ++q)
            for (std::size_t j = 0; j < ev.size(); ++j)
                if (!used[j] && std::abs(ev[j] - ev[members[q]]) <= radius) {
                    used[j] = true;
                    members.push_back(j);
                }
        Complex mu = 0.0;
        for (std::size_t j : members) mu += ev[j];
        mu /= static_cast<double>(members.size());
        const ComplexMatrix shifted = A - mu * ComplexMatrix::Identity(n, n);
        if (n - svd_rank(shifted, rank_tol) != 1) return false;
    }
    return true;
}

// Multiset comparison of spectra, up to a per-eigenvalue tolerance.
inline double spectrum_distance(std::vector<Complex> a, std::vector<Complex> b) {
    auto key = [](const Complex& x, const Complex& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    };
    std::sort(a.begin(), a.end(), key);
    std::sort(b.begin(), b.end(), key);
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    return worst;
}

}  // namespace oracle
