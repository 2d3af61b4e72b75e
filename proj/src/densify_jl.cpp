#include "bmat/densify_jl.hpp"

#include "bmat/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <vector>

namespace bmat {

namespace detail {
double jitter(int m) {
    constexpr double phi = 0.61803398874989484820;  // 1/golden ratio
    double f = (m + 1) * phi;
    f -= std::floor(f);
    return 0.5 + 0.5 * f;
}
}  // namespace detail

namespace detail {

AssessedCandidate assess(const ComplexMatrix& ref, ComplexMatrix cand_m, Complex c,
                         const IndefiniteProduct& P, StructureClass which,
                         const ToleranceConfig& cfg) {
    AssessedCandidate cand;
    DensifyResult& r = cand.res;
    r.c_used = c;
    r.distance = two_norm(ComplexMatrix(ref - cand_m));
    StructureReport rep = classify(cand_m, P, cfg);
    switch (which) {
        case StructureClass::J: r.class_residual = rep.res_J; break;
        case StructureClass::L: r.class_residual = rep.res_L; break;
        case StructureClass::G: r.class_residual = rep.res_G; break;
        case StructureClass::N: r.class_residual = rep.res_N; break;
    }
    std::vector<Complex> ev = eigenvalues(cand_m);
    r.log_discriminant = log_abs_discriminant(ev);
    r.discriminant_mag = std::exp(r.log_discriminant);
    double g = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < ev.size(); ++k)
        for (size_t j = k + 1; j < ev.size(); ++j)
            g = std::min(g, std::abs(ev[k] - ev[j]));
    r.min_gap = g;

    const double npairs = static_cast<double>(ev.size()) * static_cast<double>(ev.size() - 1);
    const double disc_floor = (npairs > 0 && cfg.gap_tol > 0)
                                  ? npairs * std::log(cfg.gap_tol)
                                  : -std::numeric_limits<double>::infinity();
    // class N promises diagonalizability, not distinct eigenvalues; the gap
    // certificates apply to the other three classes only
    const bool need_gap = which != StructureClass::N;
    cand.ok = rep.is(which) && is_diagonalizable(cand_m, cfg) &&
              (!need_gap || (r.min_gap > cfg.gap_tol && r.log_discriminant > disc_floor));
    r.perturbed = std::move(cand_m);
    return cand;
}

}  // namespace detail

namespace {

using detail::AssessedCandidate;
using detail::assess;

DensifyResult densify_selfadjoint_kind(const ComplexMatrix& A, const IndefiniteProduct& P,
                                       double eps, const ToleranceConfig& cfg, int threads,
                                       StructureClass which) {
    cfg.validate();
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw PreconditionError("densify: eps must be positive and finite");
    StructureReport rep0 = classify(A, P, cfg);
    if (!rep0.is(which))
        throw PreconditionError(std::string("densify: input not in class ") + to_string(which) +
                                " within tolerance");

    // E lives in the target class for iB as well as B (the adjoints coincide)
    ComplexMatrix E;
    if (P.kind == ProductKind::SkewHermitian) {
        IndefiniteProduct Ph = hermitize(P);
        E = (which == StructureClass::J) ? distinct_element_J(Ph) : distinct_element_L(Ph);
    } else {
        E = (which == StructureClass::J) ? distinct_element_J(P) : distinct_element_L(P);
    }
    const double nE = two_norm(E);
    const double base = eps / nE;

    auto try_m = [&](int m) -> AssessedCandidate {
        double c = base * std::ldexp(detail::jitter(m), 1 - m);  // |c| <= eps / ||E||
        return assess(A, ComplexMatrix(A + c * E), Complex(c), P, which, cfg);
    };

    DensifyResult best;
    double best_gap = -1.0;
    const int batch = std::max(1, threads);
    for (int m0 = 1; m0 <= 64; m0 += batch) {
        std::vector<AssessedCandidate> cands;
        const int m_end = std::min(m0 + batch, 65);
        if (batch == 1) {
            cands.push_back(try_m(m0));
        } else {
            std::vector<std::future<AssessedCandidate>> futs;
            for (int m = m0; m < m_end; ++m)
                futs.push_back(std::async(std::launch::async, try_m, m));
            for (auto& f : futs) cands.push_back(f.get());
        }
        for (auto& cand : cands) {
            if (cand.ok) return std::move(cand.res);
            if (cand.res.min_gap > best_gap) {
                best_gap = cand.res.min_gap;
                best = std::move(cand.res);
            }
        }
    }
    throw DensifyFailure("densify: coefficient search exhausted 64 trials", std::move(best));
}

}  // namespace

ComplexMatrix distinct_element_J(const IndefiniteProduct& P) {
    ComplexMatrix Q = sylvester_congruence(P);  // Hermitian kind enforced here
    const Eigen::Index n = P.size();
    ComplexVector d(n);
    for (Eigen::Index i = 0; i < n; ++i) d(i) = Complex(static_cast<double>(i + 1), 0.0);
    // E = Q diag(1..n) Q^{-1} is selfadjoint: Q^H B Q and the diagonal are
    // both real diagonal, so B E = (Q^{-H} D_pm D Q^{-1}) is Hermitian.
    ComplexMatrix Qinv = solve(Q, ComplexMatrix::Identity(n, n), P.cfg);
    return Q * d.asDiagonal() * Qinv;
}

ComplexMatrix distinct_element_L(const IndefiniteProduct& P) {
    return Complex(0, 1) * distinct_element_J(P);
}

DensifyResult densify_J(const ComplexMatrix& A, const IndefiniteProduct& P, double eps,
                        const ToleranceConfig& cfg, int threads) {
    return densify_selfadjoint_kind(A, P, eps, cfg, threads, StructureClass::J);
}

DensifyResult densify_L(const ComplexMatrix& A, const IndefiniteProduct& P, double eps,
                        const ToleranceConfig& cfg, int threads) {
    return densify_selfadjoint_kind(A, P, eps, cfg, threads, StructureClass::L);
}

std::pair<ComplexMatrix, ComplexMatrix> sum_of_two(const ComplexMatrix& A,
                                                   const IndefiniteProduct& P,
                                                   StructureClass which,
                                                   const ToleranceConfig& cfg) {
    cfg.validate();
    if (which != StructureClass::J && which != StructureClass::L)
        throw PreconditionError("sum_of_two: decomposition is defined for classes J and L");
    StructureReport rep0 = classify(A, P, cfg);
    if (!rep0.is(which))
        throw PreconditionError(std::string("sum_of_two: input not in class ") +
                                to_string(which) + " within tolerance");

    ComplexMatrix E;
    if (P.kind == ProductKind::SkewHermitian) {
        IndefiniteProduct Ph = hermitize(P);
        E = (which == StructureClass::J) ? distinct_element_J(Ph) : distinct_element_L(Ph);
    } else {
        E = (which == StructureClass::J) ? distinct_element_J(P) : distinct_element_L(P);
    }
    const double nE = two_norm(E);
    const double scale = std::max(1.0, two_norm(A)) / nE;
    const ComplexMatrix zero = ComplexMatrix::Zero(A.rows(), A.cols());

    DensifyResult best;
    double best_gap = -1.0;
    for (int m = 1; m <= 64; ++m) {
        double c = scale * std::ldexp(detail::jitter(m), 1 - m);
        AssessedCandidate x = assess(A, ComplexMatrix(A + c * E), Complex(c), P, which, cfg);
        if (x.ok) {
            AssessedCandidate y = assess(zero, ComplexMatrix(-c * E), Complex(-c), P, which, cfg);
            if (y.ok) return {std::move(x.res.perturbed), std::move(y.res.perturbed)};
        }
        if (x.res.min_gap > best_gap) {
            best_gap = x.res.min_gap;
            best = std::move(x.res);
        }
    }
    throw DensifyFailure("sum_of_two: coefficient search exhausted 64 trials", std::move(best));
}

std::array<ComplexMatrix, 4> sum_of_four(const ComplexMatrix& A, const IndefiniteProduct& P,
                                         const ToleranceConfig& cfg) {
    auto [S, K] = toeplitz_split(A, P);
    auto [x1, x2] = sum_of_two(S, P, StructureClass::J, cfg);
    auto [x3, x4] = sum_of_two(K, P, StructureClass::L, cfg);
    return {std::move(x1), std::move(x2), std::move(x3), std::move(x4)};
}

}  // namespace bmat
