#include "bmat/cayley.hpp"

#include "bmat/classes.hpp"
#include "bmat/spectral.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace bmat {

void CayleyParams::validate(const ToleranceConfig& cfg) const {
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) ||
        !std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
        throw PreconditionError("CayleyParams: parameters must be finite");
    if (w.imag() == 0.0)
        throw PreconditionError("CayleyParams: w must be nonreal");
    if (std::abs(std::abs(alpha) - 1.0) > std::max(cfg.eq_tol, 1e-14))
        throw PreconditionError("CayleyParams: |alpha| must equal 1");
}

namespace {

double spectrum_distance(const ComplexMatrix& M, Complex z) {
    double d = std::numeric_limits<double>::infinity();
    for (Complex ev : eigenvalues(M)) d = std::min(d, std::abs(ev - z));
    return d;
}

}  // namespace

ComplexMatrix cayley_to_unitary(const ComplexMatrix& A, const IndefiniteProduct& P,
                                const CayleyParams& prm, const ToleranceConfig& cfg) {
    cfg.validate();
    prm.validate(cfg);
    if (!classify(A, P, cfg).is(StructureClass::J))
        throw PreconditionError("cayley_to_unitary: input must be selfadjoint within tolerance");
    if (spectrum_distance(A, prm.w) <= cfg.gap_tol)
        throw PreconditionError("cayley_to_unitary: w is (numerically) in the spectrum of A");
    const Eigen::Index n = A.rows();
    const ComplexMatrix I = ComplexMatrix::Identity(n, n);
    // resolvent factors commute: alpha (A - conj(w)) (A - w)^{-1} = alpha (A - w)^{-1} (A - conj(w))
    return prm.alpha * solve(ComplexMatrix(A - prm.w * I), ComplexMatrix(A - std::conj(prm.w) * I), cfg);
}

ComplexMatrix cayley_to_selfadjoint(const ComplexMatrix& U, const IndefiniteProduct& P,
                                    const CayleyParams& prm, const ToleranceConfig& cfg) {
    cfg.validate();
    prm.validate(cfg);
    if (!classify(U, P, cfg).is(StructureClass::G))
        throw PreconditionError("cayley_to_selfadjoint: input must be in the automorphism group");
    if (spectrum_distance(U, prm.alpha) <= cfg.gap_tol)
        throw PreconditionError("cayley_to_selfadjoint: alpha is (numerically) in the spectrum of U");
    const Eigen::Index n = U.rows();
    const ComplexMatrix I = ComplexMatrix::Identity(n, n);
    return solve(ComplexMatrix(U - prm.alpha * I),
                 ComplexMatrix(prm.w * U - std::conj(prm.w) * prm.alpha * I), cfg);
}

Complex pick_alpha(const ComplexMatrix& U) {
    std::vector<Complex> ev = eigenvalues(U);
    constexpr int grid = 720;
    double best_score = -1.0;
    Complex best = 1.0;
    for (int j = 0; j < grid; ++j) {
        double theta = 2.0 * std::numbers::pi * j / grid;
        Complex a(std::cos(theta), std::sin(theta));
        double score = std::numeric_limits<double>::infinity();
        for (Complex l : ev) score = std::min(score, std::abs(a - l));
        if (score > best_score) {  // strict: first maximiser wins ties
            best_score = score;
            best = a;
        }
    }
    return best;
}

DensifyResult densify_G(const ComplexMatrix& G, const IndefiniteProduct& P, double eps,
                        const ToleranceConfig& cfg) {
    cfg.validate();
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw PreconditionError("densify_G: eps must be positive and finite");
    if (!classify(G, P, cfg).is(StructureClass::G))
        throw PreconditionError("densify_G: input not in the automorphism group within tolerance");

    CayleyParams prm;
    prm.w = Complex(0.0, 1.0);
    prm.alpha = pick_alpha(G);
    const ComplexMatrix A = cayley_to_selfadjoint(G, P, prm, cfg);

    DensifyResult best;
    double best_dist = std::numeric_limits<double>::infinity();
    bool have_best = false;
    for (int k = 1; k <= 40; ++k) {
        const double delta = std::ldexp(1.0, -k);
        DensifyResult inner;
        try {
            inner = densify_J(A, P, delta, cfg);
        } catch (const DensifyFailure&) {
            continue;
        }
        // w must stay clear of the perturbed spectrum for the push-forward
        if (spectrum_distance(inner.perturbed, prm.w) <= cfg.gap_tol) continue;
        ComplexMatrix F = cayley_to_unitary(inner.perturbed, P, prm, cfg);
        detail::AssessedCandidate cand =
            detail::assess(G, std::move(F), inner.c_used, P, StructureClass::G, cfg);
        if (cand.ok && cand.res.distance < eps) return std::move(cand.res);
        if (cand.res.distance < best_dist) {
            best_dist = cand.res.distance;
            best = std::move(cand.res);
            have_best = true;
        }
    }
    if (!have_best) best.perturbed = G;
    throw DensifyFailure("densify_G: halving budget exhausted without a certified candidate",
                         std::move(best));
}

}  // namespace bmat
