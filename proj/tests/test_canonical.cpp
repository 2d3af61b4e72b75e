#include <bmat/canonical.hpp>
#include <bmat/classes.hpp>
#include <bmat/generate.hpp>
#include <bmat/spectral.hpp>

#include "doctest.h"

#include <cmath>
#include <vector>

using namespace bmat;

namespace {

struct Synth {
    ComplexMatrix A;
    ComplexMatrix B;
};

// direct sum of real-eigenvalue chains (size, lambda, eta) followed by
// conjugate chain pairs (k, lambda with Im > 0)
Synth synth(const std::vector<std::tuple<int, double, int>>& reals,
            const std::vector<std::pair<int, Complex>>& pairs) {
    Eigen::Index n = 0;
    for (const auto& [p, lam, eta] : reals) n += p;
    for (const auto& [k, lam] : pairs) n += 2 * k;
    Synth s;
    s.A = ComplexMatrix::Zero(n, n);
    s.B = ComplexMatrix::Zero(n, n);
    Eigen::Index off = 0;
    for (const auto& [p, lam, eta] : reals) {
        s.A.block(off, off, p, p) = jordan_block(p, lam);
        s.B.block(off, off, p, p) = static_cast<double>(eta) * reverse_identity(p);
        off += p;
    }
    for (const auto& [k, lam] : pairs) {
        s.A.block(off, off, k, k) = jordan_block(k, lam);
        s.A.block(off + k, off + k, k, k) = jordan_block(k, std::conj(lam));
        s.B.block(off, off, 2 * k, 2 * k) = reverse_identity(2 * k);
        off += 2 * k;
    }
    return s;
}

void check_invariants(const CanonicalPairForm& f, const ComplexMatrix& A, const ComplexMatrix& B,
                      const ToleranceConfig& cfg) {
    // the reported residuals must match an independent recomputation up to
    // solver noise, and stay inside the certification bounds
    const double resA = two_norm(ComplexMatrix(solve(f.T, ComplexMatrix(A * f.T), cfg) - f.J));
    const double resB = two_norm(ComplexMatrix(f.T.adjoint() * B * f.T - f.target_B()));
    CHECK(resA <= 2.0 * f.residual_A + 1e-10 * (1.0 + two_norm(A)));
    CHECK(resB <= 2.0 * f.residual_B + 1e-10 * (1.0 + two_norm(B)));
    CHECK(f.residual_A <= cfg.cluster_tol * (1.0 + two_norm(A)) * f.cond_T);
    CHECK(f.residual_B <= cfg.cluster_tol * two_norm(B) * f.cond_T * f.cond_T);
}

}  // namespace

TEST_CASE("jordan_block and reverse_identity basics") {
    ComplexMatrix J = jordan_block(3, Complex(2.0, -1.0));
    CHECK(J(0, 0) == Complex(2.0, -1.0));
    CHECK(J(0, 1) == Complex(1.0));
    CHECK(J(1, 0) == Complex(0.0));
    ComplexMatrix R = reverse_identity(3);
    CHECK(R(0, 2) == Complex(1.0));
    CHECK(R(1, 1) == Complex(1.0));
    CHECK(R(2, 0) == Complex(1.0));
    CHECK(R(0, 0) == Complex(0.0));
}

TEST_CASE("a single Jordan block against the reversal is already canonical") {
    ToleranceConfig cfg;
    ComplexMatrix A = jordan_block(2, 0.0);
    IndefiniteProduct P = make_product(reverse_identity(2));
    CanonicalPairForm f = canonical_pair_form(A, P, cfg);
    CHECK(f.block_sizes() == std::vector<int>{2});
    CHECK(f.etas() == std::vector<int>{1});
    CHECK(f.residual_A < 1e-10);
    CHECK(f.residual_B < 1e-10);
    check_invariants(f, A, P.B, cfg);
}

TEST_CASE("diagonal pairs split into one-by-one blocks with signs") {
    ToleranceConfig cfg;
    ComplexMatrix A = ComplexMatrix::Zero(2, 2);
    A(0, 0) = 1.0;
    A(1, 1) = 2.0;
    ComplexMatrix B = ComplexMatrix::Identity(2, 2);
    B(0, 0) = -1.0;
    IndefiniteProduct P = make_product(B);
    CanonicalPairForm f = canonical_pair_form(A, P, cfg);
    CHECK(f.block_sizes() == std::vector<int>{1, 1});
    CHECK(f.etas() == std::vector<int>{-1, 1});
    REQUIRE(f.blocks.size() == 2);
    CHECK(std::abs(f.blocks[0].eigenvalue - Complex(1.0)) < 1e-8);
    CHECK(std::abs(f.blocks[1].eigenvalue - Complex(2.0)) < 1e-8);
    check_invariants(f, A, B, cfg);
}

TEST_CASE("blocks sharing an eigenvalue come out by descending size then sign") {
    ToleranceConfig cfg;
    cfg.cluster_tol = 1e-4;  // size-3 chains splay their eigenvalues past the default radius
    Synth s = synth({{2, 1.0, -1}, {3, 1.0, 1}}, {});
    IndefiniteProduct P = make_product(s.B, cfg);
    CanonicalPairForm f = canonical_pair_form(s.A, P, cfg);
    CHECK(f.block_sizes() == std::vector<int>{3, 2});
    CHECK(f.etas() == std::vector<int>{1, -1});
    check_invariants(f, s.A, s.B, cfg);

    Synth t = synth({{2, 0.0, -1}, {2, 0.0, 1}}, {});
    IndefiniteProduct Pt = make_product(t.B, cfg);
    CanonicalPairForm g = canonical_pair_form(t.A, Pt, cfg);
    CHECK(g.block_sizes() == std::vector<int>{2, 2});
    CHECK(g.etas() == std::vector<int>{1, -1});
    check_invariants(g, t.A, t.B, cfg);
}

TEST_CASE("real blocks come out in ascending eigenvalue order") {
    ToleranceConfig cfg;
    Synth s = synth({{1, 2.0, 1}, {2, -1.0, -1}}, {});
    IndefiniteProduct P = make_product(s.B, cfg);
    CanonicalPairForm f = canonical_pair_form(s.A, P, cfg);
    CHECK(f.block_sizes() == std::vector<int>{2, 1});
    REQUIRE(f.blocks.size() == 2);
    CHECK(f.blocks[0].eigenvalue.real() == doctest::Approx(-1.0));
    CHECK(f.blocks[1].eigenvalue.real() == doctest::Approx(2.0));
    CHECK(f.etas() == std::vector<int>{-1, 1});
    check_invariants(f, s.A, s.B, cfg);
}

TEST_CASE("conjugate chains pair up into coupled blocks") {
    ToleranceConfig cfg;
    Synth s = synth({}, {{2, Complex(1.0, 2.0)}});
    IndefiniteProduct P = make_product(s.B, cfg);
    REQUIRE(classify(s.A, P, cfg).is(StructureClass::J));
    CanonicalPairForm f = canonical_pair_form(s.A, P, cfg);
    REQUIRE(f.blocks.size() == 1);
    CHECK(f.blocks[0].size == 4);
    CHECK_FALSE(f.blocks[0].real_eigenvalue);
    CHECK(f.blocks[0].eta == 0);
    CHECK(std::abs(f.blocks[0].eigenvalue - Complex(1.0, 2.0)) < 1e-6);
    CHECK(f.etas().empty());
    check_invariants(f, s.A, s.B, cfg);
}

TEST_CASE("mixed spectra order reals first then pairs") {
    ToleranceConfig cfg;
    Synth s = synth({{1, 0.5, 1}}, {{1, Complex(-1.0, 1.0)}});
    IndefiniteProduct P = make_product(s.B, cfg);
    CanonicalPairForm f = canonical_pair_form(s.A, P, cfg);
    REQUIRE(f.blocks.size() == 2);
    CHECK(f.blocks[0].real_eigenvalue);
    CHECK_FALSE(f.blocks[1].real_eigenvalue);
    CHECK(f.block_sizes() == std::vector<int>{1, 2});
    check_invariants(f, s.A, s.B, cfg);
}

TEST_CASE("recovery survives a congruence scramble") {
    ToleranceConfig cfg;
    cfg.cluster_tol = 1e-4;
    Synth s = synth({{3, -2.0, -1}, {1, -2.0, 1}, {2, 1.0, 1}}, {});
    GeneratedPair g = gen_random_congruence(s.A, s.B, 91, 50.0);
    IndefiniteProduct P = make_product(g.B, cfg);
    CanonicalPairForm f = canonical_pair_form(g.A, P, cfg);
    CHECK(f.block_sizes() == std::vector<int>{3, 1, 2});
    CHECK(f.etas() == std::vector<int>{-1, 1, 1});
    check_invariants(f, g.A, g.B, cfg);
}

TEST_CASE("scrambled pair blocks are recovered too") {
    ToleranceConfig cfg;
    Synth s = synth({{2, 0.0, 1}}, {{2, Complex(0.5, 1.5)}});
    GeneratedPair g = gen_random_congruence(s.A, s.B, 92, 30.0);
    IndefiniteProduct P = make_product(g.B, cfg);
    CanonicalPairForm f = canonical_pair_form(g.A, P, cfg);
    REQUIRE(f.blocks.size() == 2);
    CHECK(f.block_sizes() == std::vector<int>{2, 4});
    CHECK(f.etas() == std::vector<int>{1});
    CHECK_FALSE(f.blocks[1].real_eigenvalue);
    CHECK(std::abs(f.blocks[1].eigenvalue - Complex(0.5, 1.5)) < 1e-5);
    check_invariants(f, g.A, g.B, cfg);
}

TEST_CASE("canonical_pair_form rejects bad inputs") {
    ToleranceConfig cfg;
    IndefiniteProduct P = make_product(reverse_identity(2));
    ComplexMatrix notJ = ComplexMatrix::Zero(2, 2);
    notJ(0, 1) = 1.0;
    notJ(1, 0) = -1.0;  // skewadjoint wrt R_2, not selfadjoint
    CHECK_THROWS_AS(canonical_pair_form(switch_class(jordan_block(2, 0.0)), P, cfg),
                    PreconditionError);

    ComplexMatrix K(2, 2);
    K << 0.0, 1.0, -1.0, 0.0;
    IndefiniteProduct Ps = make_product(K);
    CHECK_THROWS_AS(canonical_pair_form(ComplexMatrix::Identity(2, 2), Ps, cfg),
                    UnsupportedFormError);
}

TEST_CASE("commuting_one_regular fixes derogatory matrices") {
    ToleranceConfig cfg;
    // two chains at the same eigenvalue: A itself is not 1-regular
    Synth s = synth({{2, 0.0, 1}, {2, 0.0, -1}}, {});
    IndefiniteProduct P = make_product(s.B, cfg);
    REQUIRE_FALSE(is_one_regular(s.A, cfg));
    ComplexMatrix C = commuting_one_regular(s.A, P, cfg);
    CHECK(is_one_regular(C, cfg));
    CHECK(classify(C, P, cfg).is(StructureClass::J));
    CHECK(two_norm(ComplexMatrix(s.A * C - C * s.A)) <=
          1e-6 * (1.0 + two_norm(s.A)) * (1.0 + two_norm(C)));
}

TEST_CASE("commuting_one_regular handles conjugate pairs and scrambles") {
    ToleranceConfig cfg;
    Synth s = synth({{1, 1.0, 1}, {1, 1.0, 1}}, {{1, Complex(0.0, 1.0)}, {1, Complex(0.0, 1.0)}});
    GeneratedPair g = gen_random_congruence(s.A, s.B, 93, 20.0);
    IndefiniteProduct P = make_product(g.B, cfg);
    REQUIRE_FALSE(is_one_regular(g.A, cfg));
    ComplexMatrix C = commuting_one_regular(g.A, P, cfg);
    CHECK(is_one_regular(C, cfg));
    CHECK(classify(C, P, cfg).is(StructureClass::J));
    const double scale = (1.0 + two_norm(g.A)) * (1.0 + two_norm(C));
    CHECK(two_norm(ComplexMatrix(g.A * C - C * g.A)) <= 1e-4 * scale);
}
