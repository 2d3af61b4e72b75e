#include <bmat/canonical.hpp>
#include <bmat/densify_jl.hpp>
#include <bmat/generate.hpp>
#include <bmat/spectral.hpp>

#include "doctest.h"

#include <cmath>

using namespace bmat;

namespace {
void check_certified(const DensifyResult& r, const ComplexMatrix& A, const IndefiniteProduct& P,
                     StructureClass which, double eps, const ToleranceConfig& cfg) {
    CHECK(r.distance <= eps);
    CHECK(two_norm(ComplexMatrix(A - r.perturbed)) == doctest::Approx(r.distance).epsilon(1e-9));
    CHECK(classify(r.perturbed, P, cfg).is(which));
    CHECK(r.min_gap > cfg.gap_tol);
    CHECK(is_diagonalizable(r.perturbed, cfg));
}
}  // namespace

TEST_CASE("distinct elements live in their class with well separated spectra") {
    ToleranceConfig cfg;
    ComplexMatrix Bm = ComplexMatrix::Identity(4, 4);
    Bm(2, 2) = -3.0;  // non-unitary Hermitian form
    IndefiniteProduct P = make_product(Bm);

    ComplexMatrix E = distinct_element_J(P);
    CHECK(classify(E, P, cfg).is(StructureClass::J));
    CHECK(min_eig_gap(E) > 0.5);

    ComplexMatrix F = distinct_element_L(P);
    CHECK(classify(F, P, cfg).is(StructureClass::L));
    CHECK(min_eig_gap(F) > 0.5);
}

TEST_CASE("densify_J certifies Jordan blocks against reversal forms") {
    ToleranceConfig cfg;
    for (int k : {2, 4}) {
        for (double lam : {0.0, -2.0}) {
            ComplexMatrix A = jordan_block(k, lam);
            for (double sgn : {1.0, -1.0}) {
                IndefiniteProduct P = make_product(ComplexMatrix(sgn * reverse_identity(k)));
                REQUIRE(classify(A, P, cfg).is(StructureClass::J));
                for (double eps : {1e-1, 1e-6}) {
                    DensifyResult r = densify_J(A, P, eps, cfg);
                    check_certified(r, A, P, StructureClass::J, eps, cfg);
                }
            }
        }
    }
}

TEST_CASE("densify_J accepts an already distinct input on the first trial") {
    ToleranceConfig cfg;
    IndefiniteProduct P = make_product(ComplexMatrix::Identity(3, 3));
    ComplexMatrix A = ComplexMatrix::Zero(3, 3);
    A(0, 0) = 1.0;
    A(1, 1) = 2.0;
    A(2, 2) = 5.0;
    DensifyResult r = densify_J(A, P, 1e-3, cfg);
    CHECK(r.distance <= 1e-3);
    // first-trial acceptance: the full coefficient budget is spent at m = 1
    const double c1 = 1e-3 / two_norm(distinct_element_J(P)) * detail::jitter(1);
    CHECK(std::abs(r.c_used) == doctest::Approx(c1).epsilon(1e-9));
    // certification is idempotent: the output certifies again immediately
    DensifyResult r2 = densify_J(r.perturbed, P, 1e-3, cfg);
    CHECK(r2.distance <= 1e-3);
}

TEST_CASE("densify_L mirrors densify_J through the i-switch") {
    ToleranceConfig cfg;
    ComplexMatrix A = switch_class(jordan_block(3, 1.0));
    IndefiniteProduct P = make_product(reverse_identity(3));
    REQUIRE(classify(A, P, cfg).is(StructureClass::L));
    DensifyResult r = densify_L(A, P, 1e-3, cfg);
    check_certified(r, A, P, StructureClass::L, 1e-3, cfg);
}

TEST_CASE("densify on scrambled pairs still certifies") {
    ToleranceConfig cfg;
    GeneratedPair base = gen_jordan_pair(4, 77);
    GeneratedPair g = gen_random_congruence(base.A, base.B, 78, 100.0);
    IndefiniteProduct P = make_product(g.B, cfg);
    REQUIRE(classify(g.A, P, cfg).is(StructureClass::J));
    DensifyResult r = densify_J(g.A, P, 1e-3, cfg);
    check_certified(r, g.A, P, StructureClass::J, 1e-3, cfg);
}

TEST_CASE("densify_J rejects inputs outside the class") {
    ToleranceConfig cfg;
    IndefiniteProduct P = make_product(ComplexMatrix::Identity(3, 3));
    ComplexMatrix A = ComplexMatrix::Zero(3, 3);
    A(0, 1) = 1.0;  // nilpotent, not selfadjoint for B = I
    CHECK_THROWS_AS(densify_J(A, P, 1e-3, cfg), PreconditionError);
    CHECK_THROWS_AS(densify_J(jordan_block(3, 0.0), P, 0.0, cfg), PreconditionError);
}

TEST_CASE("an impossible budget fails loudly and carries its best candidate") {
    ToleranceConfig cfg;
    IndefiniteProduct P = make_product(reverse_identity(4));
    ComplexMatrix A = jordan_block(4, 0.0);
    // at eps ~ 1e-300 the eigenvalue splay cannot clear gap_tol
    CHECK_THROWS_AS(densify_J(A, P, 1e-300, cfg), DensifyFailure);
    try {
        densify_J(A, P, 1e-300, cfg);
    } catch (const DensifyFailure& f) {
        CHECK(f.best.perturbed.rows() == 4);
        CHECK(f.best.distance <= 1e-300 * 1.0000001);
    }
}

TEST_CASE("threaded search returns the same result as the serial one") {
    ToleranceConfig cfg;
    IndefiniteProduct P = make_product(reverse_identity(5));
    ComplexMatrix A = jordan_block(5, 1.0);
    DensifyResult serial = densify_J(A, P, 1e-4, cfg, 1);
    DensifyResult threaded = densify_J(A, P, 1e-4, cfg, 4);
    CHECK(serial.c_used == threaded.c_used);
    CHECK(two_norm(ComplexMatrix(serial.perturbed - threaded.perturbed)) == 0.0);
}

TEST_CASE("sum_of_two splits a class member into two distinct-spectrum members") {
    ToleranceConfig cfg;
    IndefiniteProduct P = make_product(reverse_identity(4));
    ComplexMatrix A = jordan_block(4, 2.0);  // defective selfadjoint input
    auto [X, Y] = sum_of_two(A, P, StructureClass::J, cfg);
    CHECK(two_norm(ComplexMatrix(A - X - Y)) <= 1e-12 * (1.0 + two_norm(A)));
    for (const ComplexMatrix* M : {&X, &Y}) {
        CHECK(classify(*M, P, cfg).is(StructureClass::J));
        CHECK(min_eig_gap(*M) > cfg.gap_tol);
        CHECK(is_diagonalizable(*M, cfg));
    }
    CHECK_THROWS_AS(sum_of_two(A, P, StructureClass::G, cfg), PreconditionError);
    CHECK_THROWS_AS(sum_of_two(switch_class(A), P, StructureClass::J, cfg), PreconditionError);
}

TEST_CASE("sum_of_four rebuilds arbitrary matrices from four structured parts") {
    ToleranceConfig cfg;
    Rng rng(51);
    IndefiniteProduct P = make_product(reverse_identity(4));
    ComplexMatrix A = rng.gaussian_matrix(4, 4);
    auto parts = sum_of_four(A, P, cfg);
    ComplexMatrix sum = parts[0] + parts[1] + parts[2] + parts[3];
    CHECK(two_norm(ComplexMatrix(A - sum)) <= 1e-12 * (1.0 + two_norm(A)));
    CHECK(classify(parts[0], P, cfg).is(StructureClass::J));
    CHECK(classify(parts[1], P, cfg).is(StructureClass::J));
    CHECK(classify(parts[2], P, cfg).is(StructureClass::L));
    CHECK(classify(parts[3], P, cfg).is(StructureClass::L));
    for (const auto& M : parts) {
        CHECK(min_eig_gap(M) > cfg.gap_tol);
        CHECK(is_diagonalizable(M, cfg));
    }
}

TEST_CASE("jitter is deterministic and stays in its band") {
    for (int m = 0; m < 100; ++m) {
        double j = detail::jitter(m);
        CHECK(j > 0.5);
        CHECK(j <= 1.0);
        CHECK(j == detail::jitter(m));
    }
}
