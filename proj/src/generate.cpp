#include "bmat/generate.hpp"

#include "bmat/canonical.hpp"
#include "bmat/cayley.hpp"
#include "bmat/product.hpp"

#include <Eigen/QR>

#include <cmath>
#include <vector>

namespace bmat {

std::uint64_t Rng::next_u64() {
    // splitmix64; passes through zero seeds without short cycles
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

ComplexMatrix Rng::gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix G(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) {
            const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
            const double u2 = uniform();
            const double r = std::sqrt(-2.0 * std::log(u1));
            const double th = 2.0 * M_PI * u2;
            G(i, j) = Complex(r * std::cos(th), r * std::sin(th));
        }
    return G;
}

GeneratedPair gen_jordan_pair(Eigen::Index n, std::uint64_t seed) {
    if (n < 1) throw DimensionError("gen_jordan_pair: n must be positive");
    Rng rng(seed);
    const double lambda = rng.uniform(-2.0, 2.0);
    const double sign = (rng.next_u64() & 1ULL) ? 1.0 : -1.0;
    GeneratedPair gp;
    gp.A = jordan_block(n, Complex(lambda, 0.0));
    gp.B = sign * reverse_identity(n);
    gp.T = ComplexMatrix::Identity(n, n);
    return gp;
}

GeneratedPair gen_unitary_example(Eigen::Index n, std::uint64_t seed) {
    GeneratedPair gp = gen_jordan_pair(n, seed);
    IndefiniteProduct P = make_product(gp.B);
    CayleyParams prm;
    gp.A = cayley_to_unitary(gp.A, P, prm, P.cfg);
    return gp;
}

GeneratedPair gen_normal_example(Eigen::Index n, std::uint64_t seed, bool skew_B) {
    if (n < 2) throw DimensionError("gen_normal_example: n must be at least 2");
    Rng rng(seed);
    // S is a direct sum of chains of size <= 2; size-2 eigenvalue splay stays
    // near sqrt(machine eps), inside the default clustering radius
    std::vector<Eigen::Index> sizes{2};
    for (Eigen::Index left = n - 2; left > 0;) {
        const Eigen::Index k = (left >= 2 && (rng.next_u64() & 1ULL)) ? 2 : 1;
        sizes.push_back(k);
        left -= k;
    }
    ComplexMatrix S = ComplexMatrix::Zero(n, n);
    ComplexMatrix B0 = ComplexMatrix::Zero(n, n);
    Eigen::Index off = 0;
    double lam = rng.uniform(-2.0, -1.0);
    for (Eigen::Index k : sizes) {
        const double eta = (rng.next_u64() & 1ULL) ? 1.0 : -1.0;
        S.block(off, off, k, k) = jordan_block(k, Complex(lam, 0.0));
        B0.block(off, off, k, k) = eta * reverse_identity(k);
        off += k;
        lam += 0.8 + 0.2 * rng.uniform();  // chains stay well separated
    }
    // A = S - i q(S): both split parts are real polynomials of S, so they
    // commute and the pair lands in N; x - i q(x) has nonzero derivative,
    // so every size-2 chain survives and A is not diagonalizable
    const double q0 = rng.uniform(-1.0, 1.0);
    const double q1 = rng.uniform(-1.0, 1.0);
    const double q2 = rng.uniform(-0.5, 0.5);
    ComplexMatrix Q = q0 * ComplexMatrix::Identity(n, n) + q1 * S + q2 * (S * S);
    GeneratedPair gp;
    gp.A = S - Complex(0.0, 1.0) * Q;
    gp.B = skew_B ? ComplexMatrix(Complex(0.0, 1.0) * B0) : B0;
    gp.T = ComplexMatrix::Identity(n, n);
    return gp;
}

GeneratedPair gen_random_congruence(const ComplexMatrix& A, const ComplexMatrix& B,
                                    std::uint64_t seed, double cond_bound) {
    if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
        throw DimensionError("gen_random_congruence: A and B must be square of equal size");
    if (!(cond_bound >= 1.0))
        throw PreconditionError("gen_random_congruence: cond_bound must be >= 1");
    const Eigen::Index n = A.rows();
    Rng rng(seed);
    const double smax = std::sqrt(cond_bound);
    Eigen::HouseholderQR<ComplexMatrix> qr1(rng.gaussian_matrix(n, n));
    Eigen::HouseholderQR<ComplexMatrix> qr2(rng.gaussian_matrix(n, n));
    ComplexMatrix Q1 = qr1.householderQ();
    ComplexMatrix Q2 = qr2.householderQ();
    ComplexVector d(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        // log-uniform in [1/smax, smax]: singular-value ratio <= cond_bound
        const double e = rng.uniform(-1.0, 1.0);
        d(i) = std::pow(smax, e);
    }
    ComplexMatrix T = Q1 * d.asDiagonal() * Q2.adjoint();
    GeneratedPair gp;
    gp.T = T;
    gp.A = solve(T, ComplexMatrix(A * T));
    gp.B = T.adjoint() * B * T;
    return gp;
}

}  // namespace bmat
