#pragma once

#include "bmat/core.hpp"

#include <cstdint>

namespace bmat {

/// Seedable, splittable generator with explicit bit-to-double mapping so that
/// streams are identical across standard library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64();
    double uniform();  ///< [0, 1)
    double uniform(double lo, double hi);
    /// Entries with independent standard normal real and imaginary parts.
    ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols);
    /// Independent substream; records-friendly (seed = the drawn word).
    Rng split() { return Rng(next_u64()); }

  private:
    std::uint64_t state_;
};

/// Test-pair factory output; T is the congruence applied (identity when none).
struct GeneratedPair {
    ComplexMatrix A;
    ComplexMatrix B;
    ComplexMatrix T;
};

/// (J_n(lambda), +-R_n): selfadjoint, one maximal Jordan chain. lambda real
/// in [-2, 2] and the sign of R_n both derive from the seed.
GeneratedPair gen_jordan_pair(Eigen::Index n, std::uint64_t seed);

/// Cayley image of a jordan_pair: non-diagonalizable B-unitary.
GeneratedPair gen_unitary_example(Eigen::Index n, std::uint64_t seed);

/// S - i q(S) for S = J_n(lambda) and a random real-coefficient q: B-normal,
/// non-diagonalizable, with commuting parts by construction. skew_B replaces
/// B = R_n by the skew-Hermitian i R_n (same memberships).
GeneratedPair gen_normal_example(Eigen::Index n, std::uint64_t seed, bool skew_B = false);

/// Congruence transport of (A, B) by a random T with cond(T) <= cond_bound:
/// A' = T^{-1} A T, B' = T^H B T. Class memberships are preserved.
GeneratedPair gen_random_congruence(const ComplexMatrix& A, const ComplexMatrix& B,
                                    std::uint64_t seed, double cond_bound = 100.0);

}  // namespace bmat
