#pragma once

#include "bmat/core.hpp"
#include "bmat/product.hpp"

#include <set>
#include <utility>

namespace bmat {

/// The four structure classes attached to a scalar product:
/// J: selfadjoint (A = A*), L: skewadjoint (A = -A*),
/// G: automorphisms (A^H B A = B), N: normal (A A* = A* A).
enum class StructureClass { J, L, G, N };

const char* to_string(StructureClass c);

struct StructureReport {
    double res_J = 0.0;  ///< ||A - A*||
    double res_L = 0.0;  ///< ||A + A*||
    double res_G = 0.0;  ///< ||A^H B A - B||
    double res_N = 0.0;  ///< ||A A* - A* A||
    std::set<StructureClass> memberships;

    bool is(StructureClass c) const { return memberships.count(c) != 0; }
};

/// Residuals of the four structure equations and threshold-based memberships.
/// J/L/N accept at eq_tol * (1+||A||)^2, G at eq_tol * ||B|| * (1+||A||)^2.
/// Membership in J, L or G implies membership in N and is recorded as such.
StructureReport classify(const ComplexMatrix& A, const IndefiniteProduct& P,
                         const ToleranceConfig& cfg);

/// S = (A + A*)/2 and K = A - S, so A = S + K holds exactly and S is
/// selfadjoint, K skewadjoint (up to the adjoint's rounding).
std::pair<ComplexMatrix, ComplexMatrix> toeplitz_split(const ComplexMatrix& A,
                                                       const IndefiniteProduct& P);

/// Nearest selfadjoint matrix in the 2-norm sense; optimal only for unitary B,
/// hence restricted to it (PreconditionError otherwise).
ComplexMatrix project_J(const ComplexMatrix& A, const IndefiniteProduct& P);

/// Nearest skewadjoint matrix; same unitary-B restriction as project_J.
ComplexMatrix project_L(const ComplexMatrix& A, const IndefiniteProduct& P);

/// Multiplication by i maps J(B) onto L(B) and back; unitary groups are not
/// preserved. Named switch_class because `switch` is reserved.
ComplexMatrix switch_class(const ComplexMatrix& A);

/// Congruence transport: A' = T^{-1} A T against B' = T^H B T preserves all
/// four classes. Returns the transported matrix and the rebuilt product.
std::pair<ComplexMatrix, IndefiniteProduct> transport(const ComplexMatrix& A,
                                                      const IndefiniteProduct& P,
                                                      const ComplexMatrix& T,
                                                      const ToleranceConfig& cfg);

}  // namespace bmat
