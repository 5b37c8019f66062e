#pragma once

// Independent oracles used by the test suites: slow, obviously-correct
// reference computations that share no code path with the library routines
// they check.

#include <cstddef>
#include <random>
#include <vector>

#include "ksurf/exact.hpp"

namespace ksurf::oracles {

// Determinant by recursive Laplace (cofactor) expansion.  Exponential; keep
// the dimension at 8 or below.
exact::Int laplace_determinant(const exact::IntMatrix& m);

// Invariant factors via the divisor chain d_k = gcd of all k x k minors,
// s_k = d_k / d_{k-1}.  Exponential in min(rows, cols); keep dimensions small.
std::vector<exact::Int> minor_gcd_invariant_factors(const exact::IntMatrix& m);

// Rank by plain rational row elimination.
std::size_t rational_rank(const exact::IntMatrix& m);

// Deterministic random inputs (callers fix the seed).
exact::IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols,
                               long bound);
exact::IntMatrix random_unimodular(std::mt19937& rng, std::size_t n, int ops);
exact::SymmetricForm random_form(std::mt19937& rng, std::size_t n, long bound);

}  // namespace ksurf::oracles
