#pragma once

// Seifert fibered spaces over S^2: normalized invariants, Euler number,
// fundamental group, first homology, and the regular-fiber quotient onto the
// base orbifold group.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ksurf/exact.hpp"
#include "ksurf/fpgroup.hpp"

namespace ksurf::seifert {

struct Fiber {
    long alpha = 2;  // >= 2 after normalization
    long beta = 1;   // gcd(alpha, beta) = 1
    bool operator==(const Fiber& other) const = default;
};

// S^2(b; beta_1/alpha_1, ..., beta_n/alpha_n).  Construction normalizes:
// fractions reduced, denominators made positive, alpha == 1 fibers folded
// into b (so e = -(b + sum beta/alpha) is preserved).
class SeifertInvariants {
  public:
    SeifertInvariants() = default;
    static SeifertInvariants make(long b, std::vector<Fiber> fibers);  // throws on alpha == 0

    // Text form `S2(b; p1/q1, ...)`, e.g. "S2(0; 1/2, -1/3, -1/7)";
    // "S2(0;)" when there are no exceptional fibers.
    static SeifertInvariants parse(std::string_view text);
    std::string str() const;

    long b() const { return b_; }
    const std::vector<Fiber>& fibers() const { return fibers_; }

    bool operator==(const SeifertInvariants& other) const = default;

  private:
    long b_ = 0;
    std::vector<Fiber> fibers_;
};

// e = -(b + sum beta_i/alpha_i), exact.
exact::Rat euler_number(const SeifertInvariants& s);

// <x1..xn, h | [xi,h], xi^alpha_i h^beta_i, x1...xn h^-b>; n = 0 degenerates
// to <h | h^-b>.
fp::Presentation pi1_presentation(const SeifertInvariants& s);

// Order of H_1, nullopt if infinite (betti > 0).  Cross-checked internally
// against |alpha_1...alpha_n * e| when e != 0 (throws std::logic_error on
// disagreement).
std::optional<exact::Int> h1_order(const SeifertInvariants& s);

// Base orbifold group <x1..xn | xi^alpha_i, x1...xn>.
fp::Presentation kill_regular_fiber(const SeifertInvariants& s);

// Syntactic check: P canonicalizes to the triangle presentation with
// {p, q, r} as an unordered multiset (three single-generator power relators
// plus one positively-oriented product of the three generators).
bool matches_triangle(const fp::Presentation& P, long p, long q, long r);

// The normalization move (b, beta/alpha) -> (b+1, (beta-alpha)/alpha) applied
// to fiber fiber_index; preserves euler_number.
SeifertInvariants normalization_move(const SeifertInvariants& s, std::size_t fiber_index);

}  // namespace ksurf::seifert
