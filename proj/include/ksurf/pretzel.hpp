#pragma once

// Pretzel knots P(e1,...,en): Goeritz forms, determinants, and the Seifert
// data of 3-strand double branched covers, plus the determinant/|H1|
// cross-check sweep that pins the sign conventions.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ksurf/exact.hpp"
#include "ksurf/seifert.hpp"

namespace ksurf::pretzel {

class PretzelKnot {
  public:
    PretzelKnot() = default;
    static PretzelKnot make(std::vector<long> twists);  // n >= 3, all nonzero; throws
    static PretzelKnot parse(std::string_view text);    // "P(-2,3,7)"

    const std::vector<long>& twists() const { return twists_; }
    std::size_t strand_count() const { return twists_.size(); }
    bool is_knot() const;  // at most one even twist (otherwise a link)
    std::string str() const;

    bool operator==(const PretzelKnot& other) const = default;

  private:
    std::vector<long> twists_;
};

// (n-1)x(n-1) tridiagonal checkerboard form: diagonal e_i + e_{i+1},
// off-diagonal -e_{i+1}.
exact::SymmetricForm goeritz_matrix(const PretzelKnot& k);

// |det(goeritz_matrix)|; internally cross-checked against the multilinear
// formula |sum_i prod_{j != i} e_j| (throws std::logic_error on mismatch).
exact::Int determinant(const PretzelKnot& k);

// 3-strand only: S^2(0; -1/e1, -1/e2, -1/e3), normalized.
seifert::SeifertInvariants double_branched_cover(const PretzelKnot& k);

struct SweepResult {
    std::size_t checked = 0;     // triples with nonzero determinant
    std::size_t skipped = 0;     // determinant-zero triples
    std::size_t mismatches = 0;  // h1_order(dbc) != determinant
    bool all_match() const { return mismatches == 0; }
    bool operator==(const SweepResult& other) const = default;
};

// h1_order(double_branched_cover(k)) == determinant(k) over all 3-strand
// pretzels with twists in [lo, hi] \ {0}.
SweepResult crosscheck_sweep(long lo = -7, long hi = 7);
SweepResult crosscheck_sweep_serial(long lo = -7, long hi = 7);

}  // namespace ksurf::pretzel
