#pragma once

// Exact integer and rational linear algebra: Smith normal form, symmetric
// forms, signatures.  Everything here is arbitrary precision; no floating
// point is used anywhere in this module.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace ksurf::exact {

using Int = mpz_class;
using Rat = mpq_class;

class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    IntMatrix transposed() const;
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    bool operator==(const IntMatrix& other) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> entries_;  // row-major
};

struct SmithResult {
    std::vector<Int> invariant_factors;  // positive, each dividing the next
    std::size_t rank = 0;                // == invariant_factors.size()
    bool operator==(const SmithResult& other) const = default;
};

// Diagonalization over Z by unimodular row/column operations.  Pivot choice is
// the smallest nonzero absolute value with first-occurrence (row-major)
// tie-break, which keeps the run deterministic and entry growth tame.  The
// default entry point parallelizes the row/column update passes with OpenMP;
// the _serial variant is the plain-loop reference kept for testing, and both
// produce identical results.
SmithResult smith_normal_form(const IntMatrix& m);
SmithResult smith_normal_form_serial(const IntMatrix& m);

// Exact determinant (Bareiss fraction-free elimination).  Requires square.
Int determinant(const IntMatrix& m);

class SymmetricForm {
  public:
    SymmetricForm() = default;
    explicit SymmetricForm(IntMatrix m);  // throws std::invalid_argument unless symmetric
    static SymmetricForm diagonal(std::initializer_list<long> entries);

    std::size_t dimension() const { return m_.rows(); }
    const Int& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    const IntMatrix& matrix() const { return m_; }
    bool operator==(const SymmetricForm& other) const = default;

  private:
    IntMatrix m_;
};

struct Signature {
    std::size_t b_plus = 0;
    std::size_t b_zero = 0;
    std::size_t b_minus = 0;
    bool operator==(const Signature& other) const = default;
};

// Exact symmetric diagonalization over Q (congruence / Lagrange reduction).
// A zero diagonal with a nonzero off-diagonal pivot is handled by the
// e_i -> e_i + e_j substitution, so hyperbolic blocks work.
Signature signature_of(const SymmetricForm& q);

SymmetricForm direct_sum(const SymmetricForm& a, const SymmetricForm& b);

enum class Parity { Even, Odd };

// Even iff every diagonal entry is even.
Parity parity(const SymmetricForm& q);

std::string to_string(const SmithResult& r);
std::string to_string(const Signature& s);

}  // namespace ksurf::exact
