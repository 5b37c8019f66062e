#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "ksurf/exact.hpp"
#include "oracles.hpp"

using namespace ksurf;
using exact::Int;
using exact::IntMatrix;
using exact::Signature;
using exact::SymmetricForm;

TEST_CASE("smith normal form on pinned examples") {
    CHECK(exact::smith_normal_form(IntMatrix::identity(3)).invariant_factors ==
          std::vector<Int>{1, 1, 1});
    CHECK(exact::smith_normal_form(IntMatrix(0, 0)).rank == 0);
    CHECK(exact::smith_normal_form(IntMatrix(3, 2)).rank == 0);  // zero matrix

    const auto d = exact::smith_normal_form(IntMatrix::from_rows({{2, 0}, {0, 3}}));
    CHECK(d.invariant_factors == std::vector<Int>{1, 6});

    const auto t = exact::smith_normal_form(IntMatrix::from_rows({{2, 1}, {1, 2}}));
    CHECK(t.invariant_factors == std::vector<Int>{1, 3});

    // relator matrix of Z/2 x Z/4
    const auto z24 = exact::smith_normal_form(IntMatrix::from_rows({{2, 0}, {0, 4}}));
    CHECK(z24.invariant_factors == std::vector<Int>{2, 4});

    // non-square, rank-deficient
    const auto r = exact::smith_normal_form(
        IntMatrix::from_rows({{1, 2, 3}, {2, 4, 6}}));
    CHECK(r.rank == 1);
    CHECK(r.invariant_factors == std::vector<Int>{1});
}

TEST_CASE("smith normal form divisibility and rank invariants") {
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t rows = 1 + static_cast<std::size_t>(rng() % 5);
        const std::size_t cols = 1 + static_cast<std::size_t>(rng() % 5);
        const IntMatrix m = oracles::random_matrix(rng, rows, cols, 9);
        const auto s = exact::smith_normal_form(m);
        CHECK(s.rank == s.invariant_factors.size());
        CHECK(s.rank == oracles::rational_rank(m));
        for (std::size_t i = 0; i < s.rank; ++i) {
            CHECK(s.invariant_factors[i] > 0);
            if (i + 1 < s.rank)
                CHECK(s.invariant_factors[i + 1] % s.invariant_factors[i] == 0);
        }
    }
}

TEST_CASE("smith normal form agrees with the minor-gcd oracle") {
    std::mt19937 rng(987654);
    for (int trial = 0; trial < 250; ++trial) {
        const std::size_t rows = 1 + static_cast<std::size_t>(rng() % 4);
        const std::size_t cols = 1 + static_cast<std::size_t>(rng() % 4);
        const IntMatrix m = oracles::random_matrix(rng, rows, cols, 7);
        CHECK(exact::smith_normal_form(m).invariant_factors ==
              oracles::minor_gcd_invariant_factors(m));
    }
}

TEST_CASE("parallel and serial smith normal form are identical") {
    std::mt19937 rng(13);
    for (const std::size_t n : {8, 25, 60}) {
        const IntMatrix m = oracles::random_matrix(rng, n, n + 3, 4);
        CHECK(exact::smith_normal_form(m) == exact::smith_normal_form_serial(m));
    }
}

TEST_CASE("determinant matches Laplace expansion") {
    std::mt19937 rng(777);
    CHECK(exact::determinant(IntMatrix(0, 0)) == 1);
    CHECK(exact::determinant(IntMatrix::from_rows({{5}})) == 5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng() % 5);
        const IntMatrix m = oracles::random_matrix(rng, n, n, 9);
        CHECK(exact::determinant(m) == oracles::laplace_determinant(m));
    }
}

TEST_CASE("signature on pinned forms") {
    CHECK(exact::signature_of(SymmetricForm::diagonal({1, -1})) == Signature{1, 0, 1});
    CHECK(exact::signature_of(SymmetricForm::diagonal({2, 3, 5})) == Signature{3, 0, 0});
    CHECK(exact::signature_of(SymmetricForm::diagonal({0, 0})) == Signature{0, 2, 0});
    CHECK(exact::signature_of(SymmetricForm(IntMatrix::from_rows({{2, 1}, {1, 2}}))) ==
          Signature{2, 0, 0});
    // hyperbolic plane: zero diagonal, off-diagonal pivot
    CHECK(exact::signature_of(SymmetricForm(IntMatrix::from_rows({{0, 1}, {1, 0}}))) ==
          Signature{1, 0, 1});
    // E8-like positive definite check on a small piece: A2 Cartan matrix
    CHECK(exact::signature_of(SymmetricForm(IntMatrix::from_rows({{2, -1}, {-1, 2}}))) ==
          Signature{2, 0, 0});
    // degenerate rank-1 form
    CHECK(exact::signature_of(SymmetricForm(IntMatrix::from_rows({{1, 1}, {1, 1}}))) ==
          Signature{1, 1, 0});
}

TEST_CASE("signature is a congruence invariant") {
    std::mt19937 rng(424242);
    int nondegenerate = 0;
    for (int trial = 0; trial < 220; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng() % 5);
        const SymmetricForm q = oracles::random_form(rng, n, 6);
        const IntMatrix u = oracles::random_unimodular(rng, n, 12);
        const SymmetricForm conj(u.transposed() * q.matrix() * u);
        const Signature a = exact::signature_of(q);
        CHECK(a == exact::signature_of(conj));
        CHECK(a.b_plus + a.b_zero + a.b_minus == n);
        if (a.b_zero == 0) ++nondegenerate;
    }
    CHECK(nondegenerate > 150);  // the sample is not degenerate-dominated
}

TEST_CASE("signature of a direct sum adds componentwise") {
    std::mt19937 rng(5150);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t na = 1 + rng() % 3, nb = 1 + rng() % 3;
        const SymmetricForm a = oracles::random_form(rng, na, 5);
        const SymmetricForm b = oracles::random_form(rng, nb, 5);
        const SymmetricForm s = exact::direct_sum(a, b);
        CHECK(s.dimension() == a.dimension() + b.dimension());
        const Signature sa = exact::signature_of(a), sb = exact::signature_of(b),
                        ss = exact::signature_of(s);
        CHECK(ss.b_plus == sa.b_plus + sb.b_plus);
        CHECK(ss.b_zero == sa.b_zero + sb.b_zero);
        CHECK(ss.b_minus == sa.b_minus + sb.b_minus);
    }
}

TEST_CASE("parity detects odd diagonals") {
    CHECK(exact::parity(SymmetricForm::diagonal({2, 4, -6})) == exact::Parity::Even);
    CHECK(exact::parity(SymmetricForm::diagonal({2, 3})) == exact::Parity::Odd);
    CHECK(exact::parity(SymmetricForm(IntMatrix::from_rows({{0, 1}, {1, 0}}))) ==
          exact::Parity::Even);
    CHECK(exact::parity(SymmetricForm(IntMatrix(0, 0))) == exact::Parity::Even);
}

TEST_CASE("symmetric form constructor rejects asymmetry") {
    CHECK_THROWS_AS(SymmetricForm(IntMatrix::from_rows({{1, 2}, {3, 4}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(SymmetricForm(IntMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("matrix product and transpose") {
    const IntMatrix a = IntMatrix::from_rows({{1, 2}, {3, 4}});
    const IntMatrix b = IntMatrix::from_rows({{0, 1}, {1, 0}});
    CHECK(a * b == IntMatrix::from_rows({{2, 1}, {4, 3}}));
    CHECK(a.transposed() == IntMatrix::from_rows({{1, 3}, {2, 4}}));
    CHECK(IntMatrix::identity(2) * a == a);
}
