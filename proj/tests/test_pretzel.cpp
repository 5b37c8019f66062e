#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "ksurf/pretzel.hpp"

#include <algorithm>
#include <random>

#include "oracles.hpp"

using namespace ksurf;
using exact::Int;
using pretzel::PretzelKnot;

TEST_CASE("parse and str round-trip") {
    const auto k = PretzelKnot::parse("P(-2,3,7)");
    CHECK(k.twists() == std::vector<long>{-2, 3, 7});
    CHECK(k.str() == "P(-2,3,7)");
    CHECK(PretzelKnot::parse(k.str()) == k);
    CHECK(PretzelKnot::parse("P( 1 , 1 , 1 , 1 , 1 )").strand_count() == 5);
}

TEST_CASE("construction rejects degenerate data") {
    CHECK_THROWS_AS(PretzelKnot::make({1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(PretzelKnot::make({1, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(PretzelKnot::parse("P(1,2)"), fp::ParseError);
    CHECK_THROWS_AS(PretzelKnot::parse("P(1,0,1)"), fp::ParseError);
    CHECK_THROWS_AS(PretzelKnot::parse("Q(1,1,1)"), fp::ParseError);
    CHECK_THROWS_AS(PretzelKnot::parse("P(1,1,1"), fp::ParseError);
}

TEST_CASE("knot versus link detection") {
    CHECK(PretzelKnot::parse("P(-2,3,7)").is_knot());   // one even twist
    CHECK(PretzelKnot::parse("P(1,3,5)").is_knot());    // all odd
    CHECK(!PretzelKnot::parse("P(2,4,7)").is_knot());   // two even twists
    CHECK(!PretzelKnot::parse("P(2,2,2)").is_knot());
}

TEST_CASE("goeritz matrix of P(-2,3,7)") {
    const auto g = pretzel::goeritz_matrix(PretzelKnot::parse("P(-2,3,7)"));
    REQUIRE(g.dimension() == 2);
    CHECK(g(0, 0) == Int(1));    // -2 + 3
    CHECK(g(0, 1) == Int(-3));
    CHECK(g(1, 0) == Int(-3));
    CHECK(g(1, 1) == Int(10));   // 3 + 7
    const auto sig = exact::signature_of(g);
    CHECK(sig.b_plus == 2);
    CHECK(sig.b_minus == 0);
    CHECK(sig.b_zero == 0);
}

TEST_CASE("determinants of standard examples") {
    CHECK(pretzel::determinant(PretzelKnot::parse("P(1,1,1)")) == Int(3));
    CHECK(pretzel::determinant(PretzelKnot::parse("P(3,3,3)")) == Int(27));
    CHECK(pretzel::determinant(PretzelKnot::parse("P(-2,3,7)")) == Int(1));
    CHECK(pretzel::determinant(PretzelKnot::parse("P(-2,3,5)")) == Int(1));
    CHECK(pretzel::determinant(PretzelKnot::parse("P(-2,3,7,1)")) == Int(41));
    CHECK(pretzel::determinant(PretzelKnot::parse("P(2,-2,2,-2)")) == Int(0));
}

TEST_CASE("determinant is invariant under strand permutation") {
    std::mt19937 rng(977);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 3 + rng() % 3;
        std::vector<long> twists;
        for (std::size_t i = 0; i < n; ++i) {
            long e = static_cast<long>(rng() % 13) - 6;
            if (e == 0) e = 1;
            twists.push_back(e);
        }
        const Int d = pretzel::determinant(PretzelKnot::make(twists));
        std::shuffle(twists.begin(), twists.end(), rng);
        CHECK(pretzel::determinant(PretzelKnot::make(twists)) == d);
    }
}

TEST_CASE("goeritz determinant agrees with the cofactor oracle") {
    std::mt19937 rng(978);
    for (int trial = 0; trial < 80; ++trial) {
        const std::size_t n = 3 + rng() % 4;  // up to 6 strands -> 5x5 minors
        std::vector<long> twists;
        for (std::size_t i = 0; i < n; ++i) {
            long e = static_cast<long>(rng() % 9) - 4;
            if (e == 0) e = -1;
            twists.push_back(e);
        }
        const auto g = pretzel::goeritz_matrix(PretzelKnot::make(twists));
        const Int lap = oracles::laplace_determinant(g.matrix());
        CHECK(pretzel::determinant(PretzelKnot::make(twists)) == abs(lap));
    }
}

TEST_CASE("double branched cover of 3-strand pretzels") {
    const auto k = PretzelKnot::parse("P(-2,3,7)");
    const auto s = pretzel::double_branched_cover(k);
    CHECK(s.str() == "S2(0; 1/2, -1/3, -1/7)");
    CHECK(seifert::h1_order(s) == Int(1));

    const auto t = pretzel::double_branched_cover(PretzelKnot::parse("P(1,1,1)"));
    CHECK(t.str() == "S2(-3;)");  // -1/1 fibers fold into the section
    CHECK(seifert::h1_order(t) == Int(3));

    CHECK_THROWS_AS(pretzel::double_branched_cover(PretzelKnot::parse("P(1,1,1,1)")),
                    std::invalid_argument);
}

TEST_CASE("cover base orbifold matches the twist triangle") {
    const auto s = pretzel::double_branched_cover(PretzelKnot::parse("P(-2,3,7)"));
    CHECK(seifert::matches_triangle(seifert::kill_regular_fiber(s), 2, 3, 7));
    const auto u = pretzel::double_branched_cover(PretzelKnot::parse("P(-2,3,5)"));
    CHECK(seifert::matches_triangle(seifert::kill_regular_fiber(u), 2, 3, 5));
}

TEST_CASE("determinant/h1 cross-check sweep") {
    const auto r = pretzel::crosscheck_sweep(-3, 3);
    CHECK(r.checked + r.skipped == 6 * 6 * 6);
    CHECK(r.mismatches == 0);
    CHECK(r.all_match());

    const auto serial = pretzel::crosscheck_sweep_serial(-3, 3);
    CHECK(serial == r);
}
