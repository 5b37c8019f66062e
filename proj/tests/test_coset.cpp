#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "ksurf/coset.hpp"
#include "ksurf/fpgroup.hpp"

using namespace ksurf;
using fp::CosetTable;
using fp::Perm;
using fp::Presentation;
using fp::Word;

namespace {

// The PSL(2,7) fixture: permutations of the 8 points of the projective line
// over the 7-element field, found by offline brute-force search (orders 2
// and 3, product of order 7, commutator of order 4, closure of order 168).
const Perm kX{std::vector<int>{1, 0, 3, 2, 5, 4, 7, 6}};
const Perm kY{std::vector<int>{0, 2, 4, 3, 1, 6, 7, 5}};

Presentation von_dyck_237() {
    return fp::parse_presentation("<x, y | x^2, y^3, (x*y)^7>");
}
Presentation hurwitz_237_4() {
    return fp::parse_presentation("<x, y | x^2, y^3, (x*y)^7, (x^-1*y^-1*x*y)^4>");
}

}  // namespace

TEST_CASE("permutations compose, invert, and order") {
    CHECK_THROWS_AS(Perm(std::vector<int>{0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(Perm(std::vector<int>{1, 2}), std::invalid_argument);
    const Perm five(std::vector<int>{1, 2, 3, 4, 0});
    CHECK(five.order() == 5);
    CHECK(Perm::identity(4).is_identity());
    CHECK(five.then(five.inverse()).is_identity());
    const Perm a(std::vector<int>{1, 0, 2});
    const Perm b(std::vector<int>{0, 2, 1});
    CHECK(a.then(b).apply(0) == 2);  // 0 -> 1 -> 2
}

TEST_CASE("PSL(2,7) fixture satisfies the Hurwitz relations") {
    CHECK(kX.order() == 2);
    CHECK(kY.order() == 3);
    CHECK(kX.then(kY).order() == 7);
    const Perm comm = kX.inverse().then(kY.inverse()).then(kX).then(kY);
    CHECK(comm.order() == 4);
    CHECK(fp::quotient_group_order({kX, kY}) == 168);
    CHECK(!fp::check_homomorphism(von_dyck_237(), {kX, kY}));
    CHECK(!fp::check_homomorphism(hurwitz_237_4(), {kX, kY}));
}

TEST_CASE("check_homomorphism rejects with a witness") {
    const Presentation p = fp::parse_presentation("<x | x^2>");
    const auto witness = fp::check_homomorphism(p, {Perm(std::vector<int>{1, 2, 0})});
    REQUIRE(witness.has_value());
    CHECK(witness->relator_index == 0);

    const Presentation t = fp::triangle_presentation(2, 3, 7);
    CHECK(!fp::check_homomorphism(
        t, {Perm::identity(3), Perm::identity(3), Perm::identity(3)}));
    CHECK_THROWS_AS(fp::check_homomorphism(t, {Perm::identity(3)}),
                    std::invalid_argument);
}

TEST_CASE("quotient group order by closure") {
    CHECK(fp::quotient_group_order({Perm(std::vector<int>{1, 2, 3, 4, 0})}) == 5);
    CHECK(fp::quotient_group_order({Perm::identity(4)}) == 1);
    // S3 from two transpositions
    CHECK(fp::quotient_group_order(
              {Perm(std::vector<int>{1, 0, 2}), Perm(std::vector<int>{0, 2, 1})}) == 6);
    // limit exceeded
    CHECK(!fp::quotient_group_order({Perm(std::vector<int>{1, 2, 3, 4, 0})}, 3));
}

TEST_CASE("todd-coxeter on finite groups") {
    const Presentation s3 = fp::parse_presentation("<x, y | x^2, y^2, (x*y)^3>");
    const auto t = fp::todd_coxeter(s3, {});
    REQUIRE(t.has_value());
    CHECK(t->coset_count() == 6);
    CHECK(!t->validate(s3, {}));

    const Presentation z = fp::parse_presentation("<x | >");
    const auto t3 = fp::todd_coxeter(z, fp::parse_word_list("x^3", z));
    REQUIRE(t3.has_value());
    CHECK(t3->coset_count() == 3);
    CHECK(!t3->validate(z, fp::parse_word_list("x^3", z)));

    // trivial presentation, no generators
    const auto t1 = fp::todd_coxeter(fp::parse_presentation("< | >"), {});
    REQUIRE(t1.has_value());
    CHECK(t1->coset_count() == 1);
}

TEST_CASE("todd-coxeter closes the Hurwitz presentation at 168") {
    const auto t = fp::todd_coxeter(hurwitz_237_4(), {}, 100000);
    REQUIRE(t.has_value());
    CHECK(t->coset_count() == 168);
    CHECK(!t->validate(hurwitz_237_4(), {}));
    // agrees with the permutation-closure order of the fixture
    CHECK(t->coset_count() == fp::quotient_group_order({kX, kY}));
}

TEST_CASE("todd-coxeter reports overflow as nullopt") {
    // infinite group: enumeration cannot close
    CHECK(!fp::todd_coxeter(von_dyck_237(), {}, 500));
    // finite but tiny limit
    CHECK(!fp::todd_coxeter(hurwitz_237_4(), {}, 50));
}

TEST_CASE("regular action table agrees with todd-coxeter") {
    const fp::FiniteQuotient q{hurwitz_237_4(), {kX, kY}};
    const auto reg = fp::coset_table_from_quotient(q);
    REQUIRE(reg.has_value());
    CHECK(reg->coset_count() == 168);
    CHECK(!reg->validate(hurwitz_237_4(), {}));

    const auto tc = fp::todd_coxeter(hurwitz_237_4(), {}, 100000);
    REQUIRE(tc.has_value());
    CHECK(tc->coset_count() == reg->coset_count());
}

TEST_CASE("coset table tracing and validation catch corruption") {
    const Presentation s3 = fp::parse_presentation("<x, y | x^2, y^2, (x*y)^3>");
    auto t = fp::todd_coxeter(s3, {});
    REQUIRE(t.has_value());
    const Word r = s3.relators()[2];
    for (std::size_t c = 0; c < t->coset_count(); ++c)
        CHECK(t->trace(static_cast<int>(c), r) == static_cast<int>(c));

    CosetTable bad = *t;
    std::swap(bad.entry(0, 1), bad.entry(1, 1));
    CHECK(bad.validate(s3, {}).has_value());
}

TEST_CASE("reidemeister-schreier on free and cyclic examples") {
    // index-2 subgroup of F2 containing x^2, y, x y x^-1: free of rank 3
    const Presentation f2 = fp::parse_presentation("<x, y | >");
    const auto sub = fp::parse_word_list("x^2, y, x*y*x^-1", f2);
    const auto t = fp::todd_coxeter(f2, sub);
    REQUIRE(t.has_value());
    CHECK(t->coset_count() == 2);
    const auto rs = fp::reidemeister_schreier(f2, *t);
    CHECK(rs.generator_count == 3);
    CHECK(fp::abelianization(rs.presentation()).betti == 3);

    // subgroup 2Z of Z/6 is Z/3
    const Presentation z6 = fp::parse_presentation("<x | x^6>");
    const auto t2 = fp::todd_coxeter(z6, fp::parse_word_list("x^2", z6));
    REQUIRE(t2.has_value());
    const auto ab = fp::abelianization(fp::reidemeister_schreier(z6, *t2).presentation());
    CHECK(ab == fp::AbelianInvariants{0, {exact::Int(3)}});

    // index 1: the subgroup is the whole group
    const Presentation z = fp::parse_presentation("<x | >");
    const auto t1 = fp::todd_coxeter(z, fp::parse_word_list("x", z));
    REQUIRE(t1.has_value());
    CHECK(t1->coset_count() == 1);
    const auto rs1 = fp::reidemeister_schreier(z, *t1);
    CHECK(rs1.generator_count == 1);
    CHECK(fp::abelianization(rs1.presentation()).betti == 1);
}

TEST_CASE("klein quartic kernel is a genus-3 surface group") {
    const Presentation p = von_dyck_237();
    const fp::FiniteQuotient q{p, {kX, kY}};
    const auto t = fp::coset_table_from_quotient(q);
    REQUIRE(t.has_value());
    REQUIRE(t->coset_count() == 168);

    const auto rs = fp::reidemeister_schreier(p, *t);
    CHECK(rs.generator_count == 168 * 2 - 167);  // 169 Schreier generators
    CHECK(rs.relators.size() == 168 * 3);        // one rewrite per (coset, relator)

    const auto ab = fp::abelianization(rs.presentation());
    CHECK(ab.betti == 6);
    CHECK(ab.torsion.empty());
}

TEST_CASE("parallel and serial reidemeister-schreier are identical") {
    const Presentation p = von_dyck_237();
    const auto t = fp::coset_table_from_quotient(fp::FiniteQuotient{p, {kX, kY}});
    REQUIRE(t.has_value());
    const auto a = fp::reidemeister_schreier(p, *t);
    const auto b = fp::reidemeister_schreier_serial(p, *t);
    CHECK(a.generator_count == b.generator_count);
    CHECK(a.relators == b.relators);

    const Presentation s3 = fp::parse_presentation("<x, y | x^2, y^2, (x*y)^3>");
    const auto t2 = fp::todd_coxeter(s3, {});
    REQUIRE(t2.has_value());
    CHECK(fp::reidemeister_schreier(s3, *t2).relators ==
          fp::reidemeister_schreier_serial(s3, *t2).relators);
}

TEST_CASE("schreier presentation of the trivial subgroup of S3 is trivial") {
    const Presentation s3 = fp::parse_presentation("<x, y | x^2, y^2, (x*y)^3>");
    const auto t = fp::todd_coxeter(s3, {});
    REQUIRE(t.has_value());
    const auto rs = fp::reidemeister_schreier(s3, *t);
    CHECK(rs.generator_count == 6 * 2 - 5);
    const auto ab = fp::abelianization(rs.presentation());
    CHECK(ab.trivial());
}
