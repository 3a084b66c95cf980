#include "doctest.h"
#include "support.hpp"

#include "intuit/formula.hpp"

using namespace intuit;

TEST_SUITE("formula") {
    TEST_CASE("parse examples") {
        Formula p = Formula::atom("p"), q = Formula::atom("q");
        CHECK(parse_formula("p -> p") == Formula::impl(p, p));
        CHECK(parse_formula("p -> q -> p") == Formula::impl(p, Formula::impl(q, p)));
        // Hand-built AST for maximal quantifier scope.
        Formula expect = Formula::forall(
            "x", Formula::disj(Formula::atom("q", {Term::var("x"), Term::param("a")}), Formula::atom("r")));
        CHECK(parse_formula("forall x. q(x,#a) | r") == expect);
    }

    TEST_CASE("precedence") {
        Formula p = Formula::atom("p"), q = Formula::atom("q"), r = Formula::atom("r");
        CHECK(parse_formula("~p & q | r -> p") ==
              Formula::impl(Formula::disj(Formula::conj(Formula::neg(p), q), r), p));
        CHECK(parse_formula("p & q & r") == Formula::conj(Formula::conj(p, q), r));
        CHECK(parse_formula("p | q | r") == Formula::disj(Formula::disj(p, q), r));
        CHECK(parse_formula("false") == Formula::bot());
        CHECK(parse_formula("p & exists x. q(x) | r") ==
              Formula::conj(p, Formula::exists("x", Formula::disj(Formula::atom("q", {Term::var("x")}), r))));
    }

    TEST_CASE("parse errors") {
        CHECK_THROWS_WITH_AS(parse_formula("q(x)"), doctest::Contains("unbound variable"), ParseError);
        CHECK_THROWS_AS(parse_formula("p ->"), ParseError);
        CHECK_THROWS_AS(parse_formula("p q"), ParseError);
        CHECK_THROWS_AS(parse_formula("(p"), ParseError);
        try {
            parse_formula("p & & q");
            FAIL("expected error");
        } catch (const ParseError& e) {
            CHECK(e.position() == 4);
        }
    }

    TEST_CASE("substitution examples") {
        Formula f = parse_formula("forall y. q(y, #b) & (exists z. r(#c, z))");
        // Build q(x,b) and friends by hand since x must be bound to parse.
        Formula qxb = Formula::atom("q", {Term::var("x"), Term::param("b")});
        CHECK(substitute_param(qxb, "a", "x") == Formula::atom("q", {Term::param("a"), Term::param("b")}));
        Formula bound = Formula::forall("x", Formula::atom("q", {Term::var("x")}));
        CHECK(substitute_param(bound, "a", "x") == bound);
        Formula ex = Formula::exists("y", Formula::atom("q", {Term::var("x"), Term::var("y")}));
        CHECK(substitute_param(ex, "a", "x") ==
              Formula::exists("y", Formula::atom("q", {Term::param("a"), Term::var("y")})));
        CHECK(substitute_param(f, "a", "x") == f);
    }

    TEST_CASE("signature conversion") {
        Formula p = Formula::atom("p"), q = Formula::atom("q");
        CHECK(convert_signature(Formula::neg(p), Signature::ToBot) == Formula::impl(p, Formula::bot()));
        Formula p0 = Formula::atom("p0");
        CHECK(convert_signature(Formula::bot(), Signature::ToNeg) == Formula::conj(p0, Formula::neg(p0)));
        CHECK(convert_signature(Formula::conj(p, q), Signature::ToBot) == Formula::conj(p, q));
        CHECK_THROWS_WITH(convert_signature(parse_formula("p0 -> false"), Signature::ToNeg), "reserved atom clash");
    }

    TEST_CASE("parameters in first-occurrence order") {
        Formula f = parse_formula("r(#b, #a) & q(#b) | exists x. r(x, #c)");
        CHECK(params_of(f) == std::vector<std::string>{"b", "a", "c"});
        CHECK(rename_param(f, "b", "d") == parse_formula("r(#d, #a) & q(#d) | exists x. r(x, #c)"));
    }

    TEST_CASE("property: print then parse is the identity") {
        testsupport::Gen g(1);
        for (int i = 0; i < 2000; ++i) {
            Formula f = i % 2 ? g.prop(5) : g.fo(5);
            INFO(f.str());
            CHECK(parse_formula(f.str()) == f);
        }
    }

    TEST_CASE("property: complexity decreases on immediate subformulae") {
        testsupport::Gen g(2);
        for (int i = 0; i < 500; ++i) {
            Formula f = g.fo(5);
            CHECK(f.complexity() >= 0);
            switch (f.kind()) {
                case Kind::Bot:
                case Kind::Atom: CHECK(f.complexity() == 0); break;
                case Kind::Neg:
                case Kind::Forall:
                case Kind::Exists: CHECK(f.left().complexity() < f.complexity()); break;
                default:
                    CHECK(f.left().complexity() < f.complexity());
                    CHECK(f.right().complexity() < f.complexity());
            }
        }
    }

    TEST_CASE("property: substitutions of distinct variables commute") {
        testsupport::Gen g(3);
        for (int i = 0; i < 300; ++i) {
            // Free x and y: open up two quantifiers when present.
            Formula f = Formula::conj(Formula::atom("r", {Term::var("x"), Term::var("y")}),
                                      Formula::atom("q", {Term::var("y")}));
            Formula h = Formula::disj(f, g.fo(3));
            Formula lhs = substitute_param(substitute_param(h, "c", "x"), "d", "y");
            Formula rhs = substitute_param(substitute_param(h, "d", "y"), "c", "x");
            CHECK(lhs == rhs);
        }
    }

    TEST_CASE("property: conversions are idempotent on their output") {
        testsupport::Gen g(4);
        for (int i = 0; i < 500; ++i) {
            Formula f = g.prop(4);
            Formula b = convert_signature(f, Signature::ToBot);
            CHECK(!contains_neg(b));
            CHECK(convert_signature(b, Signature::ToBot) == b);
            Formula n = convert_signature(f, Signature::ToNeg);
            CHECK(!contains_bot(n));
            CHECK(convert_signature(n, Signature::ToNeg) == n);
        }
    }

    TEST_CASE("ordering is a strict total order consistent with equality") {
        testsupport::Gen g(5);
        std::vector<Formula> fs;
        for (int i = 0; i < 200; ++i) fs.push_back(g.prop(3));
        for (const Formula& a : fs)
            for (const Formula& b : fs) {
                CHECK((a.compare(b) == 0) == (a == b));
                CHECK(a.compare(b) == -b.compare(a));
            }
    }
}
