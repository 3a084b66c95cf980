#include "doctest.h"
#include "support.hpp"

#include "intuit/proof_io.hpp"
#include "intuit/search.hpp"

using namespace intuit;

namespace {

SearchConfig config(const std::string& calc, int depth) {
    SearchConfig c;
    c.calculus = calc;
    c.depth_bound = depth;
    return c;
}

// Every world of every model with up to `worlds` worlds on p, q forces f.
bool valid_up_to(const Formula& f, int worlds) {
    EnumerateOptions o;
    o.max_worlds = worlds;
    o.atoms = {{"p", 0}, {"q", 0}};
    bool ok = true;
    enumerate_models(o, [&](const KripkeModel& m) {
        for (int w = 0; w < m.size() && ok; ++w) ok = testsupport::force(m, w, f);
        return ok;
    });
    return ok;
}

}  // namespace

TEST_SUITE("search") {
    TEST_CASE("nested proof of the first axiom") {
        auto r = prove_nested(parse_nested("-> p -> (q -> p)"), config("nint-star", 10));
        REQUIRE(r.proof);
        CHECK(check_nested_derivation(nested_calculus("nint-star"), *r.proof).ok);
        CHECK(r.proof->height() <= 10);
    }

    TEST_CASE("Peirce's law is not found in G3Int") {
        Formula peirce = parse_formula("((p -> q) -> p) -> p");
        auto r = prove_labelled(parse_labelled("=> w: ((p -> q) -> p) -> p"), config("g3int", 12));
        CHECK_FALSE(r.proof);
        auto cm = find_countermodel(peirce, 3);
        REQUIRE(cm);
        CHECK_FALSE(testsupport::force(cm->first, cm->second, peirce));
    }

    TEST_CASE("falsum goals are converted for the nested calculi") {
        auto r = prove_nested(parse_nested("-> false -> p"), config("nint-star", 10));
        REQUIRE(r.proof);
        CHECK(r.proof->conclusion == parse_nested("-> (p0 & ~p0) -> p"));
        CHECK(check_nested_derivation(nested_calculus("nint-star"), *r.proof).ok);
        CHECK_THROWS(prove_nested(parse_nested("-> false -> p0"), config("nint-star", 10)));
    }

    TEST_CASE("negation goals are converted for G3Int") {
        auto r = prove_labelled(parse_labelled("=> w: ~~(p | ~p)"), config("g3int", 12));
        REQUIRE(r.proof);
        CHECK(r.proof->conclusion == parse_labelled("=> w: ((p | (p -> false)) -> false) -> false"));
        CHECK(check_derivation(labelled_calculus("g3int"), *r.proof).ok);
    }

    TEST_CASE("decision examples") {
        SearchConfig c = config("nint-star", 12);
        Verdict lem = decide_prop(parse_formula("p | ~p"), 4, c);
        REQUIRE(std::holds_alternative<Countermodel>(lem));
        CHECK(std::get<Countermodel>(lem).model.size() == 2);
        Verdict dn = decide_prop(parse_formula("~~(p | ~p)"), 4, c);
        REQUIRE(std::holds_alternative<Theorem>(dn));
        CHECK(valid_up_to(parse_formula("~~(p | ~p)"), 4));
        Verdict atom = decide_prop(parse_formula("p"), 4, c);
        REQUIRE(std::holds_alternative<Countermodel>(atom));
        const KripkeModel& m = std::get<Countermodel>(atom).model;
        CHECK(m.size() == 1);
        CHECK(m.atom("p", {}) == 0);
        CHECK_THROWS(decide_prop(parse_formula("q(#a)"), 2, c));
    }

    TEST_CASE("countermodel examples") {
        CHECK_FALSE(find_countermodel(parse_formula("p -> p"), 3));
        Formula wem = parse_formula("~p | ~~p");
        auto cm = find_countermodel(wem, 4);
        REQUIRE(cm);
        CHECK_FALSE(testsupport::force(cm->first, cm->second, wem));
        CHECK(cm->first.size() == 3);
    }

    TEST_CASE("first-order goals") {
        auto l = prove_labelled(parse_labelled("a in D(w) => w: (forall x. q(x)) -> q(#a)"), config("g3intqc", 10));
        REQUIRE(l.proof);
        CHECK(check_derivation(labelled_calculus("g3intqc"), *l.proof).ok);
        auto n = prove_nested(parse_nested("-> (forall x. q(x)) -> exists x. q(x)"), config("nintqc-star", 10));
        REQUIRE(n.proof);
        CHECK(check_nested_derivation(nested_calculus("nintqc-star"), *n.proof).ok);
        auto cd = prove_nested(parse_nested("-> (forall x. (q(x) | p)) -> (forall x. q(x)) | p"), config("nintqc-star", 12));
        REQUIRE(cd.proof);
        CHECK(check_nested_derivation(nested_calculus("nintqc-star"), *cd.proof).ok);
    }

    TEST_CASE("bounds are reported, never refutations") {
        auto r = prove_nested(parse_nested("-> (p -> (q -> r)) -> ((p -> q) -> (p -> r))"), config("nint-star", 3));
        CHECK_FALSE(r.proof);
        CHECK(r.bound_hit);
        SearchConfig bad = config("nint-star", 0);
        CHECK_THROWS_AS(prove_nested(parse_nested("-> p"), bad), std::invalid_argument);
        CHECK_THROWS_AS(prove_labelled(parse_labelled("=> w: p"), config("nint-star", 4)), std::invalid_argument);
    }

    TEST_CASE("property: search is deterministic") {
        testsupport::Gen g(51);
        for (int i = 0; i < 60; ++i) {
            Formula f = g.prop(3, {"p", "q"}, false);
            NestedSequent goal;
            goal.succ.push_back(f);
            auto a = prove_nested(goal, config("nint-star", 10)), b = prove_nested(goal, config("nint-star", 10));
            REQUIRE(a.proof.has_value() == b.proof.has_value());
            CHECK(a.nodes == b.nodes);
            if (a.proof) CHECK(format_proof("nint-star", *a.proof) == format_proof("nint-star", *b.proof));
        }
    }

    TEST_CASE("property: proofs check and their conclusions are valid") {
        testsupport::Gen g(52);
        int proved = 0;
        for (int i = 0; i < 400; ++i) {
            Formula f = g.prop(3, {"p", "q"}, false);
            NestedSequent ng;
            ng.succ.push_back(f);
            auto n = prove_nested(ng, config("nint-star", 12));
            auto l = prove_labelled(LabelledSequent{{}, {}, {}, {{"w", f}}}, config("g3int", 12));
            if (n.proof) {
                ++proved;
                CHECK(check_nested_derivation(nested_calculus("nint-star"), *n.proof).ok);
                CHECK(valid_up_to(f, 3));
            }
            if (l.proof) {
                CHECK(check_derivation(labelled_calculus("g3int"), *l.proof).ok);
                CHECK(valid_up_to(f, 3));
            }
            // Both searches agree on these small formulae.
            CHECK(n.proof.has_value() == l.proof.has_value());
        }
        CHECK(proved > 20);
    }

    TEST_CASE("property: verdicts agree with the model oracle") {
        testsupport::Gen g(53);
        SearchConfig c = config("nint-star", 12);
        for (int i = 0; i < 300; ++i) {
            Formula f = g.prop(3, {"p", "q"}, g.coin());
            Verdict v = decide_prop(f, 3, c);
            if (auto* t = std::get_if<Theorem>(&v)) {
                CHECK(valid_up_to(f, 3));
                CHECK(check_nested_derivation(nested_calculus("nint-star"), t->proof).ok);
            } else if (auto* m = std::get_if<Countermodel>(&v)) {
                CHECK_FALSE(testsupport::force(m->model, m->world, f));
            }
        }
    }
}
