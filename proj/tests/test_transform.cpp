#include "doctest.h"
#include "derivations.hpp"
#include "support.hpp"

#include "intuit/graph.hpp"
#include "intuit/transform.hpp"

using namespace intuit;
using namespace testsupport;

namespace {

const Calculus& ext() {
    static const Calculus c = labelled_calculus("g3intqc-ext");
    return c;
}

bool none_of(const LabelledDerivation& d, std::initializer_list<Rule> rs) {
    for (Rule r : rs)
        if (d.count(r)) return false;
    return true;
}

bool checks(const LabelledDerivation& d) { return check_derivation(ext(), d).ok; }

// Search proofs of random small theorems, in both base calculi.
std::vector<LabelledDerivation> generated(std::uint64_t seed, int want) {
    Gen g(seed);
    std::vector<LabelledDerivation> out;
    for (int i = 0; i < 4000 && static_cast<int>(out.size()) < want; ++i) {
        Formula f = g.prop(3, {"p", "q"}, g.below(3) == 0);
        if (auto d = search_proof(f, g.coin() ? "g3int" : "g3int-ext", 10)) out.push_back(*d);
    }
    return out;
}

}  // namespace

TEST_SUITE("transform") {
    TEST_CASE("weakening renames a clashing eigenlabel") {
        LabelledDerivation d = identity_proof();
        auto r = weaken_derivation(d, parse_labelled("w<=v, v: q =>"));
        CHECK(checks(r.derivation));
        CHECK(r.derivation.conclusion == parse_labelled("w<=v, v: q => w: p -> p"));
        CHECK(r.derivation.wit.v != "v");
        CHECK(r.report.height_after == r.report.height_before);
    }

    TEST_CASE("label substitution merges worlds") {
        LabelledDerivation d = node("x<=y, x: p => y: p", Rule::id, wit("x", fm("p"), "y"));
        auto r = substitute_label_derivation(d, "x", "y");
        CHECK(r.derivation.conclusion == parse_labelled("x<=x, x: p => x: p"));
        CHECK(checks(r.derivation));
        // Substituting for the eigenlabel's name renames the eigenlabel first.
        auto e = substitute_label_derivation(identity_proof(), "v", "w");
        CHECK(e.derivation.conclusion == parse_labelled("=> v: p -> p"));
        CHECK(checks(e.derivation));
    }

    TEST_CASE("parameter substitution") {
        auto d = search_proof(parse_labelled("a in D(w), w: forall x. q(x) => w: q(#a)"), "g3intqc", 8);
        REQUIRE(d);
        auto r = substitute_param_derivation(*d, "b", "a");
        CHECK(r.derivation.conclusion == parse_labelled("b in D(w), w: forall x. q(x) => w: q(#b)"));
        CHECK(checks(r.derivation));
        CHECK(r.report.height_after == r.report.height_before);
    }

    TEST_CASE("inversion of implication and disjunction on the right") {
        auto r = invert_derivation(identity_proof(), Rule::imp_r, wit("w", fm("p -> p"), "z"));
        CHECK(r.derivation.conclusion == parse_labelled("w<=z, z: p => z: p"));
        CHECK(checks(r.derivation));
        CHECK(r.report.height_after <= r.report.height_before);

        auto d = search_proof(fm("(p -> p) | q"), "g3int");
        REQUIRE(d);
        auto o = invert_derivation(*d, Rule::or_r, wit("w", fm("(p -> p) | q")));
        CHECK(o.derivation.conclusion == parse_labelled("=> w: p -> p, w: q"));
        CHECK(checks(o.derivation));

        CHECK_THROWS_AS(invert_derivation(*d, Rule::and_r, wit("w", fm("p & q"))), TransformError);
    }

    TEST_CASE("inversion of a lifted conjunction") {
        Formula pq = fm("p & q");
        LabelledDerivation d =
            node("w<=v, w: p & q => v: q", Rule::lift, lift_wit("w", "v", pq),
                 {node("w<=v, w: p & q, v: p & q => v: q", Rule::and_l, wit("v", pq),
                       {node("w<=v, w: p & q, v: p, v: q => v: q", Rule::id_star, wit("v", fm("q")))})});
        auto r = invert_derivation(d, Rule::and_l, wit("w", pq));
        CHECK(r.derivation.conclusion == parse_labelled("w<=v, w: p, w: q => v: q"));
        CHECK(checks(r.derivation));
    }

    TEST_CASE("contraction cases") {
        auto fl = search_proof(parse_labelled("w: p & q, w: p & q => w: q & p"), "g3int-ext", 8);
        REQUIRE(fl);
        auto r = contract_derivation(*fl, Rule::ctr_Fl, wit("w", fm("p & q")));
        CHECK(r.derivation.conclusion == parse_labelled("w: p & q => w: q & p"));
        CHECK(checks(r.derivation));
        CHECK(r.report.height_after <= r.report.height_before);

        auto fr = search_proof(parse_labelled("=> w: p -> p, w: p -> p"), "g3int", 8);
        REQUIRE(fr);
        auto s = contract_derivation(*fr, Rule::ctr_Fr, wit("w", fm("p -> p")));
        CHECK(s.derivation.conclusion == parse_labelled("=> w: p -> p"));
        CHECK(checks(s.derivation));

        // A reflexive transitivity step needs both copies of w<=w.
        LabelledDerivation t =
            node("w<=w, w<=w, w: p => w: p", Rule::tra, [] {
                Witness x = wit("w");
                x.v = x.u = "w";
                return x;
            }(), {node("w<=w, w<=w, w<=w, w: p => w: p", Rule::id, wit("w", fm("p"), "w"))});
        Witness rel = wit("w", std::nullopt, "w");
        rel.side = Side::Rel;
        auto c = contract_derivation(t, Rule::ctr_R, rel);
        CHECK(c.derivation.conclusion == parse_labelled("w<=w, w: p => w: p"));
        CHECK(checks(c.derivation));

        CHECK_THROWS_AS(contract_derivation(identity_proof(), Rule::ctr_Fl, wit("w", fm("p"))), TransformError);
    }

    TEST_CASE("reflexivity becomes an initial sequent at one world") {
        auto r = eliminate_ref(identity_proof());
        CHECK(r.derivation.count(Rule::ref) == 0);
        CHECK(r.derivation.count(Rule::id_star) == 1);
        CHECK(r.derivation.conclusion == identity_proof().conclusion);
        CHECK(r.report.rules_eliminated.at(Rule::ref) == 1);
        CHECK(checks(r.derivation));
    }

    TEST_CASE("transitivity becomes lifts") {
        Witness x = wit("w", std::nullopt, "v");
        x.u = "u";
        LabelledDerivation d = node("w<=v, v<=u, w: p => u: p", Rule::tra, x,
                                    {node("w<=u, w<=v, v<=u, w: p => u: p", Rule::id, wit("w", fm("p"), "u"))});
        auto r = eliminate_tra(d);
        CHECK(r.derivation.count(Rule::tra) == 0);
        CHECK(r.derivation.count(Rule::lift) == 2);
        CHECK(checks(r.derivation));
    }

    TEST_CASE("falsum on the left is expanded through the encoding") {
        LabelledDerivation d = node("w: false => w: p", Rule::bot_l, wit("w"));
        auto r = expand_derived_rules(d);
        CHECK(r.derivation.conclusion == parse_labelled("w: p0 & ~p0 => w: p"));
        CHECK(r.derivation.count(Rule::bot_l) == 0);
        CHECK(r.derivation.count(Rule::neg_l) == 1);
        CHECK_FALSE(r.report.warning.empty());
        CHECK(checks(r.derivation));
        LabelledDerivation clash = node("w: false => w: p0", Rule::bot_l, wit("w"));
        CHECK_THROWS_AS(expand_derived_rules(clash), TransformError);
    }

    TEST_CASE("structural elimination and nested extraction of the axioms") {
        for (const char* s : {"p -> (q -> p)", "(p -> (q -> r)) -> ((p -> q) -> (p -> r))", "p & q -> p",
                              "p -> (q -> p & q)", "p -> p | q", "(p -> r) -> ((q -> r) -> (p | q -> r))",
                              "(p -> q) -> ((p -> ~q) -> ~p)", "~p -> (p -> q)"}) {
            CAPTURE(s);
            auto d = search_proof(fm(s), "g3int", 12);
            REQUIRE(d);
            auto r = eliminate_structural(*d);
            CHECK(none_of(r.derivation, {Rule::id, Rule::bot_l, Rule::imp_l, Rule::ref, Rule::tra}));
            CHECK(r.report.target_calculus == "g3int-restricted");
            auto n = proof_to_nested(r.derivation);
            CHECK(check_nested_derivation(nested_calculus("nint-star"), n.derivation).ok);
            CHECK(n.derivation.conclusion == nestify(r.derivation.conclusion));
        }
    }

    TEST_CASE("first-order elimination") {
        for (std::string s : {"a in D(w) => w: (forall x. q(x)) -> exists x. q(x)",
                              "=> w: (forall x. (q(x) & p)) -> forall x. q(x)",
                              "=> w: (exists x. q(x) & p) -> exists x. q(x)"}) {
            CAPTURE(s);
            auto d = search_proof(parse_labelled(s), "g3intqc", 12);
            REQUIRE(d);
            auto r = eliminate_structural(*d);
            CHECK(none_of(r.derivation, {Rule::id, Rule::id_q, Rule::imp_l, Rule::ref, Rule::tra, Rule::nd, Rule::cd,
                                         Rule::forall_l, Rule::forall_r, Rule::exists_r}));
            CHECK(check_derivation(labelled_calculus("g3intqc-restricted"), r.derivation).ok);
            auto n = proof_to_nested(r.derivation);
            CHECK(check_nested_derivation(nested_calculus("nintqc-star"), n.derivation).ok);
        }
    }

    TEST_CASE("non-theorem end sequents skip the tree check with a warning") {
        Witness x = wit("w", std::nullopt, "v");
        x.u = "u";
        LabelledDerivation d = node("w<=v, v<=u, w: p => u: p", Rule::tra, x,
                                    {node("w<=u, w<=v, v<=u, w: p => u: p", Rule::id, wit("w", fm("p"), "u"))});
        auto r = eliminate_structural(d);
        CHECK_FALSE(r.report.warning.empty());
        CHECK(check_derivation(labelled_calculus("g3int-restricted"), r.derivation).ok);
    }

    TEST_CASE("invalid inputs are rejected without a breach") {
        LabelledDerivation bad = identity_proof();
        bad.premises[0].premises[0].wit.w = "x";
        try {
            eliminate_ref(bad);
            FAIL("expected an error");
        } catch (const TransformError& e) {
            CHECK_FALSE(e.breach);
        }
        CHECK_THROWS_AS(proof_to_nested(identity_proof()), TransformError);
    }

    TEST_CASE("property: substitution and weakening preserve height") {
        Gen g(71);
        auto ds = generated(72, 200);
        REQUIRE(ds.size() == 200);
        for (const auto& d : ds) {
            auto l = derivation_labels(d);
            std::vector<std::string> ls(l.begin(), l.end());
            std::string to = ls[static_cast<std::size_t>(g.below(static_cast<int>(ls.size())))];
            auto s = substitute_label_derivation(d, to, "w");
            CHECK(s.report.height_after == s.report.height_before);
            CHECK(checks(s.derivation));
            LabelledSequent extra;
            extra.rel.push_back({"w", ls[static_cast<std::size_t>(g.below(static_cast<int>(ls.size())))]});
            extra.ante.push_back({"w", g.prop(2, {"p", "q"}, false)});
            auto k = weaken_derivation(d, extra);
            CHECK(k.report.height_after == k.report.height_before);
            CHECK(checks(k.derivation));
        }
    }

    TEST_CASE("property: inversion and contraction") {
        auto ds = generated(73, 200);
        int inverted = 0, contracted = 0;
        for (const auto& d : ds) {
            const LFormula& goal = d.conclusion.succ[0];
            Rule r = goal.f.kind() == Kind::Impl  ? Rule::imp_r
                     : goal.f.kind() == Kind::And ? Rule::and_r
                     : goal.f.kind() == Kind::Or  ? Rule::or_r
                                                  : Rule::neg_r;
            if (goal.f.kind() == Kind::Atom || goal.f.kind() == Kind::Bot) continue;
            auto i = invert_derivation(d, r, wit(goal.label, goal.f));
            ++inverted;
            CHECK(i.report.height_after <= i.report.height_before);
            CHECK(checks(i.derivation));
            // Duplicate an antecedent formula of the inverted proof, then contract.
            if (i.derivation.conclusion.ante.empty()) continue;
            LabelledSequent dup;
            dup.ante.push_back(i.derivation.conclusion.ante[0]);
            LabelledDerivation twice = weaken_derivation(i.derivation, dup).derivation;
            auto c = contract_derivation(twice, Rule::ctr_Fl, wit(dup.ante[0].label, dup.ante[0].f));
            ++contracted;
            CHECK(c.derivation.conclusion == i.derivation.conclusion);
            CHECK(c.report.height_after <= c.report.height_before);
            CHECK(checks(c.derivation));
        }
        CHECK(inverted > 100);
        CHECK(contracted > 50);
    }

    TEST_CASE("property: the pipeline preserves end sequents") {
        for (const auto& d : generated(74, 120)) {
            for (auto op : {eliminate_ref, eliminate_tra, expand_derived_rules}) {
                auto r = op(d);
                CHECK(checks(r.derivation));
            }
            auto s = eliminate_structural(d);
            CHECK(none_of(s.derivation, {Rule::id, Rule::bot_l, Rule::imp_l, Rule::ref, Rule::tra}));
            auto n = proof_to_nested(s.derivation);
            CHECK(check_nested_derivation(nested_calculus("nint-star"), n.derivation).ok);
        }
    }
}

TEST_CASE("property: first-order pipeline" * doctest::test_suite("transform")) {
    Gen g(75);
    int done = 0;
    for (int i = 0; i < 3000 && done < 40; ++i) {
        LabelledSequent goal = parse_labelled("a in D(w), b in D(w) =>");
        goal.succ.push_back({"w", g.fo(3)});
        auto d = search_proof(goal, g.coin() ? "g3intqc" : "g3intqc-ext", 10);
        if (!d) continue;
        ++done;
        for (auto op : {eliminate_ref, eliminate_tra, eliminate_nd_cd, expand_derived_rules}) CHECK(checks(op(*d).derivation));
        auto s = eliminate_structural(*d);
        CHECK(check_derivation(labelled_calculus("g3intqc-restricted"), s.derivation).ok);
        LabelledSequent end = d->conclusion;
        for (LFormula& x : end.succ) x.f = bot_to_neg_unchecked(x.f);
        CHECK(s.derivation.conclusion == end);
        auto n = proof_to_nested(s.derivation);
        CHECK(check_nested_derivation(nested_calculus(n.report.target_calculus), n.derivation).ok);
    }
    CHECK(done == 40);
}
