#include "doctest.h"
#include "support.hpp"

#include "intuit/kripke.hpp"
#include "intuit/labelled.hpp"

#include <set>

using namespace intuit;

namespace {

Witness wit(std::string w, std::optional<Formula> f = std::nullopt, std::string v = "", std::string a = "") {
    Witness x;
    x.w = std::move(w);
    x.v = std::move(v);
    x.a = std::move(a);
    x.formula = std::move(f);
    return x;
}

LabelledDerivation node(const char* concl, Rule r, Witness x, std::vector<LabelledDerivation> ps = {}) {
    return {parse_labelled(concl), r, std::move(x), std::move(ps)};
}

// The two-step proof of p -> p: (imp_r) below (ref) below (id).
LabelledDerivation identity_proof() {
    Formula p = parse_formula("p");
    return node("=> w: p -> p", Rule::imp_r, wit("w", parse_formula("p -> p"), "v"),
                {node("w<=v, v: p => v: p", Rule::ref, wit("v"),
                      {node("v<=v, w<=v, v: p => v: p", Rule::id, wit("v", p, "v"))})});
}

// Breadth-first reachability over undirected edges, written out separately.
bool reach(const std::vector<RelAtom>& rel, const std::string& a, const std::string& b) {
    std::set<std::string> seen{a};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const RelAtom& r : rel) {
            if (seen.count(r.from) && seen.insert(r.to).second) grew = true;
            if (seen.count(r.to) && seen.insert(r.from).second) grew = true;
        }
    }
    return seen.count(b) > 0;
}

}  // namespace

TEST_SUITE("labelled") {
    TEST_CASE("sequent syntax and multiset equality") {
        LabelledSequent s = parse_labelled("w<=v, a in D(w), w: p(#a) => v: p(#a)");
        CHECK(s.rel.size() == 1);
        CHECK(s.dom.size() == 1);
        CHECK(s == parse_labelled("w: p(#a), #a in D(w), w<=v => v: p(#a)"));
        CHECK(s != parse_labelled("w<=v, w<=v, a in D(w), w: p(#a) => v: p(#a)"));
        CHECK(parse_labelled(s.str()) == s);
        CHECK(parse_labelled("=>").rel.empty());
        CHECK_THROWS_AS(parse_labelled("w: p"), ParseError);
    }

    TEST_CASE("implication right with a fresh label") {
        Calculus g = labelled_calculus("g3int");
        Formula pq = parse_formula("p -> q");
        LabelledSequent c = parse_labelled("u<=w, u: r => w: p -> q");
        LabelledSequent ok = parse_labelled("u<=w, w<=v, u: r, v: p => v: q");
        CHECK(check_inference(g, Rule::imp_r, c, {ok}, wit("w", pq, "v")).ok);
        LabelledSequent clash = parse_labelled("u<=w, w<=u, u: r, u: p => u: q");
        CheckResult r = check_inference(g, Rule::imp_r, c, {clash}, wit("w", pq, "u"));
        CHECK_FALSE(r.ok);
        CHECK(r.message.find("eigenvariable occurs in conclusion") != std::string::npos);
    }

    TEST_CASE("starred identity needs a path") {
        Calculus e = labelled_calculus("g3intqc-ext");
        Formula pa = parse_formula("p(#a)");
        Witness x = wit("w", pa);
        x.dom_labels = {"v"};
        CheckResult r = check_inference(e, Rule::id_q_star, parse_labelled("a in D(v), w: p(#a) => w: p(#a)"), {}, x);
        CHECK_FALSE(r.ok);
        CHECK(r.message.find("no path") != std::string::npos);
        CHECK(check_inference(e, Rule::id_q_star, parse_labelled("w<=v, a in D(v), w: p(#a) => w: p(#a)"), {}, x).ok);
        CHECK(check_inference(e, Rule::id_q_star, parse_labelled("v<=w, a in D(v), w: p(#a) => w: p(#a)"), {}, x).ok);
    }

    TEST_CASE("derivation checking") {
        CHECK(check_derivation(labelled_calculus("g3int"), identity_proof()).ok);
        CheckResult r = check_derivation(labelled_calculus("g3int-restricted"), identity_proof());
        CHECK_FALSE(r.ok);
        CHECK(r.message.find("not in calculus") != std::string::npos);
        LabelledDerivation bot = node("w: false =>", Rule::bot_l, wit("w"));
        CHECK(check_derivation(labelled_calculus("g3int"), bot).ok);
        CHECK(identity_proof().height() == 3);
        CHECK(identity_proof().count(Rule::ref) == 1);
    }

    TEST_CASE("failing node is located") {
        LabelledDerivation d = identity_proof();
        d.premises[0].premises[0].wit.v = "w";
        CheckResult r = check_derivation(labelled_calculus("g3int"), d);
        CHECK_FALSE(r.ok);
        CHECK(r.path == std::vector<int>{0, 0});
    }

    TEST_CASE("backward application examples") {
        Calculus g = labelled_calculus("g3int");
        auto c = apply_backward(g, Rule::imp_r, parse_labelled("=> w: p -> q"));
        REQUIRE(c.size() == 1);
        const std::string v = c[0].wit.v;
        CHECK(v != "w");
        CHECK(c[0].premises[0] == parse_labelled("w<=" + v + ", " + v + ": p => " + v + ": q"));
        auto l = apply_backward(g, Rule::imp_l, parse_labelled("w<=v, w: p -> q =>"));
        REQUIRE(l.size() == 1);
        CHECK(l[0].premises[0] == parse_labelled("w<=v, w: p -> q => v: p"));
        CHECK(l[0].premises[1] == parse_labelled("w<=v, w: p -> q, v: q =>"));
        CHECK(apply_backward(g, Rule::and_l, parse_labelled("=> w: p")).empty());
    }

    TEST_CASE("path existence") {
        CHECK(path_exists({{"w", "v"}}, "v", "w"));
        CHECK(path_exists({}, "w", "w"));
        CHECK_FALSE(path_exists({{"w", "v"}, {"u", "z"}}, "w", "z"));
    }

    TEST_CASE("sequent substitution") {
        CHECK(substitute_label(parse_labelled("w<=v, v: p => v: q"), "w", "v") ==
              parse_labelled("w<=w, w: p => w: q"));
        CHECK(substitute_param_seq(parse_labelled("a in D(w) => w: p(#b)"), "a", "b") ==
              parse_labelled("a in D(w) => w: p(#a)"));
        LabelledSequent s = parse_labelled("w<=u, w: p => u: p");
        CHECK(substitute_label(s, "w", "v") == s);
    }

    TEST_CASE("calculus registry") {
        for (const std::string& n : labelled_calculus_names()) CHECK(labelled_calculus(n).name == n);
        CHECK_THROWS(labelled_calculus("nope"));
        Calculus r = labelled_calculus("g3int-restricted");
        CHECK_FALSE(r.contains(Rule::ref));
        CHECK(r.contains(Rule::lift));
        for (int k = 0; k < kRuleCount; ++k) {
            Rule rule = static_cast<Rule>(k);
            CHECK(rule_from_name(rule_name(rule)) == rule);
            CHECK(rule_arity(rule) <= 2);
        }
    }

    TEST_CASE("property: path existence matches reachability") {
        testsupport::Gen g(31);
        for (int i = 0; i < 400; ++i) {
            std::vector<RelAtom> rel;
            int n = 1 + g.below(6), m = g.below(6);
            for (int k = 0; k < m; ++k)
                rel.push_back({"l" + std::to_string(g.below(n)), "l" + std::to_string(g.below(n))});
            std::string a = "l" + std::to_string(g.below(n)), b = "l" + std::to_string(g.below(n));
            CHECK(path_exists(rel, a, b) == (a == b || reach(rel, a, b)));
        }
    }

    TEST_CASE("property: backward candidates re-check and are sound per model") {
        // Local soundness: whenever every premise holds in a model, so does
        // the conclusion. Covers every base and extension rule.
        testsupport::Gen g(32);
        Calculus calc = labelled_calculus("g3intqc-ext");
        EnumerateOptions o;
        o.max_worlds = 3;
        o.atoms = {{"p", 0}, {"q", 1}, {"r", 2}};
        o.domain_size = 2;
        o.random = true;
        o.seed = 5;
        o.count = 40;
        std::vector<KripkeModel> models;
        enumerate_models(o, [&](const KripkeModel& m) { return models.push_back(m), true; });
        int instances = 0;
        for (int i = 0; i < 150; ++i) {
            LabelledSequent goal;
            std::vector<std::string> ls{"w", "v", "u"};
            for (int k = 0; k < 2; ++k) goal.rel.push_back({ls[g.below(3)], ls[g.below(3)]});
            goal.dom.push_back({g.coin() ? "a" : "b", ls[g.below(3)]});
            for (int k = 0; k < 2; ++k) goal.ante.push_back({ls[g.below(3)], g.fo(2)});
            for (int k = 0; k < 2; ++k) goal.succ.push_back({ls[g.below(3)], g.fo(2)});
            for (Rule r : calc.rules) {
                for (const BackwardStep& st : apply_backward(calc, r, goal)) {
                    ++instances;
                    REQUIRE(check_inference(calc, r, goal, st.premises, st.wit).ok);
                    for (const KripkeModel& m : models) {
                        bool all = true;
                        for (const auto& p : st.premises) all = all && labelled_sequent_holds(m, p);
                        if (all) CHECK(labelled_sequent_holds(m, goal));
                    }
                }
            }
        }
        CHECK(instances > 500);
    }
}
