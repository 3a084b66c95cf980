#include "doctest.h"
#include "support.hpp"

#include "intuit/graph.hpp"
#include "intuit/kripke.hpp"
#include "intuit/nested.hpp"

using namespace intuit;

namespace {

Witness fw(const char* f, std::string a = "", int child = -1) {
    Witness w;
    w.formula = parse_formula(f);
    w.a = std::move(a);
    w.child = child;
    return w;
}

NestedDerivation nnode(const char* concl, Rule r, std::vector<int> hole, Witness w,
                       std::vector<NestedDerivation> ps = {}) {
    return {parse_nested(concl), r, std::move(hole), std::move(w), std::move(ps)};
}

}  // namespace

TEST_SUITE("nested") {
    TEST_CASE("syntax, multiset equality and addressing") {
        NestedSequent s = parse_nested("p(#a) -> p(#b), [false -> forall x. q(x, #b)]");
        CHECK(s.children.size() == 1);
        CHECK(parse_nested(s.str()) == s);
        CHECK(parse_nested("p, q -> r, [a ->], [b ->]") == parse_nested("q, p -> r, [b ->], [a ->]"));
        CHECK(parse_nested("p -> [a ->]") != parse_nested("p -> [a ->], [a ->]"));
        CHECK(s.at({0}) != nullptr);
        CHECK(s.at({1}) == nullptr);
        CHECK(s.params() == std::set<std::string>{"a", "b"});
        CHECK(parse_nested("(p -> q) -> r").ante.size() == 1);
    }

    TEST_CASE("lift in the unstarred calculus") {
        NestedCalculus n = nested_calculus("nint");
        NestedSequent c = parse_nested("r, p -> q, [s -> t]");
        CHECK(check_nested_inference(n, Rule::lift, c, {}, {parse_nested("r -> q, [s, p -> t]")}, fw("p", "", 0)).ok);
        CHECK_FALSE(
            check_nested_inference(n, Rule::lift, c, {}, {parse_nested("r, p -> q, [s, p -> t]")}, fw("p", "", 0)).ok);
        NestedCalculus st = nested_calculus("nint-star");
        CHECK(check_nested_inference(st, Rule::lift, c, {}, {parse_nested("r, p -> q, [s, p -> t]")}, fw("p", "", 0))
                  .ok);
    }

    TEST_CASE("universal right eigenparameter") {
        NestedCalculus q = nested_calculus("nintqc-star");
        NestedSequent c = parse_nested("q(#a) -> forall x. q(x)");
        CheckResult bad = check_nested_inference(q, Rule::forall_r, c, {}, {parse_nested("q(#a) -> q(#a)")},
                                                 fw("forall x. q(x)", "a"));
        CHECK_FALSE(bad.ok);
        CHECK(bad.message.find("eigenvariable") != std::string::npos);
        CHECK(check_nested_inference(q, Rule::forall_r, c, {}, {parse_nested("q(#a) -> q(#b)")},
                                     fw("forall x. q(x)", "b"))
                  .ok);
    }

    TEST_CASE("identity leaf at a hole") {
        NestedCalculus st = nested_calculus("nint-star");
        CHECK(check_nested_inference(st, Rule::id, parse_nested("r -> s, [q, p -> p, t]"), {0}, {}, fw("p")).ok);
        CHECK_FALSE(check_nested_inference(st, Rule::id, parse_nested("r -> s, [q, p -> t], [ -> p]"), {0}, {}, fw("p"))
                        .ok);
    }

    TEST_CASE("derivations") {
        NestedDerivation imp = nnode("-> p -> p", Rule::imp_r, {}, fw("p -> p"),
                                     {nnode("-> [p -> p]", Rule::id, {0}, fw("p"))});
        CHECK(check_nested_derivation(nested_calculus("nint"), imp).ok);
        CHECK(check_nested_derivation(nested_calculus("nint-star"), imp).ok);
        NestedDerivation lem = nnode("-> p | ~p", Rule::id, {}, fw("p"));
        CHECK_FALSE(check_nested_derivation(nested_calculus("nint"), lem).ok);

        // ~(p & ~p): (neg_r), (and_l), (neg_l), (id).
        NestedDerivation contra = nnode(
            "-> ~(p & ~p)", Rule::neg_r, {}, fw("~(p & ~p)"),
            {nnode("-> [p & ~p ->]", Rule::and_l, {0}, fw("p & ~p"),
                   {nnode("-> [p, ~p ->]", Rule::neg_l, {0}, fw("~p"),
                          {nnode("-> [p, ~p -> p]", Rule::id, {0}, fw("p"))})})});
        CHECK(check_nested_derivation(nested_calculus("nint-star"), contra).ok);
        CHECK(contra.height() == 4);
        // The unstarred (neg_l) drops the negation, so the same tree fails there.
        CheckResult r = check_nested_derivation(nested_calculus("nint"), contra);
        CHECK_FALSE(r.ok);
        CHECK(r.path == std::vector<int>{0, 0});
    }

    TEST_CASE("backward application examples") {
        NestedCalculus st = nested_calculus("nint-star");
        auto c = apply_nested_backward(st, Rule::imp_r, parse_nested("-> p -> q"));
        REQUIRE(c.size() == 1);
        CHECK(c[0].premises[0] == parse_nested("-> [p -> q]"));
        auto l = apply_nested_backward(st, Rule::lift, parse_nested("p -> q, [r -> s]"));
        REQUIRE(l.size() == 1);
        CHECK(l[0].premises[0] == parse_nested("p -> q, [r, p -> s]"));
        CHECK(apply_nested_backward(st, Rule::and_r, parse_nested("-> p")).empty());
        CHECK(apply_nested_backward(st, Rule::lift, parse_nested("p -> q, [p -> s]")).empty());
    }

    TEST_CASE("property: shared rules have identical instances in both figures") {
        testsupport::Gen g(41);
        NestedCalculus n = nested_calculus("nintqc"), s = nested_calculus("nintqc-star");
        const Rule shared[] = {Rule::id,    Rule::and_l, Rule::or_r,     Rule::or_l,    Rule::and_r,
                               Rule::neg_r, Rule::imp_r, Rule::forall_r, Rule::exists_l};
        int seen = 0;
        for (int i = 0; i < 300; ++i) {
            NestedSequent goal = g.nested(2);
            goal.succ.push_back(g.fo(2));
            goal.ante.push_back(g.fo(2));
            for (Rule r : shared) {
                auto a = apply_nested_backward(n, r, goal);
                auto b = apply_nested_backward(s, r, goal);
                REQUIRE(a.size() == b.size());
                for (std::size_t k = 0; k < a.size(); ++k) {
                    ++seen;
                    CHECK(a[k].premises == b[k].premises);
                    CHECK(check_nested_inference(s, r, goal, a[k].hole, a[k].premises, a[k].wit).ok);
                }
            }
        }
        CHECK(seen > 200);
    }

    TEST_CASE("property: starred rules are locally sound") {
        testsupport::Gen g(42);
        NestedCalculus calc = nested_calculus("nint-star");
        EnumerateOptions o;
        o.max_worlds = 3;
        o.atoms = {{"p", 0}, {"q", 0}, {"r", 0}};
        std::vector<KripkeModel> models;
        enumerate_models(o, [&](const KripkeModel& m) { return models.push_back(m), true; });
        int n = 0;
        for (int i = 0; i < 120; ++i) {
            NestedSequent goal = g.nested(1, 1);
            for (Rule r : calc.rules)
                for (const NestedStep& st : apply_nested_backward(calc, r, goal)) {
                    ++n;
                    for (std::size_t k = 0; k < models.size(); k += 7) {
                        bool all = true;
                        for (const auto& p : st.premises) all = all && nested_sequent_holds(models[k], p);
                        if (all) CHECK(nested_sequent_holds(models[k], goal));
                    }
                }
        }
        CHECK(n > 100);
    }
}
