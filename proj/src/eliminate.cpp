// Elimination of (ref), (tra), (nd), (cd) and expansion of the derived rules.
//
// One top-down pass rebuilds the derivation over a target sequent T. Atoms
// added by a dropped structural rule become virtual: they are absent from T
// but follow from its real relational atoms (a directed path for w <= v, an
// undirected path to some a in D(x) for a in D(w)). Rules that used a virtual
// atom are replaced by their starred variants, with (lift) chains carrying
// formulae along the real path. T may also carry extra antecedent formulae
// left behind by those chains.
#include "transform_internal.hpp"

#include "intuit/graph.hpp"

#include <deque>
#include <sstream>

namespace intuit {

namespace {

using detail::breach;

struct Mode {
    std::set<Rule> drop;
    bool expand = false;
};

LabelledSequent ante(const std::string& w, const Formula& f) { return {{}, {}, {{w, f}}, {}}; }

std::optional<std::vector<std::string>> directed_path(const LabelledSequent& t, const std::string& from,
                                                      const std::string& to) {
    std::map<std::string, std::string> parent{{from, from}};
    std::deque<std::string> q{from};
    while (!q.empty()) {
        std::string x = q.front();
        q.pop_front();
        if (x == to) break;
        for (const RelAtom& r : t.rel)
            if (r.from == x && !parent.count(r.to)) {
                parent[r.to] = x;
                q.push_back(r.to);
            }
    }
    if (!parent.count(to)) return std::nullopt;
    std::vector<std::string> path{to};
    while (path.back() != from) path.push_back(parent[path.back()]);
    return std::vector<std::string>(path.rbegin(), path.rend());
}

// Nearest label x, along relational atoms in either direction, with a in D(x).
std::optional<std::string> dom_source(const LabelledSequent& t, const std::string& a, const std::string& w) {
    std::set<std::string> seen{w};
    std::deque<std::string> q{w};
    while (!q.empty()) {
        std::string x = q.front();
        q.pop_front();
        if (t.has_dom(a, x)) return x;
        for (const RelAtom& r : t.rel)
            for (const auto& [p, n] : {std::pair{r.from, r.to}, {r.to, r.from}})
                if (p == x && seen.insert(n).second) q.push_back(n);
    }
    return std::nullopt;
}

template <class T>
std::vector<T> multiset_minus(std::vector<T> a, std::vector<T> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<T> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Single-premise steps applied upwards from a sequent.
struct Chain {
    explicit Chain(LabelledSequent s) : top(std::move(s)) {}
    void push(Rule r, const Witness& w) {
        auto ps = instantiate(r, top, w);
        if (!ps || ps->size() != 1) breach(std::string("cannot apply ") + rule_name(r) + " in a chain");
        steps.push_back({top, r, w});
        top = (*ps)[0];
    }
    LabelledDerivation wrap(LabelledDerivation d) const {
        for (std::size_t i = steps.size(); i-- > 0;)
            d = {steps[i].below, steps[i].rule, steps[i].wit, {std::move(d)}};
        return d;
    }
    struct Step {
        LabelledSequent below;
        Rule rule;
        Witness wit;
    };
    std::vector<Step> steps;
    LabelledSequent top;
};

class Engine {
public:
    explicit Engine(Mode m) : mode_(std::move(m)) {}

    LabelledDerivation run(const LabelledDerivation& d) { return go(d, d.conclusion); }

    std::map<std::string, int> trace;

private:
    void note(const std::string& s) { ++trace[s]; }

    void check_invariant(const LabelledSequent& s, const LabelledSequent& t) const {
        for (const RelAtom& r : multiset_minus(s.rel, t.rel))
            if (r.from != r.to && !directed_path(t, r.from, r.to))
                breach("relational atom " + r.from + " <= " + r.to + " is neither present nor derivable");
        for (const DomAtom& x : multiset_minus(s.dom, t.dom))
            if (!dom_source(t, x.param, x.label))
                breach("domain atom " + x.param + " in D(" + x.label + ") is neither present nor derivable");
        if (!multiset_minus(s.ante, t.ante).empty() || !multiset_minus(s.succ, t.succ).empty() ||
            !multiset_minus(t.succ, s.succ).empty() || !multiset_minus(t.rel, s.rel).empty() ||
            !multiset_minus(t.dom, s.dom).empty())
            breach("target sequent drifted from the source sequent");
    }

    LabelledDerivation generic(const LabelledDerivation& d, const LabelledSequent& t, bool count = true) {
        auto ps = instantiate(d.rule, t, d.wit);
        if (!ps) breach(std::string("principal material of ") + rule_name(d.rule) + " missing");
        if (count) note(std::string("generic step (") + rule_name(d.rule) + ")");
        LabelledDerivation out{t, d.rule, d.wit, {}};
        for (std::size_t i = 0; i < ps->size(); ++i) out.premises.push_back(go(d.premises[i], (*ps)[i]));
        return out;
    }

    // Applies `r` with witness `w` to the top of `c`, translating d's premises.
    LabelledDerivation close(const Chain& c, const LabelledDerivation& d, Rule r, const Witness& w) {
        auto ps = instantiate(r, c.top, w);
        if (!ps || ps->size() != d.premises.size()) breach(std::string("cannot apply ") + rule_name(r));
        LabelledDerivation out{c.top, r, w, {}};
        for (std::size_t i = 0; i < ps->size(); ++i) out.premises.push_back(go(d.premises[i], (*ps)[i]));
        return c.wrap(std::move(out));
    }

    void lifts(Chain& c, const Formula& f, const std::string& from, const std::string& to) {
        auto path = directed_path(c.top, from, to);
        if (!path) breach("no relational path from " + from + " to " + to);
        for (std::size_t i = 0; i + 1 < path->size(); ++i) {
            Witness x;
            x.w = (*path)[i];
            x.u = (*path)[i + 1];
            x.formula = f;
            c.push(Rule::lift, x);
        }
    }

    std::string source(const LabelledSequent& t, const std::string& a, const std::string& w) {
        auto s = dom_source(t, a, w);
        if (!s) breach("no domain atom for parameter " + a);
        return *s;
    }

    bool has_required(const LabelledDerivation& d, const LabelledSequent& t) const {
        auto ps = instantiate(d.rule, t, d.wit);
        return ps.has_value();
    }

    LabelledDerivation go(const LabelledDerivation& d, const LabelledSequent& t) {
        check_invariant(d.conclusion, t);
        const Witness& x = d.wit;
        switch (d.rule) {
            case Rule::ref:
            case Rule::tra:
            case Rule::nd:
            case Rule::cd:
                if (!mode_.drop.count(d.rule) && has_required(d, t)) return generic(d, t, false);
                note(std::string(rule_name(d.rule)) + " dropped");
                return go(d.premises[0], t);

            case Rule::id:
            case Rule::id_q: {
                bool literal = t.has_rel(x.w, x.v);
                for (const std::string& p : params_of(*x.formula)) literal = literal && t.has_dom(p, x.w);
                if (literal && !mode_.expand) return generic(d, t, false);
                Chain c(t);
                lifts(c, *x.formula, x.w, x.v);
                Witness y;
                y.w = x.v;
                y.formula = x.formula;
                for (const std::string& p : params_of(*x.formula)) y.dom_labels.push_back(source(c.top, p, x.v));
                note(std::string(rule_name(d.rule)) + " via lifts");
                return close(c, d, d.rule == Rule::id ? Rule::id_star : Rule::id_q_star, y);
            }

            case Rule::id_q_star: {
                if (has_required(d, t)) return generic(d, t, false);
                Witness y = x;
                std::vector<std::string> ps = params_of(*x.formula);
                for (std::size_t i = 0; i < ps.size(); ++i) y.dom_labels[i] = source(t, ps[i], x.w);
                note("id_q_star with rerouted domains");
                return close(Chain(t), d, Rule::id_q_star, y);
            }

            case Rule::bot_l: {
                if (!mode_.expand) return generic(d, t, false);
                Formula p0 = Formula::atom(kReservedAtom);
                Formula np0 = Formula::neg(p0);
                Chain c(t);
                Witness a;
                a.w = x.w;
                a.formula = Formula::conj(p0, np0);
                c.push(Rule::and_l, a);
                Witness n;
                n.w = x.w;
                n.formula = np0;
                c.push(Rule::neg_l, n);
                Witness i;
                i.w = x.w;
                i.formula = p0;
                note("bot_l expanded");
                return close(c, d, Rule::id_star, i);
            }

            case Rule::imp_l: {
                if (t.has_rel(x.w, x.v) && !mode_.expand) return generic(d, t, false);
                Chain c(t);
                lifts(c, *x.formula, x.w, x.v);
                Witness y;
                y.w = x.v;
                y.formula = x.formula;
                note("imp_l via lifts");
                return close(c, d, Rule::imp_l_star, y);
            }

            case Rule::forall_l: {
                if (t.has_rel(x.w, x.v) && t.has_dom(x.a, x.v) && !mode_.expand) return generic(d, t, false);
                Chain c(t);
                lifts(c, *x.formula, x.w, x.v);
                Witness y;
                y.w = x.v;
                y.v = source(c.top, x.a, x.v);
                y.a = x.a;
                y.formula = x.formula;
                note("forall_l via lifts");
                return close(c, d, Rule::forall_l_star, y);
            }

            case Rule::exists_r: {
                if (t.has_dom(x.a, x.w) && !mode_.expand) return generic(d, t, false);
                Witness y = x;
                y.v = source(t, x.a, x.w);
                note("exists_r made starred");
                return close(Chain(t), d, Rule::exists_r_star, y);
            }

            case Rule::forall_l_star:
            case Rule::exists_r_star: {
                if (t.has_dom(x.a, x.v)) return generic(d, t, false);
                Witness y = x;
                y.v = source(t, x.a, x.w);
                note(std::string(rule_name(d.rule)) + " with rerouted domain");
                return close(Chain(t), d, d.rule, y);
            }

            case Rule::forall_r: {
                if (!mode_.expand) return generic(d, t, false);
                // Identify the eigenlabel with w; w <= w becomes virtual.
                LabelledDerivation prem = detail::rename_label(d.premises[0], x.w, x.v);
                Witness y;
                y.w = x.w;
                y.a = x.a;
                y.formula = x.formula;
                auto ps = instantiate(Rule::forall_r_star, t, y);
                if (!ps) breach("forall_r principal missing");
                note("forall_r expanded");
                return {t, Rule::forall_r_star, y, {go(prem, (*ps)[0])}};
            }

            case Rule::lift: {
                if (t.has_rel(x.w, x.u)) return generic(d, t, false);
                if (x.w != x.u) {
                    Chain c(t);
                    lifts(c, *x.formula, x.w, x.u);
                    note("lift along a path");
                    return c.wrap(go(d.premises[0], c.top));
                }
                // Reflexive lift: the premise only duplicates w:F.
                note("reflexive lift contracted");
                LabelledDerivation out = go(d.premises[0], seq_union(t, ante(x.w, *x.formula)));
                Witness y;
                y.w = x.w;
                y.formula = x.formula;
                return detail::contract(out, Rule::ctr_Fl, y);
            }

            case Rule::lsub:
            case Rule::psub:
            case Rule::wk:
            case Rule::ctr_R:
            case Rule::ctr_Fl:
            case Rule::ctr_Fr:
            case Rule::cut:
                throw TransformError(std::string("rule ") + rule_name(d.rule) + " cannot be eliminated here", false);

            default:
                return generic(d, t);
        }
    }

    Mode mode_;
};

bool uses_quantifiers(const LabelledDerivation& d) {
    static const std::set<Rule> q{Rule::id_q,          Rule::id_q_star,     Rule::forall_l, Rule::forall_l_star,
                                  Rule::forall_r,      Rule::forall_r_star, Rule::exists_l, Rule::exists_r,
                                  Rule::exists_r_star, Rule::nd,            Rule::cd};
    if (q.count(d.rule) || !d.conclusion.dom.empty()) return true;
    for (const auto& p : d.premises)
        if (uses_quantifiers(p)) return true;
    return false;
}

template <class F>
void each_formula(const LabelledDerivation& d, F&& f) {
    for (const auto* side : {&d.conclusion.ante, &d.conclusion.succ})
        for (const LFormula& x : *side) f(x.f);
    if (d.wit.formula) f(*d.wit.formula);
    for (const auto& p : d.premises) each_formula(p, f);
}

LabelledDerivation to_neg(const LabelledDerivation& d) {
    LabelledDerivation out = d;
    for (auto* side : {&out.conclusion.ante, &out.conclusion.succ})
        for (LFormula& x : *side) x.f = bot_to_neg_unchecked(x.f);
    if (out.wit.formula) out.wit.formula = bot_to_neg_unchecked(*out.wit.formula);
    for (auto& p : out.premises) p = to_neg(p);
    return out;
}

bool contains_rule(const LabelledDerivation& d, const std::set<Rule>& rs) {
    if (rs.count(d.rule)) return true;
    for (const auto& p : d.premises)
        if (contains_rule(p, rs)) return true;
    return false;
}

void check_input(const LabelledDerivation& d) {
    if (CheckResult c = check_derivation(detail::universal_calculus(), d); !c) {
        std::ostringstream os;
        os << "input fails checking: " << c.message << " at [";
        for (std::size_t i = 0; i < c.path.size(); ++i) os << (i ? "," : "") << c.path[i];
        os << "]";
        throw TransformError(os.str(), false);
    }
}

LabelledTransform eliminate(const LabelledDerivation& in, Mode mode, bool restricted) {
    check_input(in);
    LabelledTransform r;
    LabelledDerivation d = in;
    if (mode.expand) {
        bool bot = false, p0 = false;
        each_formula(d, [&](const Formula& f) {
            bot = bot || contains_bot(f);
            for (const auto& [name, arity] : predicates_of(f)) p0 = p0 || (name == kReservedAtom && arity == 0);
        });
        if (bot && p0) throw TransformError("reserved atom clash", false);
        if (bot) {
            d = to_neg(d);
            r.report.warning = "falsum encoded as p0 & ~p0; the end sequent changed accordingly";
            r.report.steps.push_back("ToNeg conversion of the whole derivation");
        }
    }
    bool qc = uses_quantifiers(d);
    std::string calc = std::string(qc ? "g3intqc" : "g3int") + (restricted ? "-restricted" : "-ext");
    r.report.target_calculus = calc;

    // Contraction of a reflexive lift may reintroduce (nd) through inversion;
    // a further pass removes it.
    LabelledDerivation out = d;
    for (int pass = 0;; ++pass) {
        if (pass == 4) breach("elimination did not reach a fixpoint");
        Engine e(mode);
        out = e.run(out);
        for (const auto& [s, n] : e.trace) r.report.steps.push_back(s + " x" + std::to_string(n));
        if (!contains_rule(out, mode.drop)) break;
        r.report.steps.push_back("second pass");
    }
    if (CheckResult c = check_derivation(labelled_calculus(calc), out); !c)
        breach("output fails checking in " + calc + ": " + c.message);
    if (out.conclusion != d.conclusion) breach("end sequent changed");
    r.derivation = std::move(out);
    detail::account(r.report, in, r.derivation);
    return r;
}

void check_treelike(const LabelledDerivation& d, const std::string& root) {
    TreelikeResult t = is_treelike(d.conclusion);
    if (!t) breach("sequent " + d.conclusion.str() + " is not treelike: " + violation_name(t.violation));
    if (t.root != root) breach("sequent " + d.conclusion.str() + " has root " + t.root + ", expected " + root);
    for (const auto& p : d.premises) check_treelike(p, root);
}

}  // namespace

bool theorem_shaped(const LabelledSequent& s) {
    if (!s.rel.empty() || !s.ante.empty() || s.succ.size() != 1) return false;
    for (const DomAtom& x : s.dom)
        if (x.label != s.succ[0].label) return false;
    return true;
}

LabelledTransform eliminate_ref(const LabelledDerivation& d) { return eliminate(d, {{Rule::ref}, false}, false); }

LabelledTransform eliminate_tra(const LabelledDerivation& d) { return eliminate(d, {{Rule::tra}, false}, false); }

LabelledTransform eliminate_nd_cd(const LabelledDerivation& d) {
    return eliminate(d, {{Rule::nd, Rule::cd}, false}, false);
}

LabelledTransform expand_derived_rules(const LabelledDerivation& d) { return eliminate(d, {{}, true}, false); }

LabelledTransform eliminate_structural(const LabelledDerivation& d) {
    LabelledTransform r = eliminate(d, {{Rule::ref, Rule::tra, Rule::nd, Rule::cd}, true}, true);
    if (theorem_shaped(r.derivation.conclusion)) {
        check_treelike(r.derivation, r.derivation.conclusion.succ[0].label);
        r.report.steps.push_back("treelike check passed at every node");
    } else {
        std::string w = "end sequent is not theorem-shaped; treelike check skipped";
        r.report.warning = r.report.warning.empty() ? w : r.report.warning + "; " + w;
    }
    return r;
}

namespace {

NestedDerivation nestify_node(const LabelledDerivation& d, std::map<std::string, int>& trace) {
    auto [ns, paths] = nestify_with_paths(d.conclusion);
    auto path_of = [&](const std::string& l) {
        auto it = paths.find(l);
        if (it == paths.end()) breach("label " + l + " has no nested position");
        return it->second;
    };
    NestedDerivation n;
    n.conclusion = std::move(ns);
    n.hole = path_of(d.wit.w);
    n.wit.formula = d.wit.formula;
    switch (d.rule) {
        case Rule::id_star: n.rule = Rule::id; break;
        case Rule::id_q_star: n.rule = Rule::id_q; break;
        case Rule::imp_l_star: n.rule = Rule::imp_l; break;
        case Rule::forall_l_star: n.rule = Rule::forall_l; break;
        case Rule::exists_r_star: n.rule = Rule::exists_r; break;
        case Rule::forall_r_star: n.rule = Rule::forall_r; break;
        case Rule::lift: {
            n.rule = Rule::lift;
            std::vector<int> u = path_of(d.wit.u);
            if (u.size() != n.hole.size() + 1) breach("lift target is not a child");
            n.wit.child = u.back();
            break;
        }
        case Rule::and_l:
        case Rule::and_r:
        case Rule::or_l:
        case Rule::or_r:
        case Rule::imp_r:
        case Rule::neg_r:
        case Rule::neg_l:
        case Rule::exists_l: n.rule = d.rule; break;
        default: throw TransformError(std::string("rule ") + rule_name(d.rule) + " has no nested counterpart", false);
    }
    if (n.rule == Rule::forall_r || n.rule == Rule::exists_l || n.rule == Rule::forall_l || n.rule == Rule::exists_r)
        n.wit.a = d.wit.a;
    ++trace[std::string(rule_name(d.rule)) + " -> " + rule_name(n.rule)];
    for (const auto& p : d.premises) n.premises.push_back(nestify_node(p, trace));
    return n;
}

}  // namespace

Transformed<NestedDerivation> proof_to_nested(const LabelledDerivation& d) {
    bool qc = uses_quantifiers(d);
    Calculus in = labelled_calculus(qc ? "g3intqc-restricted" : "g3int-restricted");
    if (CheckResult c = check_derivation(in, d); !c)
        throw TransformError("input is not a " + in.name + " derivation: " + c.message, false);
    std::map<std::string, int> trace;
    Transformed<NestedDerivation> r;
    try {
        r.derivation = nestify_node(d, trace);
    } catch (const NotTreelike& e) {
        throw TransformError(e.what(), false);
    }
    NestedCalculus out = nested_calculus(qc ? "nintqc-star" : "nint-star");
    r.report.target_calculus = out.name;
    if (CheckResult c = check_nested_derivation(out, r.derivation); !c)
        breach("nested output fails checking: " + c.message);
    r.report.height_before = d.height();
    r.report.height_after = r.derivation.height();
    for (const auto& [s, k] : trace) r.report.steps.push_back(s + " x" + std::to_string(k));
    return r;
}

}  // namespace intuit
