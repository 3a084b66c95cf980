#include "transform_internal.hpp"

#include <algorithm>
#include <sstream>

namespace intuit {

namespace detail {

namespace {

bool eigen_label_rule(Rule r) { return r == Rule::imp_r || r == Rule::neg_r || r == Rule::forall_r; }
bool eigen_param_rule(Rule r) { return r == Rule::forall_r || r == Rule::forall_r_star || r == Rule::exists_l; }

void collect(const LabelledDerivation& d, std::set<std::string>& labels, std::set<std::string>& params) {
    std::set<std::string> l = d.conclusion.labels(), p = d.conclusion.params();
    labels.insert(l.begin(), l.end());
    params.insert(p.begin(), p.end());
    for (const std::string* s : {&d.wit.w, &d.wit.v, &d.wit.u})
        if (!s->empty()) labels.insert(*s);
    for (const std::string& s : d.wit.dom_labels) labels.insert(s);
    for (const std::string* s : {&d.wit.a, &d.wit.b})
        if (!s->empty()) params.insert(*s);
    for (const auto& q : d.premises) collect(q, labels, params);
}

std::string map_name(const std::string& s, const std::string& to, const std::string& from) {
    return s == from ? to : s;
}

LabelledSequent minus(const LabelledSequent& a, const LabelledSequent& b) {
    auto r = seq_minus(a, b);
    if (!r) breach("multiset difference undefined");
    return *r;
}

LabelledSequent one_item(Side side, const Witness& w) {
    LabelledSequent s;
    switch (side) {
        case Side::Rel: s.rel.push_back({w.w, w.v}); break;
        case Side::Dom: s.dom.push_back({w.a, w.w}); break;
        case Side::Ante: s.ante.push_back({w.w, *w.formula}); break;
        case Side::Succ: s.succ.push_back({w.w, *w.formula}); break;
    }
    return s;
}

// Principal formula side for rules that consume their principal formula.
std::optional<Side> consumed_side(Rule r) {
    switch (r) {
        case Rule::and_l:
        case Rule::or_l:
        case Rule::exists_l: return Side::Ante;
        case Rule::and_r:
        case Rule::or_r:
        case Rule::imp_r:
        case Rule::neg_r:
        case Rule::forall_r:
        case Rule::forall_r_star: return Side::Succ;
        default: return std::nullopt;
    }
}

LabelledDerivation apply_node(const LabelledSequent& concl, Rule r, const Witness& w,
                              std::vector<LabelledDerivation> premises) {
    return {concl, r, w, std::move(premises)};
}

// Renames eigenvariables of the node at d that occur in `avoid`.
LabelledDerivation freshen(LabelledDerivation d, const std::set<std::string>& avoid_labels,
                           const std::set<std::string>& avoid_params) {
    if (eigen_label_rule(d.rule) && avoid_labels.count(d.wit.v)) {
        std::set<std::string> used, ps;
        collect(d, used, ps);
        used.insert(avoid_labels.begin(), avoid_labels.end());
        std::string fresh = fresh_name("v", used);
        d.premises[0] = rename_label(d.premises[0], fresh, d.wit.v);
        d.wit.v = fresh;
    }
    if (eigen_param_rule(d.rule) && avoid_params.count(d.wit.a)) {
        std::set<std::string> ls, used;
        collect(d, ls, used);
        used.insert(avoid_params.begin(), avoid_params.end());
        std::string fresh = fresh_name("a", used);
        d.premises[0] = rename_param(d.premises[0], fresh, d.wit.a);
        d.wit.a = fresh;
    }
    return d;
}

struct Target {
    std::string label;
    Formula f;
};

class Inverter {
public:
    Inverter(Rule r, Witness w, int premise) : rule_(r), wit_(std::move(w)), premise_(premise) {}

    LabelledDerivation run(const LabelledDerivation& d) {
        auto t = instantiate(rule_, d.conclusion, wit_);
        if (!t) throw TransformError("principal formula not in the end sequent", false);
        return go(d, (*t)[premise_], {{wit_.w, *wit_.formula}});
    }

private:
    bool matches(const LabelledDerivation& d, const std::vector<Target>& ts, std::size_t& k) const {
        if (d.rule != rule_ || !d.wit.formula) return false;
        for (k = 0; k < ts.size(); ++k)
            if (ts[k].label == d.wit.w && ts[k].f == *d.wit.formula) return true;
        return false;
    }

    LabelledDerivation go(const LabelledDerivation& d, const LabelledSequent& t, std::vector<Target> ts) {
        std::size_t k = 0;
        if (matches(d, ts, k)) {
            LabelledDerivation p = d.premises[premise_];
            if (eigen_label_rule(rule_) && d.wit.v != wit_.v) p = rename_label(p, wit_.v, d.wit.v);
            if (eigen_param_rule(rule_) && d.wit.a != wit_.a) p = rename_param(p, wit_.a, d.wit.a);
            ts.erase(ts.begin() + static_cast<long>(k));
            return go(p, t, std::move(ts));
        }
        if (d.rule == Rule::lift && consumed_side(rule_) == Side::Ante) {
            for (k = 0; k < ts.size(); ++k)
                if (ts[k].label == d.wit.w && ts[k].f == *d.wit.formula) break;
            if (k < ts.size()) return lift_copy(d, t, ts, k);
        }
        LabelledDerivation n = freshen(d, t.labels(), t.params());
        auto ps = instantiate(n.rule, t, n.wit);
        if (!ps) breach("inversion lost the principal material of " + std::string(rule_name(n.rule)));
        std::vector<LabelledDerivation> out;
        for (std::size_t i = 0; i < ps->size(); ++i) out.push_back(go(n.premises[i], (*ps)[i], ts));
        return apply_node(t, n.rule, n.wit, std::move(out));
    }

    // A lifted copy of a target becomes lifted components (Lem. 4.1 style).
    LabelledDerivation lift_copy(const LabelledDerivation& d, const LabelledSequent& t, std::vector<Target> ts,
                                 std::size_t k) {
        const Formula& f = ts[k].f;
        const std::string &w = d.wit.w, &u = d.wit.u;
        std::vector<std::pair<Rule, Witness>> steps;
        auto lift = [&](const Formula& g) {
            Witness x;
            x.w = w;
            x.u = u;
            x.formula = g;
            steps.push_back({Rule::lift, x});
        };
        if (rule_ == Rule::and_l) {
            lift(f.left());
            lift(f.right());
        } else if (rule_ == Rule::or_l) {
            lift(premise_ == 0 ? f.left() : f.right());
        } else {
            lift(substitute_param(f.body(), wit_.a, f.name()));
            if (!t.has_dom(wit_.a, u)) {
                Witness x;
                x.w = w;
                x.v = u;
                x.a = wit_.a;
                steps.push_back({Rule::nd, x});
            }
        }
        ts.push_back({u, f});
        std::vector<LabelledSequent> below;
        LabelledSequent cur = t;
        for (const auto& [r, x] : steps) {
            below.push_back(cur);
            auto ps = instantiate(r, cur, x);
            if (!ps) breach("lifted component could not be placed");
            cur = (*ps)[0];
        }
        LabelledDerivation top = go(d.premises[0], cur, std::move(ts));
        for (std::size_t i = steps.size(); i-- > 0;)
            top = apply_node(below[i], steps[i].first, steps[i].second, {std::move(top)});
        return top;
    }

    Rule rule_;
    Witness wit_;
    int premise_;
};

}  // namespace

[[noreturn]] void breach(const std::string& what) { throw TransformError("internal invariant breach: " + what, true); }

const Calculus& universal_calculus() {
    static const Calculus c = labelled_calculus("g3intqc-ext");
    return c;
}

LabelledDerivation rename_label(const LabelledDerivation& d, const std::string& to, const std::string& from) {
    if (to == from) return d;
    LabelledDerivation n = d;
    if (eigen_label_rule(n.rule) && (n.wit.v == from || n.wit.v == to)) {
        std::set<std::string> used, ps;
        collect(n, used, ps);
        used.insert(to);
        used.insert(from);
        std::string fresh = fresh_name("v", used);
        n.premises[0] = rename_label(n.premises[0], fresh, n.wit.v);
        n.wit.v = fresh;
    }
    LabelledDerivation out;
    out.conclusion = substitute_label(n.conclusion, to, from);
    out.rule = n.rule;
    out.wit = n.wit;
    for (std::string* s : {&out.wit.w, &out.wit.v, &out.wit.u}) *s = map_name(*s, to, from);
    for (std::string& s : out.wit.dom_labels) s = map_name(s, to, from);
    for (const auto& p : n.premises) out.premises.push_back(rename_label(p, to, from));
    return out;
}

LabelledDerivation rename_param(const LabelledDerivation& d, const std::string& to, const std::string& from) {
    if (to == from) return d;
    LabelledDerivation n = d;
    if (eigen_param_rule(n.rule) && (n.wit.a == from || n.wit.a == to)) {
        std::set<std::string> ls, used;
        collect(n, ls, used);
        used.insert(to);
        used.insert(from);
        std::string fresh = fresh_name("a", used);
        n.premises[0] = rename_param(n.premises[0], fresh, n.wit.a);
        n.wit.a = fresh;
    }
    LabelledDerivation out;
    out.conclusion = substitute_param_seq(n.conclusion, to, from);
    out.rule = n.rule;
    out.wit = n.wit;
    out.wit.a = map_name(out.wit.a, to, from);
    out.wit.b = map_name(out.wit.b, to, from);
    if (out.wit.formula) out.wit.formula = intuit::rename_param(*out.wit.formula, from, to);
    for (const auto& p : n.premises) out.premises.push_back(rename_param(p, to, from));
    return out;
}

LabelledDerivation weaken(const LabelledDerivation& d, const LabelledSequent& extra) {
    LabelledDerivation n = freshen(d, extra.labels(), extra.params());
    LabelledDerivation out;
    out.conclusion = seq_union(n.conclusion, extra);
    out.rule = n.rule;
    out.wit = n.wit;
    for (const auto& p : n.premises) out.premises.push_back(weaken(p, extra));
    return out;
}

LabelledDerivation invert(const LabelledDerivation& d, Rule rule, Witness wit, int premise) {
    if (rule_arity(rule) == 0) throw TransformError(std::string(rule_name(rule)) + " has no premises", false);
    if (premise < 0 || premise >= rule_arity(rule)) throw TransformError("premise index out of range", false);
    std::set<std::string> labels, params;
    collect(d, labels, params);
    if (eigen_label_rule(rule) && (wit.v.empty() || d.conclusion.mentions_label(wit.v)))
        wit.v = fresh_name("v", labels);
    if (eigen_param_rule(rule) && (wit.a.empty() || d.conclusion.mentions_param(wit.a)))
        wit.a = fresh_name("a", params);
    if (!consumed_side(rule)) {
        // The premise contains the conclusion: invert by weakening.
        auto ps = instantiate(rule, d.conclusion, wit);
        if (!ps) throw TransformError("principal material not in the end sequent", false);
        return weaken(d, minus((*ps)[premise], d.conclusion));
    }
    if (!wit.formula) throw TransformError("principal formula required", false);
    Inverter inv(rule, wit, premise);
    return inv.run(d);
}

namespace {

LabelledSequent added_by(Rule r, const Witness& w, int premise) {
    // What premise `premise` of a consuming rule adds.
    LabelledSequent base;
    if (auto s = consumed_side(r)) base = one_item(*s, w);
    auto ps = instantiate(r, base, w);
    if (!ps) breach("principal shape");
    return (*ps)[premise];
}

// Removes the duplicates introduced by inverting a second copy of a consumed
// principal and identifying its eigenvariables with the first copy's.
LabelledDerivation contract_added(LabelledDerivation q, Rule r, const Witness& w, int premise) {
    LabelledSequent add = added_by(r, w, premise);
    for (const RelAtom& x : add.rel) {
        Witness y;
        y.side = Side::Rel;
        y.w = x.from;
        y.v = x.to;
        q = contract(q, Rule::ctr_R, y);
    }
    for (const DomAtom& x : add.dom) {
        Witness y;
        y.side = Side::Dom;
        y.a = x.param;
        y.w = x.label;
        q = contract(q, Rule::ctr_R, y);
    }
    for (const LFormula& x : add.ante) {
        Witness y;
        y.w = x.label;
        y.formula = x.f;
        q = contract(q, Rule::ctr_Fl, y);
    }
    for (const LFormula& x : add.succ) {
        Witness y;
        y.w = x.label;
        y.formula = x.f;
        q = contract(q, Rule::ctr_Fr, y);
    }
    return q;
}

}  // namespace

LabelledDerivation contract(const LabelledDerivation& d, Rule kind, const Witness& dup) {
    Side side = kind == Rule::ctr_Fl ? Side::Ante : kind == Rule::ctr_Fr ? Side::Succ : dup.side;
    LabelledSequent item = one_item(side, dup);
    LabelledSequent two = seq_union(item, item);
    if (!seq_contains(d.conclusion, two)) throw TransformError("the end sequent does not contain the duplicate", false);
    LabelledSequent t = minus(d.conclusion, item);

    // A consumed copy: invert the remaining copy in each premise, identify
    // eigenvariables and contract the doubled components.
    if (auto cs = consumed_side(d.rule); cs && *cs == side && d.wit.formula && d.wit.w == dup.w &&
                                          *d.wit.formula == *dup.formula) {
        std::vector<LabelledDerivation> out;
        for (std::size_t i = 0; i < d.premises.size(); ++i) {
            Witness second = d.wit;
            std::set<std::string> labels, params;
            collect(d, labels, params);
            if (eigen_label_rule(d.rule)) second.v = fresh_name("v", labels);
            if (eigen_param_rule(d.rule)) second.a = fresh_name("a", params);
            LabelledDerivation q = invert(d.premises[i], d.rule, second, static_cast<int>(i));
            if (eigen_label_rule(d.rule)) q = rename_label(q, d.wit.v, second.v);
            if (eigen_param_rule(d.rule)) q = rename_param(q, d.wit.a, second.a);
            out.push_back(contract_added(q, d.rule, d.wit, static_cast<int>(i)));
        }
        return apply_node(t, d.rule, d.wit, std::move(out));
    }

    auto ps = instantiate(d.rule, t, d.wit);
    if (!ps) {
        // Only (tra) on a reflexive loop can need both copies; it adds a third.
        if (d.rule != Rule::tra) breach("contraction lost principal material");
        return contract(contract(d.premises[0], kind, dup), kind, dup);
    }
    std::vector<LabelledDerivation> out;
    for (const auto& p : d.premises) out.push_back(contract(p, kind, dup));
    return apply_node(t, d.rule, d.wit, std::move(out));
}

void account(TransformReport& r, const LabelledDerivation& in, const LabelledDerivation& out) {
    r.height_before = in.height();
    r.height_after = out.height();
    for (int k = 0; k < kRuleCount; ++k) {
        Rule rule = static_cast<Rule>(k);
        long diff = static_cast<long>(in.count(rule)) - static_cast<long>(out.count(rule));
        if (diff > 0) r.rules_eliminated[rule] = static_cast<int>(diff);
    }
}

}  // namespace detail

namespace {

void check_input(const LabelledDerivation& d) {
    if (CheckResult c = check_derivation(detail::universal_calculus(), d); !c) {
        std::ostringstream os;
        os << "input fails checking: " << c.message << " at [";
        for (std::size_t i = 0; i < c.path.size(); ++i) os << (i ? "," : "") << c.path[i];
        os << "]";
        throw TransformError(os.str(), false);
    }
}

LabelledTransform finish(const LabelledDerivation& in, LabelledDerivation out, const std::string& what) {
    LabelledTransform r{std::move(out), {}};
    r.report.target_calculus = detail::universal_calculus().name;
    if (CheckResult c = check_derivation(detail::universal_calculus(), r.derivation); !c)
        detail::breach(what + " produced an invalid derivation: " + c.message);
    detail::account(r.report, in, r.derivation);
    r.report.steps.push_back(what);
    return r;
}

}  // namespace

std::string TransformReport::str() const {
    std::ostringstream os;
    os << "target: " << target_calculus << "\n";
    os << "height_before: " << height_before << "\n";
    os << "height_after: " << height_after << "\n";
    os << "rules_eliminated:";
    if (rules_eliminated.empty()) os << " none";
    for (const auto& [r, n] : rules_eliminated) os << " " << rule_name(r) << "=" << n;
    os << "\nsteps:\n";
    for (const std::string& s : steps) os << "  - " << s << "\n";
    if (!warning.empty()) os << "warning: " << warning << "\n";
    return os.str();
}

LabelledTransform weaken_derivation(const LabelledDerivation& d, const LabelledSequent& extra) {
    check_input(d);
    return finish(d, detail::weaken(d, extra), "weakening");
}

LabelledTransform substitute_label_derivation(const LabelledDerivation& d, const std::string& to,
                                              const std::string& from) {
    check_input(d);
    return finish(d, detail::rename_label(d, to, from), "label substitution [" + to + "/" + from + "]");
}

LabelledTransform substitute_param_derivation(const LabelledDerivation& d, const std::string& to,
                                              const std::string& from) {
    check_input(d);
    return finish(d, detail::rename_param(d, to, from), "parameter substitution [" + to + "/" + from + "]");
}

LabelledTransform invert_derivation(const LabelledDerivation& d, Rule rule, Witness wit, int premise) {
    check_input(d);
    return finish(d, detail::invert(d, rule, std::move(wit), premise), std::string("inversion of ") + rule_name(rule));
}

LabelledTransform contract_derivation(const LabelledDerivation& d, Rule kind, const Witness& duplicate) {
    if (kind != Rule::ctr_R && kind != Rule::ctr_Fl && kind != Rule::ctr_Fr)
        throw TransformError("contraction kind must be ctr_R, ctr_Fl or ctr_Fr", false);
    if (kind != Rule::ctr_R && !duplicate.formula) throw TransformError("duplicate formula required", false);
    check_input(d);
    return finish(d, detail::contract(d, kind, duplicate), std::string("contraction ") + rule_name(kind));
}

std::set<std::string> derivation_labels(const LabelledDerivation& d) {
    std::set<std::string> l, p;
    detail::collect(d, l, p);
    return l;
}

std::set<std::string> derivation_params(const LabelledDerivation& d) {
    std::set<std::string> l, p;
    detail::collect(d, l, p);
    return p;
}

}  // namespace intuit
