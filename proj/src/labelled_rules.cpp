#include "intuit/labelled.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace intuit {

namespace {

struct RuleInfo {
    Rule rule;
    const char* name;
    int arity;
};

constexpr std::array<RuleInfo, kRuleCount> kRules{{
    {Rule::id, "id", 0},
    {Rule::id_q, "id_q", 0},
    {Rule::bot_l, "bot_l", 0},
    {Rule::and_l, "and_l", 1},
    {Rule::and_r, "and_r", 2},
    {Rule::or_l, "or_l", 2},
    {Rule::or_r, "or_r", 1},
    {Rule::imp_l, "imp_l", 2},
    {Rule::imp_r, "imp_r", 1},
    {Rule::ref, "ref", 1},
    {Rule::tra, "tra", 1},
    {Rule::forall_l, "forall_l", 1},
    {Rule::forall_r, "forall_r", 1},
    {Rule::exists_l, "exists_l", 1},
    {Rule::exists_r, "exists_r", 1},
    {Rule::nd, "nd", 1},
    {Rule::cd, "cd", 1},
    {Rule::id_star, "id_star", 0},
    {Rule::id_q_star, "id_q_star", 0},
    {Rule::neg_l, "neg_l", 1},
    {Rule::neg_r, "neg_r", 1},
    {Rule::imp_l_star, "imp_l_star", 2},
    {Rule::forall_l_star, "forall_l_star", 1},
    {Rule::forall_r_star, "forall_r_star", 1},
    {Rule::exists_r_star, "exists_r_star", 1},
    {Rule::lift, "lift", 1},
    {Rule::lsub, "lsub", 1},
    {Rule::psub, "psub", 1},
    {Rule::wk, "wk", 1},
    {Rule::ctr_R, "ctr_R", 1},
    {Rule::ctr_Fl, "ctr_Fl", 1},
    {Rule::ctr_Fr, "ctr_Fr", 1},
    {Rule::cut, "cut", 2},
}};

const std::set<Rule> kG3Int{Rule::id,    Rule::imp_r, Rule::and_l, Rule::and_r, Rule::or_l,
                            Rule::or_r,  Rule::imp_l, Rule::ref,   Rule::tra,   Rule::bot_l};
const std::set<Rule> kQuantifier{Rule::id_q,     Rule::forall_l, Rule::forall_r, Rule::exists_l,
                                 Rule::exists_r, Rule::nd,       Rule::cd};
const std::set<Rule> kExtProp{Rule::id_star, Rule::neg_l, Rule::neg_r, Rule::imp_l_star, Rule::lift};
const std::set<Rule> kExtQuant{Rule::id_q_star, Rule::forall_l_star, Rule::forall_r_star, Rule::exists_r_star};

std::set<Rule> operator+(std::set<Rule> a, const std::set<Rule>& b) {
    a.insert(b.begin(), b.end());
    return a;
}

std::set<Rule> operator-(std::set<Rule> a, const std::set<Rule>& b) {
    for (Rule r : b) a.erase(r);
    return a;
}

}  // namespace

const char* rule_name(Rule r) { return kRules[static_cast<int>(r)].name; }

std::optional<Rule> rule_from_name(std::string_view s) {
    for (const RuleInfo& i : kRules)
        if (s == i.name) return i.rule;
    return std::nullopt;
}

int rule_arity(Rule r) { return kRules[static_cast<int>(r)].arity; }

Calculus labelled_calculus(const std::string& name) {
    const std::set<Rule> qc = kG3Int + kQuantifier;
    const std::set<Rule> ext = kG3Int + kExtProp;
    const std::set<Rule> qcext = qc + kExtProp + kExtQuant;
    if (name == "g3int") return {name, kG3Int};
    if (name == "g3intqc") return {name, qc};
    if (name == "g3int-ext") return {name, ext};
    if (name == "g3intqc-ext") return {name, qcext};
    if (name == "g3int-restricted")
        return {name, ext - std::set<Rule>{Rule::id, Rule::bot_l, Rule::imp_l, Rule::ref, Rule::tra}};
    if (name == "g3intqc-restricted")
        return {name, qcext - std::set<Rule>{Rule::id, Rule::id_q, Rule::bot_l, Rule::imp_l, Rule::forall_l,
                                             Rule::forall_r, Rule::exists_r, Rule::ref, Rule::tra, Rule::nd,
                                             Rule::cd}};
    if (name == "g3int-cut") return {name, kG3Int + std::set<Rule>{Rule::cut}};
    if (name == "g3intqc-cut") return {name, qc + std::set<Rule>{Rule::cut}};
    throw std::invalid_argument("unknown labelled calculus '" + name + "'");
}

std::vector<std::string> labelled_calculus_names() {
    return {"g3int",          "g3intqc",          "g3int-ext",        "g3intqc-ext",
            "g3int-restricted", "g3intqc-restricted", "g3int-cut", "g3intqc-cut"};
}

Calculus with_admissible(Calculus c) {
    c.rules = c.rules + std::set<Rule>{Rule::lsub, Rule::psub, Rule::wk, Rule::ctr_R, Rule::ctr_Fl, Rule::ctr_Fr};
    return c;
}

namespace {

// The schema of one inference: what the conclusion must contain, what the
// premises lose, what each premise gains, and the side conditions.
struct Shape {
    LabelledSequent required;
    LabelledSequent consumed;
    std::vector<LabelledSequent> added;
    std::vector<std::string> eigen_labels;
    std::vector<std::string> eigen_params;
    std::vector<std::pair<std::string, std::string>> paths;  // undirected path from first to second
    std::string error;
};

Shape bad(std::string m) {
    Shape s;
    s.error = std::move(m);
    return s;
}

LabelledSequent rel(const std::string& w, const std::string& v) { return {{{w, v}}, {}, {}, {}}; }
LabelledSequent dom(const std::string& a, const std::string& w) { return {{}, {{a, w}}, {}, {}}; }
LabelledSequent ante(const std::string& w, const Formula& f) { return {{}, {}, {{w, f}}, {}}; }
LabelledSequent succ(const std::string& w, const Formula& f) { return {{}, {}, {}, {{w, f}}}; }
LabelledSequent operator+(const LabelledSequent& a, const LabelledSequent& b) { return seq_union(a, b); }

Shape shape(Rule r, const Witness& x) {
    const std::string &w = x.w, &v = x.v, &u = x.u, &a = x.a;
    auto need_formula = [&](std::optional<Kind> k) -> const Formula* {
        if (!x.formula) return nullptr;
        if (k && x.formula->kind() != *k) return nullptr;
        return &*x.formula;
    };
    auto need_labels = [](std::initializer_list<const std::string*> ls) {
        for (const std::string* l : ls)
            if (l->empty()) return false;
        return true;
    };
    Shape s;
    switch (r) {
        case Rule::id:
        case Rule::id_q:
        case Rule::id_star:
        case Rule::id_q_star: {
            const Formula* f = need_formula(Kind::Atom);
            if (!f || !need_labels({&w})) return bad("witness malformed: atom and label w required");
            std::vector<std::string> ps = params_of(*f);
            if ((r == Rule::id || r == Rule::id_star) && !ps.empty())
                return bad("witness malformed: atom has parameters");
            if (r == Rule::id || r == Rule::id_q) {
                if (!need_labels({&v})) return bad("witness malformed: label v required");
                s.required = rel(w, v) + ante(w, *f) + succ(v, *f);
                if (r == Rule::id_q)
                    for (const std::string& p : ps) s.required = s.required + dom(p, w);
            } else {
                s.required = ante(w, *f) + succ(w, *f);
                if (r == Rule::id_q_star) {
                    if (x.dom_labels.size() != ps.size())
                        return bad("witness malformed: one domain label per parameter required");
                    for (std::size_t i = 0; i < ps.size(); ++i) {
                        s.required = s.required + dom(ps[i], x.dom_labels[i]);
                        s.paths.push_back({x.dom_labels[i], w});
                    }
                }
            }
            return s;
        }
        case Rule::bot_l:
            if (!need_labels({&w})) return bad("witness malformed: label w required");
            s.required = ante(w, Formula::bot());
            return s;
        case Rule::and_l:
        case Rule::or_l: {
            const Formula* f = need_formula(r == Rule::and_l ? Kind::And : Kind::Or);
            if (!f || !need_labels({&w})) return bad("witness malformed: principal formula and label required");
            s.required = s.consumed = ante(w, *f);
            if (r == Rule::and_l) s.added = {ante(w, f->left()) + ante(w, f->right())};
            else s.added = {ante(w, f->left()), ante(w, f->right())};
            return s;
        }
        case Rule::and_r:
        case Rule::or_r: {
            const Formula* f = need_formula(r == Rule::and_r ? Kind::And : Kind::Or);
            if (!f || !need_labels({&w})) return bad("witness malformed: principal formula and label required");
            s.required = s.consumed = succ(w, *f);
            if (r == Rule::or_r) s.added = {succ(w, f->left()) + succ(w, f->right())};
            else s.added = {succ(w, f->left()), succ(w, f->right())};
            return s;
        }
        case Rule::imp_r: {
            const Formula* f = need_formula(Kind::Impl);
            if (!f || !need_labels({&w, &v})) return bad("witness malformed: implication and labels w, v required");
            s.required = s.consumed = succ(w, *f);
            s.added = {rel(w, v) + ante(v, f->left()) + succ(v, f->right())};
            s.eigen_labels = {v};
            return s;
        }
        case Rule::neg_r: {
            const Formula* f = need_formula(Kind::Neg);
            if (!f || !need_labels({&w, &v})) return bad("witness malformed: negation and labels w, v required");
            s.required = s.consumed = succ(w, *f);
            s.added = {rel(w, v) + ante(v, f->left())};
            s.eigen_labels = {v};
            return s;
        }
        case Rule::imp_l: {
            const Formula* f = need_formula(Kind::Impl);
            if (!f || !need_labels({&w, &v})) return bad("witness malformed: implication and labels w, v required");
            s.required = rel(w, v) + ante(w, *f);
            s.added = {succ(v, f->left()), ante(v, f->right())};
            return s;
        }
        case Rule::imp_l_star: {
            const Formula* f = need_formula(Kind::Impl);
            if (!f || !need_labels({&w})) return bad("witness malformed: implication and label w required");
            s.required = ante(w, *f);
            s.added = {succ(w, f->left()), ante(w, f->right())};
            return s;
        }
        case Rule::neg_l: {
            const Formula* f = need_formula(Kind::Neg);
            if (!f || !need_labels({&w})) return bad("witness malformed: negation and label w required");
            s.required = ante(w, *f);
            s.added = {succ(w, f->left())};
            return s;
        }
        case Rule::ref:
            if (!need_labels({&w})) return bad("witness malformed: label w required");
            s.added = {rel(w, w)};
            return s;
        case Rule::tra:
            if (!need_labels({&w, &v, &u})) return bad("witness malformed: labels w, v, u required");
            s.required = rel(w, v) + rel(v, u);
            s.added = {rel(w, u)};
            return s;
        case Rule::lift: {
            const Formula* f = need_formula(std::nullopt);
            if (!f || !need_labels({&w, &u})) return bad("witness malformed: formula and labels w, u required");
            s.required = rel(w, u) + ante(w, *f);
            s.added = {ante(u, *f)};
            return s;
        }
        case Rule::nd:
        case Rule::cd:
            if (!need_labels({&w, &v, &a})) return bad("witness malformed: labels w, v and parameter a required");
            if (r == Rule::nd) {
                s.required = rel(w, v) + dom(a, w);
                s.added = {dom(a, v)};
            } else {
                s.required = rel(w, v) + dom(a, v);
                s.added = {dom(a, w)};
            }
            return s;
        case Rule::forall_r: {
            const Formula* f = need_formula(Kind::Forall);
            if (!f || !need_labels({&w, &v, &a}))
                return bad("witness malformed: universal formula, labels w, v and parameter a required");
            s.required = s.consumed = succ(w, *f);
            s.added = {rel(w, v) + dom(a, v) + succ(v, substitute_param(f->body(), a, f->name()))};
            s.eigen_labels = {v};
            s.eigen_params = {a};
            return s;
        }
        case Rule::forall_r_star: {
            const Formula* f = need_formula(Kind::Forall);
            if (!f || !need_labels({&w, &a}))
                return bad("witness malformed: universal formula, label w and parameter a required");
            s.required = s.consumed = succ(w, *f);
            s.added = {dom(a, w) + succ(w, substitute_param(f->body(), a, f->name()))};
            s.eigen_params = {a};
            return s;
        }
        case Rule::forall_l: {
            const Formula* f = need_formula(Kind::Forall);
            if (!f || !need_labels({&w, &v, &a}))
                return bad("witness malformed: universal formula, labels w, v and parameter a required");
            s.required = rel(w, v) + dom(a, v) + ante(w, *f);
            s.added = {ante(v, substitute_param(f->body(), a, f->name()))};
            return s;
        }
        case Rule::forall_l_star: {
            const Formula* f = need_formula(Kind::Forall);
            if (!f || !need_labels({&w, &v, &a}))
                return bad("witness malformed: universal formula, labels w, v and parameter a required");
            s.required = dom(a, v) + ante(w, *f);
            s.added = {ante(w, substitute_param(f->body(), a, f->name()))};
            s.paths = {{v, w}};
            return s;
        }
        case Rule::exists_r: {
            const Formula* f = need_formula(Kind::Exists);
            if (!f || !need_labels({&w, &a}))
                return bad("witness malformed: existential formula, label w and parameter a required");
            s.required = dom(a, w) + succ(w, *f);
            s.added = {succ(w, substitute_param(f->body(), a, f->name()))};
            return s;
        }
        case Rule::exists_r_star: {
            const Formula* f = need_formula(Kind::Exists);
            if (!f || !need_labels({&w, &v, &a}))
                return bad("witness malformed: existential formula, labels w, v and parameter a required");
            s.required = dom(a, v) + succ(w, *f);
            s.added = {succ(w, substitute_param(f->body(), a, f->name()))};
            s.paths = {{v, w}};
            return s;
        }
        case Rule::exists_l: {
            const Formula* f = need_formula(Kind::Exists);
            if (!f || !need_labels({&w, &a}))
                return bad("witness malformed: existential formula, label w and parameter a required");
            s.required = s.consumed = ante(w, *f);
            s.added = {dom(a, w) + ante(w, substitute_param(f->body(), a, f->name()))};
            s.eigen_params = {a};
            return s;
        }
        case Rule::ctr_R:
            if (x.side == Side::Rel) {
                if (!need_labels({&w, &v})) return bad("witness malformed: labels w, v required");
                s.required = rel(w, v);
            } else if (x.side == Side::Dom) {
                if (!need_labels({&w, &a})) return bad("witness malformed: label w and parameter a required");
                s.required = dom(a, w);
            } else {
                return bad("witness malformed: ctr_R contracts relational or domain atoms");
            }
            s.added = {s.required};
            return s;
        case Rule::ctr_Fl:
        case Rule::ctr_Fr: {
            const Formula* f = need_formula(std::nullopt);
            if (!f || !need_labels({&w})) return bad("witness malformed: formula and label w required");
            s.required = r == Rule::ctr_Fl ? ante(w, *f) : succ(w, *f);
            s.added = {s.required};
            return s;
        }
        case Rule::cut: {
            const Formula* f = need_formula(std::nullopt);
            if (!f || !need_labels({&w})) return bad("witness malformed: cut formula and label w required");
            s.added = {succ(w, *f), ante(w, *f)};
            return s;
        }
        case Rule::lsub:
        case Rule::psub:
        case Rule::wk:
            return bad("rule has no fixed schema");
    }
    return bad("unknown rule");
}

}  // namespace

std::optional<std::vector<LabelledSequent>> instantiate(Rule rule, const LabelledSequent& conclusion,
                                                        const Witness& wit) {
    Shape s = shape(rule, wit);
    if (!s.error.empty()) return std::nullopt;
    if (!seq_contains(conclusion, s.required)) return std::nullopt;
    LabelledSequent base = *seq_minus(conclusion, s.consumed);
    std::vector<LabelledSequent> out;
    for (const LabelledSequent& add : s.added) out.push_back(seq_union(base, add));
    return out;
}

CheckResult check_inference(const Calculus& calc, Rule rule, const LabelledSequent& conclusion,
                            const std::vector<LabelledSequent>& premises, const Witness& wit) {
    if (!calc.contains(rule))
        return CheckResult::fail(std::string("rule ") + rule_name(rule) + " not in calculus " + calc.name);
    if (static_cast<int>(premises.size()) != rule_arity(rule))
        return CheckResult::fail(std::string("wrong number of premises for ") + rule_name(rule));

    switch (rule) {
        case Rule::lsub:
            if (wit.w.empty() || wit.v.empty()) return CheckResult::fail("witness malformed: lsub needs w and v");
            if (substitute_label(premises[0], wit.w, wit.v) != conclusion)
                return CheckResult::fail("conclusion is not the substituted premise");
            return {};
        case Rule::psub:
            if (wit.a.empty() || wit.b.empty()) return CheckResult::fail("witness malformed: psub needs a and b");
            if (substitute_param_seq(premises[0], wit.a, wit.b) != conclusion)
                return CheckResult::fail("conclusion is not the substituted premise");
            return {};
        case Rule::wk:
            if (!seq_contains(conclusion, premises[0])) return CheckResult::fail("premise not contained in conclusion");
            return {};
        default:
            break;
    }

    Shape s = shape(rule, wit);
    if (!s.error.empty()) return CheckResult::fail(s.error);
    if (!seq_contains(conclusion, s.required)) return CheckResult::fail("principal material missing from conclusion");
    for (const std::string& v : s.eigen_labels)
        if (conclusion.mentions_label(v)) return CheckResult::fail("eigenvariable occurs in conclusion: " + v);
    for (const std::string& a : s.eigen_params)
        if (conclusion.mentions_param(a)) return CheckResult::fail("eigenvariable occurs in conclusion: " + a);
    if (s.eigen_labels.size() == 1 && s.eigen_labels[0] == wit.w)
        return CheckResult::fail("eigenvariable occurs in conclusion: " + wit.w);
    for (const auto& [from, to] : s.paths)
        if (!path_exists(conclusion.rel, from, to))
            return CheckResult::fail("no path of relational atoms from " + from + " to " + to);
    LabelledSequent base = *seq_minus(conclusion, s.consumed);
    for (std::size_t i = 0; i < premises.size(); ++i)
        if (premises[i] != seq_union(base, s.added[i]))
            return CheckResult::fail("premise " + std::to_string(i) + " does not match the rule schema");
    return {};
}

namespace {

CheckResult check_rec(const Calculus& calc, const LabelledDerivation& d, std::vector<int>& path) {
    std::vector<LabelledSequent> ps;
    ps.reserve(d.premises.size());
    for (const LabelledDerivation& p : d.premises) ps.push_back(p.conclusion);
    CheckResult r = check_inference(calc, d.rule, d.conclusion, ps, d.wit);
    if (!r) {
        r.path = path;
        return r;
    }
    for (std::size_t i = 0; i < d.premises.size(); ++i) {
        path.push_back(static_cast<int>(i));
        CheckResult c = check_rec(calc, d.premises[i], path);
        path.pop_back();
        if (!c) return c;
    }
    return {};
}

}  // namespace

CheckResult check_derivation(const Calculus& calc, const LabelledDerivation& d) {
    std::vector<int> path;
    return check_rec(calc, d, path);
}

std::vector<BackwardStep> apply_backward(const Calculus& calc, Rule rule, const LabelledSequent& goal) {
    std::vector<BackwardStep> out;
    if (!calc.contains(rule)) return out;
    const std::set<std::string> labels = goal.labels();
    const std::set<std::string> params = goal.params();
    auto emit = [&](const Witness& w) {
        auto ps = instantiate(rule, goal, w);
        if (!ps) return;
        std::vector<LabelledSequent> prem = *ps;
        if (check_inference(calc, rule, goal, prem, w)) out.push_back({std::move(prem), w});
    };
    auto with = [](std::string w, std::optional<Formula> f) {
        Witness x;
        x.w = std::move(w);
        x.formula = std::move(f);
        return x;
    };
    const std::string fresh_label = fresh_name("v", labels);
    const std::string fresh_param = fresh_name("a", params);

    switch (rule) {
        case Rule::id:
        case Rule::id_q:
            for (const LFormula& l : goal.ante)
                for (const LFormula& r : goal.succ)
                    if (l.f.is_atom() && l.f == r.f && goal.has_rel(l.label, r.label)) {
                        Witness x = with(l.label, l.f);
                        x.v = r.label;
                        emit(x);
                    }
            break;
        case Rule::id_star:
        case Rule::id_q_star:
            for (const LFormula& l : goal.ante) {
                if (!l.f.is_atom() || !goal.has_succ(l.label, l.f)) continue;
                Witness x = with(l.label, l.f);
                bool ok = true;
                if (rule == Rule::id_q_star) {
                    for (const std::string& p : params_of(l.f)) {
                        std::string found;
                        for (const DomAtom& d : goal.dom)
                            if (d.param == p && path_exists(goal.rel, d.label, l.label)) {
                                found = d.label;
                                break;
                            }
                        if (found.empty()) ok = false;
                        x.dom_labels.push_back(found);
                    }
                }
                if (ok) emit(x);
            }
            break;
        case Rule::bot_l:
            for (const LFormula& l : goal.ante)
                if (l.f.kind() == Kind::Bot) emit(with(l.label, std::nullopt));
            break;
        case Rule::and_l:
        case Rule::or_l:
        case Rule::neg_l:
        case Rule::imp_l_star:
        case Rule::exists_l:
            for (const LFormula& l : goal.ante) {
                Witness x = with(l.label, l.f);
                if (rule == Rule::exists_l) x.a = fresh_param;
                emit(x);
            }
            break;
        case Rule::and_r:
        case Rule::or_r:
        case Rule::imp_r:
        case Rule::neg_r:
        case Rule::forall_r:
        case Rule::forall_r_star:
            for (const LFormula& r : goal.succ) {
                Witness x = with(r.label, r.f);
                x.v = fresh_label;
                x.a = fresh_param;
                if (rule != Rule::imp_r && rule != Rule::neg_r && rule != Rule::forall_r) x.v.clear();
                if (rule != Rule::forall_r && rule != Rule::forall_r_star) x.a.clear();
                emit(x);
            }
            break;
        case Rule::imp_l:
            for (const LFormula& l : goal.ante)
                for (const RelAtom& r : goal.rel)
                    if (r.from == l.label) {
                        Witness x = with(l.label, l.f);
                        x.v = r.to;
                        emit(x);
                    }
            break;
        case Rule::forall_l:
            for (const LFormula& l : goal.ante)
                for (const RelAtom& r : goal.rel)
                    for (const DomAtom& d : goal.dom)
                        if (r.from == l.label && d.label == r.to) {
                            Witness x = with(l.label, l.f);
                            x.v = r.to;
                            x.a = d.param;
                            emit(x);
                        }
            break;
        case Rule::forall_l_star:
        case Rule::exists_r_star: {
            const auto& side = rule == Rule::forall_l_star ? goal.ante : goal.succ;
            for (const LFormula& l : side)
                for (const DomAtom& d : goal.dom) {
                    Witness x = with(l.label, l.f);
                    x.v = d.label;
                    x.a = d.param;
                    emit(x);
                }
            break;
        }
        case Rule::exists_r:
            for (const LFormula& r : goal.succ)
                for (const DomAtom& d : goal.dom)
                    if (d.label == r.label) {
                        Witness x = with(r.label, r.f);
                        x.a = d.param;
                        emit(x);
                    }
            break;
        case Rule::ref:
            for (const std::string& w : labels)
                if (!goal.has_rel(w, w)) emit(with(w, std::nullopt));
            break;
        case Rule::tra:
            for (const RelAtom& r1 : goal.rel)
                for (const RelAtom& r2 : goal.rel)
                    if (r1.to == r2.from && !goal.has_rel(r1.from, r2.to)) {
                        Witness x = with(r1.from, std::nullopt);
                        x.v = r1.to;
                        x.u = r2.to;
                        emit(x);
                    }
            break;
        case Rule::nd:
        case Rule::cd:
            for (const RelAtom& r : goal.rel)
                for (const DomAtom& d : goal.dom) {
                    bool nd = rule == Rule::nd;
                    if (d.label != (nd ? r.from : r.to)) continue;
                    if (goal.has_dom(d.param, nd ? r.to : r.from)) continue;
                    Witness x = with(r.from, std::nullopt);
                    x.v = r.to;
                    x.a = d.param;
                    emit(x);
                }
            break;
        case Rule::lift:
            for (const RelAtom& r : goal.rel)
                for (const LFormula& l : goal.ante)
                    if (l.label == r.from && !goal.has_ante(r.to, l.f)) {
                        Witness x = with(r.from, l.f);
                        x.u = r.to;
                        emit(x);
                    }
            break;
        default:
            break;
    }
    // Duplicate principal occurrences yield identical candidates.
    std::vector<BackwardStep> uniq;
    for (BackwardStep& s : out)
        if (std::none_of(uniq.begin(), uniq.end(), [&](const BackwardStep& t) { return t.wit == s.wit; }))
            uniq.push_back(std::move(s));
    return uniq;
}

}  // namespace intuit
