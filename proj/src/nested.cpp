#include "intuit/nested.hpp"

#include "lexer.hpp"

#include <algorithm>
#include <stdexcept>

namespace intuit {

namespace {

int compare_formulas(const std::vector<Formula>& a, const std::vector<Formula>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (int c = a[i].compare(b[i])) return c;
    return 0;
}

}  // namespace

int compare_nested(const NestedSequent& a, const NestedSequent& b) {
    if (int c = compare_formulas(a.ante, b.ante)) return c;
    if (int c = compare_formulas(a.succ, b.succ)) return c;
    if (a.children.size() != b.children.size()) return a.children.size() < b.children.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (int c = compare_nested(a.children[i], b.children[i])) return c;
    return 0;
}

NestedSequent NestedSequent::canonical() const {
    NestedSequent c;
    c.ante = ante;
    c.succ = succ;
    std::sort(c.ante.begin(), c.ante.end());
    std::sort(c.succ.begin(), c.succ.end());
    c.children.reserve(children.size());
    for (const NestedSequent& ch : children) c.children.push_back(ch.canonical());
    std::sort(c.children.begin(), c.children.end(),
              [](const NestedSequent& x, const NestedSequent& y) { return compare_nested(x, y) < 0; });
    return c;
}

bool NestedSequent::operator==(const NestedSequent& o) const {
    if (ante.size() != o.ante.size() || succ.size() != o.succ.size() || children.size() != o.children.size())
        return false;
    return compare_nested(canonical(), o.canonical()) == 0;
}

const NestedSequent* NestedSequent::at(const std::vector<int>& path) const {
    const NestedSequent* n = this;
    for (int i : path) {
        if (i < 0 || i >= static_cast<int>(n->children.size())) return nullptr;
        n = &n->children[i];
    }
    return n;
}

NestedSequent* NestedSequent::at(const std::vector<int>& path) {
    return const_cast<NestedSequent*>(static_cast<const NestedSequent*>(this)->at(path));
}

std::set<std::string> NestedSequent::params() const {
    std::set<std::string> out;
    for (const auto* side : {&ante, &succ})
        for (const Formula& f : *side)
            for (const std::string& a : params_of(f)) out.insert(a);
    for (const NestedSequent& c : children) {
        std::set<std::string> sub = c.params();
        out.insert(sub.begin(), sub.end());
    }
    return out;
}

std::size_t NestedSequent::nodes() const {
    std::size_t n = 1;
    for (const NestedSequent& c : children) n += c.nodes();
    return n;
}

std::string NestedSequent::str() const {
    std::string left;
    for (std::size_t i = 0; i < ante.size(); ++i) {
        if (i) left += ", ";
        left += detail::str_restricted(ante[i]);
    }
    std::vector<std::string> right;
    for (const Formula& f : succ) right.push_back(f.str());
    for (const NestedSequent& c : children) right.push_back("[" + c.str() + "]");
    std::string out = left.empty() ? "->" : left + " ->";
    for (std::size_t i = 0; i < right.size(); ++i) out += (i ? ", " : " ") + right[i];
    return out;
}

namespace {

NestedSequent parse_node(detail::Parser& p) {
    NestedSequent s;
    if (p.peek().kind != detail::Tok::Arrow) {
        do s.ante.push_back(p.formula(false));
        while (p.accept(detail::Tok::Comma));
    }
    p.expect(detail::Tok::Arrow, "'->'");
    // An empty succedent may be written with a comma before the brackets.
    if (p.peek().kind == detail::Tok::Comma && p.peek(1).kind == detail::Tok::LBrack) p.next();
    auto item_start = [&] {
        detail::Tok k = p.peek().kind;
        return k != detail::Tok::End && k != detail::Tok::RBrack;
    };
    if (item_start()) {
        do {
            if (p.accept(detail::Tok::LBrack)) {
                s.children.push_back(parse_node(p));
                p.expect(detail::Tok::RBrack, "']'");
            } else {
                s.succ.push_back(p.formula(true));
            }
        } while (p.accept(detail::Tok::Comma));
    }
    return s;
}

}  // namespace

NestedSequent parse_nested(std::string_view text) {
    detail::Parser p(text);
    NestedSequent s = parse_node(p);
    if (!p.at_end()) p.fail("unexpected trailing input");
    return s;
}

int NestedDerivation::height() const {
    int h = 0;
    for (const NestedDerivation& p : premises) h = std::max(h, p.height());
    return h + 1;
}

std::size_t NestedDerivation::size() const {
    std::size_t n = 1;
    for (const NestedDerivation& p : premises) n += p.size();
    return n;
}

std::size_t NestedDerivation::count(Rule r) const {
    std::size_t n = rule == r ? 1 : 0;
    for (const NestedDerivation& p : premises) n += p.count(r);
    return n;
}

NestedCalculus nested_calculus(const std::string& name) {
    const std::set<Rule> prop{Rule::id,    Rule::and_l, Rule::or_r, Rule::or_l,  Rule::and_r,
                              Rule::neg_r, Rule::neg_l, Rule::lift, Rule::imp_r, Rule::imp_l};
    std::set<Rule> qc = prop;
    qc.insert({Rule::id_q, Rule::exists_r, Rule::forall_r, Rule::forall_l, Rule::exists_l});
    if (name == "nint") return {name, false, prop};
    if (name == "nintqc") return {name, false, qc};
    if (name == "nint-star") return {name, true, prop};
    if (name == "nintqc-star") return {name, true, qc};
    throw std::invalid_argument("unknown nested calculus '" + name + "'");
}

std::vector<std::string> nested_calculus_names() { return {"nint", "nintqc", "nint-star", "nintqc-star"}; }

namespace {

bool erase_one(std::vector<Formula>& v, const Formula& f) {
    auto it = std::find(v.begin(), v.end(), f);
    if (it == v.end()) return false;
    v.erase(it);
    return true;
}

bool has(const std::vector<Formula>& v, const Formula& f) { return std::find(v.begin(), v.end(), f) != v.end(); }

}  // namespace

std::optional<std::vector<NestedSequent>> instantiate_nested(const NestedCalculus& calc, Rule rule,
                                                             const NestedSequent& conclusion,
                                                             const std::vector<int>& hole, const Witness& wit) {
    const NestedSequent* node = conclusion.at(hole);
    if (!node || !wit.formula) return std::nullopt;
    const Formula& f = *wit.formula;
    const bool keep = calc.star;
    auto copy = [&](auto edit) -> std::optional<NestedSequent> {
        NestedSequent s = conclusion;
        if (!edit(*s.at(hole))) return std::nullopt;
        return s;
    };
    auto one = [](std::optional<NestedSequent> s) -> std::optional<std::vector<NestedSequent>> {
        if (!s) return std::nullopt;
        return std::vector<NestedSequent>{*s};
    };
    auto two = [](std::optional<NestedSequent> a,
                  std::optional<NestedSequent> b) -> std::optional<std::vector<NestedSequent>> {
        if (!a || !b) return std::nullopt;
        return std::vector<NestedSequent>{*a, *b};
    };
    auto inst = [&](const std::string& a) { return substitute_param(f.body(), a, f.name()); };

    switch (rule) {
        case Rule::id:
        case Rule::id_q:
            if (!f.is_atom() || (rule == Rule::id && !f.args().empty())) return std::nullopt;
            if (!has(node->ante, f) || !has(node->succ, f)) return std::nullopt;
            return std::vector<NestedSequent>{};
        case Rule::and_l:
            if (f.kind() != Kind::And) return std::nullopt;
            return one(copy([&](NestedSequent& n) {
                if (!erase_one(n.ante, f)) return false;
                n.ante.push_back(f.left());
                n.ante.push_back(f.right());
                return true;
            }));
        case Rule::or_r:
            if (f.kind() != Kind::Or) return std::nullopt;
            return one(copy([&](NestedSequent& n) {
                if (!erase_one(n.succ, f)) return false;
                n.succ.push_back(f.left());
                n.succ.push_back(f.right());
                return true;
            }));
        case Rule::or_l:
        case Rule::and_r: {
            bool left = rule == Rule::or_l;
            if (f.kind() != (left ? Kind::Or : Kind::And)) return std::nullopt;
            auto branch = [&](const Formula& g) {
                return copy([&](NestedSequent& n) {
                    auto& side = left ? n.ante : n.succ;
                    if (!erase_one(side, f)) return false;
                    side.push_back(g);
                    return true;
                });
            };
            return two(branch(f.left()), branch(f.right()));
        }
        case Rule::neg_r:
        case Rule::imp_r: {
            if (f.kind() != (rule == Rule::neg_r ? Kind::Neg : Kind::Impl)) return std::nullopt;
            return one(copy([&](NestedSequent& n) {
                if (!erase_one(n.succ, f)) return false;
                NestedSequent c;
                c.ante.push_back(f.left());
                if (rule == Rule::imp_r) c.succ.push_back(f.right());
                n.children.push_back(std::move(c));
                return true;
            }));
        }
        case Rule::neg_l:
            if (f.kind() != Kind::Neg) return std::nullopt;
            return one(copy([&](NestedSequent& n) {
                if (!has(n.ante, f)) return false;
                if (!keep) erase_one(n.ante, f);
                n.succ.push_back(f.left());
                return true;
            }));
        case Rule::imp_l: {
            if (f.kind() != Kind::Impl) return std::nullopt;
            auto branch = [&](bool first) {
                return copy([&](NestedSequent& n) {
                    if (!has(n.ante, f)) return false;
                    if (!keep) erase_one(n.ante, f);
                    if (first) n.succ.push_back(f.left());
                    else n.ante.push_back(f.right());
                    return true;
                });
            };
            return two(branch(true), branch(false));
        }
        case Rule::lift:
            return one(copy([&](NestedSequent& n) {
                if (wit.child < 0 || wit.child >= static_cast<int>(n.children.size())) return false;
                if (!has(n.ante, f)) return false;
                if (!keep) erase_one(n.ante, f);
                n.children[wit.child].ante.push_back(f);
                return true;
            }));
        case Rule::forall_r:
        case Rule::exists_r:
            if (f.kind() != (rule == Rule::forall_r ? Kind::Forall : Kind::Exists) || wit.a.empty())
                return std::nullopt;
            return one(copy([&](NestedSequent& n) {
                if (!has(n.succ, f)) return false;
                if (rule == Rule::forall_r || !keep) erase_one(n.succ, f);
                n.succ.push_back(inst(wit.a));
                return true;
            }));
        case Rule::forall_l:
        case Rule::exists_l:
            if (f.kind() != (rule == Rule::forall_l ? Kind::Forall : Kind::Exists) || wit.a.empty())
                return std::nullopt;
            return one(copy([&](NestedSequent& n) {
                if (!has(n.ante, f)) return false;
                if (rule == Rule::exists_l || !keep) erase_one(n.ante, f);
                n.ante.push_back(inst(wit.a));
                return true;
            }));
        default:
            return std::nullopt;
    }
}

CheckResult check_nested_inference(const NestedCalculus& calc, Rule rule, const NestedSequent& conclusion,
                                   const std::vector<int>& hole, const std::vector<NestedSequent>& premises,
                                   const Witness& wit) {
    if (!calc.contains(rule))
        return CheckResult::fail(std::string("rule ") + rule_name(rule) + " not in calculus " + calc.name);
    if (!conclusion.at(hole)) return CheckResult::fail("hole does not address a node");
    if (!wit.formula) return CheckResult::fail("witness malformed: principal formula required");
    auto expected = instantiate_nested(calc, rule, conclusion, hole, wit);
    if (!expected) return CheckResult::fail("principal formula not found at hole or wrong shape");
    if (expected->size() != premises.size())
        return CheckResult::fail(std::string("wrong number of premises for ") + rule_name(rule));
    if ((rule == Rule::forall_r || rule == Rule::exists_l) && conclusion.params().count(wit.a))
        return CheckResult::fail("eigenvariable occurs in conclusion: " + wit.a);
    for (std::size_t i = 0; i < premises.size(); ++i)
        if (premises[i] != (*expected)[i])
            return CheckResult::fail("premise " + std::to_string(i) + " does not match the rule schema");
    return {};
}

namespace {

CheckResult check_rec(const NestedCalculus& calc, const NestedDerivation& d, std::vector<int>& path) {
    std::vector<NestedSequent> ps;
    for (const NestedDerivation& p : d.premises) ps.push_back(p.conclusion);
    CheckResult r = check_nested_inference(calc, d.rule, d.conclusion, d.hole, ps, d.wit);
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

void holes_rec(const NestedSequent& s, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    out.push_back(cur);
    for (std::size_t i = 0; i < s.children.size(); ++i) {
        cur.push_back(static_cast<int>(i));
        holes_rec(s.children[i], cur, out);
        cur.pop_back();
    }
}

}  // namespace

CheckResult check_nested_derivation(const NestedCalculus& calc, const NestedDerivation& d) {
    std::vector<int> path;
    return check_rec(calc, d, path);
}

std::vector<std::vector<int>> all_holes(const NestedSequent& s) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    holes_rec(s, cur, out);
    return out;
}

std::vector<NestedStep> apply_nested_backward(const NestedCalculus& calc, Rule rule, const NestedSequent& goal) {
    std::vector<NestedStep> out;
    if (!calc.contains(rule)) return out;
    const std::set<std::string> params = goal.params();
    const std::string fresh = fresh_name("a", params);
    std::vector<std::string> terms(params.begin(), params.end());
    terms.push_back(fresh);

    for (const std::vector<int>& hole : all_holes(goal)) {
        const NestedSequent& n = *goal.at(hole);
        std::vector<Witness> cands;
        auto add = [&](const Formula& f) {
            Witness w;
            w.formula = f;
            cands.push_back(w);
        };
        switch (rule) {
            case Rule::id:
            case Rule::id_q:
            case Rule::and_l:
            case Rule::or_l:
            case Rule::neg_l:
            case Rule::imp_l:
                for (const Formula& f : n.ante) add(f);
                break;
            case Rule::and_r:
            case Rule::or_r:
            case Rule::neg_r:
            case Rule::imp_r:
                for (const Formula& f : n.succ) add(f);
                break;
            case Rule::forall_r:
                for (const Formula& f : n.succ) {
                    add(f);
                    cands.back().a = fresh;
                }
                break;
            case Rule::exists_l:
                for (const Formula& f : n.ante) {
                    add(f);
                    cands.back().a = fresh;
                }
                break;
            case Rule::forall_l:
            case Rule::exists_r:
                for (const Formula& f : rule == Rule::forall_l ? n.ante : n.succ)
                    for (const std::string& a : terms) {
                        add(f);
                        cands.back().a = a;
                    }
                break;
            case Rule::lift:
                for (const Formula& f : n.ante)
                    for (std::size_t c = 0; c < n.children.size(); ++c) {
                        if (calc.star && has(n.children[c].ante, f)) continue;
                        add(f);
                        cands.back().child = static_cast<int>(c);
                    }
                break;
            default:
                break;
        }
        for (const Witness& w : cands) {
            auto ps = instantiate_nested(calc, rule, goal, hole, w);
            if (!ps) continue;
            if (!check_nested_inference(calc, rule, goal, hole, *ps, w)) continue;
            bool dup = std::any_of(out.begin(), out.end(),
                                   [&](const NestedStep& s) { return s.hole == hole && s.wit == w; });
            if (!dup) out.push_back({hole, std::move(*ps), w});
        }
    }
    return out;
}

}  // namespace intuit
